//
// Project lcjtvae - Copyright 2026 The lcjtvae Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "lcjt/model/features.h"

#include <algorithm>

#include "lcjt/error.h"

namespace lcjt {

Mat atom_features(const Molecule &mol) {
  Mat x = Mat::Zero(mol.num_atoms(), kAtomFeatureDim);
  for (int i = 0; i < mol.num_atoms(); ++i) {
    const Atom &a = mol.atom(i);
    int col = 0;
    x(i, col + element_index(a.element)) = 1;
    col += kNumElements;
    x(i, col++) = a.aromatic ? 1 : 0;
    x(i, col + std::clamp(a.formal_charge, -1, 1) + 1) = 1;
    col += 3;
    x(i, col + std::clamp(a.implicit_h, 0, 4)) = 1;
    col += 5;
    x(i, col + std::clamp(mol.degree(i), 0, 5)) = 1;
  }
  return x;
}

Mat bond_features(const Molecule &mol, const TorsionFeatures &torsions) {
  if (static_cast<int>(torsions.bonds.size()) != mol.num_bonds())
    throw ShapeError("bond_features: " + std::to_string(torsions.bonds.size())
                     + " torsion entries for " + std::to_string(mol.num_bonds())
                     + " bonds");
  Mat x = Mat::Zero(mol.num_bonds(), kBondFeatureDim);
  for (int i = 0; i < mol.num_bonds(); ++i) {
    const Bond &b = mol.bond(i);
    x(i, static_cast<int>(b.order) - 1) = 1;
    x(i, 4) = b.in_ring ? 1 : 0;
    const TorsionFeature &t = torsions.bonds[i];
    if (t.has_torsion) {
      x(i, 5) = t.sin;
      x(i, 6) = t.cos;
      x(i, 7) = 1;
    }
  }
  return x;
}

GraphTensors graph_tensors(const Molecule &mol, const TorsionFeatures &torsions) {
  GraphTensors g;
  const int n = mol.num_atoms();
  const int m = mol.num_bonds();
  g.atom_x = atom_features(mol);
  const Mat bx = bond_features(mol, torsions);
  g.edge_x = Mat::Zero(2 * m, kAtomFeatureDim + kBondFeatureDim);
  std::vector<int> src(2 * m), dst(2 * m);
  for (int i = 0; i < m; ++i) {
    src[2 * i] = mol.bond(i).a;
    dst[2 * i] = mol.bond(i).b;
    src[2 * i + 1] = mol.bond(i).b;
    dst[2 * i + 1] = mol.bond(i).a;
    for (int e = 2 * i; e < 2 * i + 2; ++e) {
      g.edge_x.row(e).head(kAtomFeatureDim) = g.atom_x.row(src[e]);
      g.edge_x.row(e).tail(kBondFeatureDim) = bx.row(i);
    }
  }
  g.msg_adj = Mat::Zero(2 * m, 2 * m);
  g.atom_in = Mat::Zero(n, 2 * m);
  for (int e = 0; e < 2 * m; ++e) {
    g.atom_in(dst[e], e) = 1;
    // e = u->v feeds every v->w with w != u.
    for (const Neighbor &nb: mol.neighbors(dst[e])) {
      if (nb.atom == src[e])
        continue;
      const int out = mol.bond(nb.bond).a == dst[e] ? 2 * nb.bond : 2 * nb.bond + 1;
      g.msg_adj(out, e) = 1;
    }
  }
  return g;
}

TreeTensors tree_tensors(const JunctionTree &tree) {
  TreeTensors t;
  const int n = static_cast<int>(tree.nodes.size());
  const int m = static_cast<int>(tree.edges.size());
  std::vector<int> dst(2 * m);
  t.edge_src.resize(2 * m);
  for (int i = 0; i < m; ++i) {
    t.edge_src[2 * i] = tree.edges[i].first;
    dst[2 * i] = tree.edges[i].second;
    t.edge_src[2 * i + 1] = tree.edges[i].second;
    dst[2 * i + 1] = tree.edges[i].first;
  }
  t.msg_adj = Mat::Zero(2 * m, 2 * m);
  t.node_in = Mat::Zero(n, 2 * m);
  for (int e = 0; e < 2 * m; ++e) {
    t.node_in(dst[e], e) = 1;
    for (int f = 0; f < 2 * m; ++f) {
      if (t.edge_src[f] == dst[e] && dst[f] != t.edge_src[e])
        t.msg_adj(f, e) = 1;
    }
  }
  return t;
}

}  // namespace lcjt
