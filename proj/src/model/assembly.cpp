//
// Project lcjtvae - Copyright 2026 The lcjtvae Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "lcjt/model/assembly.h"

#include <algorithm>
#include <set>

#include "lcjt/chem/fragment.h"
#include "lcjt/chem/rings.h"
#include "lcjt/chem/smiles.h"
#include "lcjt/error.h"

namespace lcjt {
namespace {
bool is_donor(const Atom &a) {
  if (!a.aromatic)
    return false;
  return a.element == Element::kO || a.element == Element::kS
         || (a.element == Element::kN && a.implicit_h > 0);
}

LabelGraph from_molecule(Molecule mol) {
  LabelGraph g;
  g.donor.resize(mol.num_atoms());
  for (int i = 0; i < mol.num_atoms(); ++i)
    g.donor[i] = is_donor(mol.atom(i));
  g.ring = !mol.rings().empty();
  g.mol = std::move(mol);
  return g;
}

bool compatible(const Atom &a, const Atom &b) {
  return a.element == b.element && a.formal_charge == b.formal_charge;
}

int max_valence(const Atom &a) {
  std::vector<int> v = allowed_valences(a.element, a.formal_charge);
  return v.empty() ? 0 : *std::max_element(v.begin(), v.end());
}
}  // namespace

LabelGraph label_graph(const std::string &label) {
  SmilesOptions keep;
  keep.perceive_aromaticity = false;
  return from_molecule(parse_smiles(label, keep));
}

LabelGraph fragment_graph(const Molecule &mol, const Clique &clique,
                          std::vector<int> *old_to_new) {
  return from_molecule(extract_fragment(mol, clique.atoms, old_to_new));
}

AttachContext build_context(std::span<const PlacedClique> cliques) {
  AttachContext ctx;
  std::vector<std::pair<int, int>> local;  // (global, local)
  auto find_local = [&](int global) {
    for (auto [g, l]: local) {
      if (g == global)
        return l;
    }
    return -1;
  };
  for (std::size_t c = 0; c < cliques.size(); ++c) {
    const LabelGraph &lg = *cliques[c].label;
    const std::vector<int> &atoms = cliques[c].atoms;
    if (static_cast<int>(atoms.size()) != lg.mol.num_atoms())
      throw Error("build_context: placement size mismatch");
    std::vector<int> idx(atoms.size());
    for (std::size_t i = 0; i < atoms.size(); ++i) {
      int l = find_local(atoms[i]);
      const Atom &src = lg.mol.atom(static_cast<int>(i));
      if (l < 0) {
        Atom a = src;
        a.implicit_h = 0;
        l = ctx.graph.add_atom(a);
        local.emplace_back(atoms[i], l);
        ctx.global.push_back(atoms[i]);
        ctx.donor.push_back(lg.donor[i]);
        ctx.in_parent.push_back(c == 0);
      } else {
        Atom &a = ctx.graph.atom(l);
        if (a.element != src.element)
          throw Error("build_context: element clash at atom "
                      + std::to_string(atoms[i]));
        a.aromatic = a.aromatic || src.aromatic;
        ctx.donor[l] = ctx.donor[l] || lg.donor[i];
        if (c == 0)
          ctx.in_parent[l] = true;
      }
      idx[i] = l;
    }
    for (const Bond &b: lg.mol.bonds()) {
      int bi = ctx.graph.find_bond(idx[b.a], idx[b.b]);
      if (bi < 0)
        bi = ctx.graph.add_bond(idx[b.a], idx[b.b], b.order);
      ctx.graph.bond(bi).in_ring = ctx.graph.bond(bi).in_ring || b.in_ring;
    }
  }
  return ctx;
}

int attachment_load(const Molecule &graph, const std::vector<bool> &donor,
                    int atom) {
  int load = 0;
  bool exo_double = false;
  for (const Neighbor &nb: graph.neighbors(atom)) {
    const Bond &b = graph.bond(nb.bond);
    if (b.order == BondOrder::kAromatic) {
      load += 1;
    } else {
      load += static_cast<int>(b.order);
      if (b.order == BondOrder::kDouble)
        exo_double = true;
    }
  }
  if (graph.atom(atom).aromatic && !donor[atom] && !exo_double)
    load += 1;
  return load;
}

bool load_ok(const Molecule &graph, const std::vector<bool> &donor, int atom) {
  return attachment_load(graph, donor, atom) <= max_valence(graph.atom(atom));
}

std::string attachment_key(const Molecule &graph, std::span<const int> roles) {
  Molecule g = graph;
  for (int i = 0; i < g.num_atoms(); ++i)
    g.atom(i).implicit_h = roles[i] == 1 ? 1 : 0;
  annotate_rings(g);
  return write_canonical_smiles(g);
}

std::vector<AttachCandidate> enumerate_attachments(const AttachContext &ctx,
                                                   const LabelGraph &child,
                                                   int cap, int *overflow) {
  const Molecule &cm = child.mol;
  std::vector<AttachCandidate> out;
  std::set<std::string> seen;
  int dropped = 0;

  auto attempt = [&](std::vector<int> map) {
    AttachCandidate c;
    c.graph = ctx.graph;
    c.donor = ctx.donor;
    c.role.assign(ctx.graph.num_atoms(), 0);
    std::vector<int> idx(cm.num_atoms());
    for (int i = 0; i < cm.num_atoms(); ++i) {
      if (map[i] >= 0) {
        idx[i] = map[i];
        Atom &a = c.graph.atom(map[i]);
        a.aromatic = a.aromatic || cm.atom(i).aromatic;
        c.donor[map[i]] = c.donor[map[i]] || child.donor[i];
        c.role[map[i]] = 1;
      } else {
        Atom a = cm.atom(i);
        a.implicit_h = 0;
        idx[i] = c.graph.add_atom(a);
        c.donor.push_back(child.donor[i]);
        c.role.push_back(2);
      }
    }
    for (const Bond &b: cm.bonds()) {
      int bi = c.graph.find_bond(idx[b.a], idx[b.b]);
      if (bi < 0)
        bi = c.graph.add_bond(idx[b.a], idx[b.b], b.order);
      c.graph.bond(bi).in_ring = c.graph.bond(bi).in_ring || b.in_ring;
    }
    for (int i = 0; i < cm.num_atoms(); ++i) {
      if (map[i] >= 0 && !load_ok(c.graph, c.donor, map[i]))
        return;
    }
    c.key = attachment_key(c.graph, c.role);
    if (!seen.insert(c.key).second)
      return;
    if (static_cast<int>(out.size()) >= cap) {
      ++dropped;
      return;
    }
    c.map = std::move(map);
    out.push_back(std::move(c));
  };

  const int n = ctx.graph.num_atoms();
  bool parent_ring = false;
  for (const Bond &b: ctx.graph.bonds()) {
    if (ctx.in_parent[b.a] && ctx.in_parent[b.b] && b.in_ring)
      parent_ring = true;
  }
  if (child.ring && parent_ring) {
    for (const Bond &bl: cm.bonds()) {
      if (!bl.in_ring)
        continue;
      for (const Bond &bc: ctx.graph.bonds()) {
        if (!ctx.in_parent[bc.a] || !ctx.in_parent[bc.b] || bc.order != bl.order)
          continue;
        const std::pair<int, int> orient[2] = { { bc.a, bc.b }, { bc.b, bc.a } };
        for (auto [x1, x2]: orient) {
          if (!compatible(cm.atom(bl.a), ctx.graph.atom(x1))
              || !compatible(cm.atom(bl.b), ctx.graph.atom(x2)))
            continue;
          std::vector<int> map(cm.num_atoms(), -1);
          map[bl.a] = x1;
          map[bl.b] = x2;
          attempt(std::move(map));
        }
      }
    }
  }
  for (int u = 0; u < cm.num_atoms(); ++u) {
    for (int x = 0; x < n; ++x) {
      if (!ctx.in_parent[x] || !compatible(cm.atom(u), ctx.graph.atom(x)))
        continue;
      std::vector<int> map(cm.num_atoms(), -1);
      map[u] = x;
      attempt(std::move(map));
    }
  }
  if (overflow != nullptr)
    *overflow = dropped;
  return out;
}

CandidateTensors candidate_tensors(const AttachContext &ctx,
                                   std::span<const AttachCandidate> cands) {
  int total = 0;
  for (const AttachCandidate &c: cands)
    total += c.graph.num_atoms();
  CandidateTensors t;
  t.x = Mat::Zero(total, kCandidateFeatureDim);
  t.adj = Mat::Zero(total, total);
  t.pool = Mat::Zero(static_cast<Eigen::Index>(cands.size()), total);
  int off = 0;
  for (std::size_t k = 0; k < cands.size(); ++k) {
    const AttachCandidate &c = cands[k];
    const int n = c.graph.num_atoms();
    for (int i = 0; i < n; ++i) {
      const Atom &a = c.graph.atom(i);
      const int r = off + i;
      t.x(r, element_index(a.element)) = 1;
      t.x(r, kNumElements) = a.aromatic ? 1 : 0;
      t.x(r, kNumElements + 1) = c.donor[i] ? 1 : 0;
      t.x(r, kNumElements + 2) =
          i < static_cast<int>(ctx.in_parent.size()) && ctx.in_parent[i] ? 1 : 0;
      t.x(r, kNumElements + 3) = c.role[i] == 1 ? 1 : 0;
      t.x(r, kNumElements + 4) = c.role[i] == 2 ? 1 : 0;
      t.pool(static_cast<Eigen::Index>(k), r) = 1.0 / n;
    }
    for (const Bond &b: c.graph.bonds()) {
      t.adj(off + b.a, off + b.b) = 1;
      t.adj(off + b.b, off + b.a) = 1;
    }
    off += n;
  }
  return t;
}

}  // namespace lcjt
