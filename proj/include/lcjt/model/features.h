//
// Project lcjtvae - Copyright 2026 The lcjtvae Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef LCJT_MODEL_FEATURES_H_
#define LCJT_MODEL_FEATURES_H_

#include <vector>

#include "lcjt/chem/molecule.h"
#include "lcjt/geom/conformer.h"
#include "lcjt/jt/junction_tree.h"
#include "lcjt/tensor/tensor.h"

namespace lcjt {

// element one-hot, aromatic, charge {-1,0,+1}, H count 0..4, degree 0..5
constexpr int kAtomFeatureDim = kNumElements + 1 + 3 + 5 + 6;
// order one-hot (single, double, triple, aromatic), in_ring, sin, cos,
// has_torsion
constexpr int kBondFeatureDim = 4 + 1 + 3;

Mat atom_features(const Molecule &mol);
Mat bond_features(const Molecule &mol, const TorsionFeatures &torsions);

// Dense operators for directed-bond message passing. Bond i contributes the
// directed edges 2i (a->b) and 2i+1 (b->a).
struct GraphTensors {
  Mat atom_x;    // n x kAtomFeatureDim
  Mat edge_x;    // 2m x (kAtomFeatureDim + kBondFeatureDim), source atom first
  Mat msg_adj;   // 2m x 2m; (vw, uv) = 1 when u->v feeds v->w and w != u
  Mat atom_in;   // n x 2m; (v, uv) = 1
};

GraphTensors graph_tensors(const Molecule &mol, const TorsionFeatures &torsions);

// Same construction over junction-tree edges.
struct TreeTensors {
  std::vector<int> edge_src;  // source node of each directed edge
  Mat msg_adj;                // E x E
  Mat node_in;                // n x E
};

TreeTensors tree_tensors(const JunctionTree &tree);

}  // namespace lcjt

#endif  // LCJT_MODEL_FEATURES_H_
