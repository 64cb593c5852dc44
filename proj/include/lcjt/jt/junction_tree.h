//
// Project lcjtvae - Copyright 2026 The lcjtvae Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef LCJT_JT_JUNCTION_TREE_H_
#define LCJT_JT_JUNCTION_TREE_H_

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "lcjt/chem/molecule.h"

namespace lcjt {

struct Clique {
  std::vector<int> atoms;  // sorted ascending
  std::string label;
  bool ring = false;

  bool operator==(const Clique &other) const = default;
};

struct JunctionTree {
  std::vector<Clique> nodes;
  std::vector<std::pair<int, int>> edges;  // (min, max)
  int root = 0;

  std::vector<std::vector<int>> adjacency() const;
};

// Canonical SMILES of the capped fragment induced by `atoms`.
std::string clique_label(const Molecule &mol, std::span<const int> atoms);

// Cliques are the acyclic bonds and the perceived rings (rings sharing more
// than two atoms merged); an atom in three or more cliques also becomes a
// singleton clique. Nodes are sorted by atom list. The tree is a maximum
// spanning tree over intersection sizes, with singleton edges weighted 100
// and ties broken by the smaller (u, v) pair. Throws lcjt::Error for
// multi-fragment or single-atom molecules.
JunctionTree decompose(const Molecule &mol);

struct CoverReport {
  bool ok = true;
  std::string message;
};

// Checks the structural invariants of `tree` against `mol`. Fused rings
// share their common bond, so only acyclic bonds must lie in exactly one
// clique; ring bonds need at least one.
CoverReport verify_cover(const Molecule &mol, const JunctionTree &tree);

}  // namespace lcjt

#endif  // LCJT_JT_JUNCTION_TREE_H_
