//
// Project lcjtvae - Copyright 2026 The lcjtvae Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef LCJT_MODEL_ASSEMBLY_H_
#define LCJT_MODEL_ASSEMBLY_H_

#include <span>
#include <string>
#include <vector>

#include "lcjt/chem/molecule.h"
#include "lcjt/jt/junction_tree.h"
#include "lcjt/tensor/tensor.h"

namespace lcjt {

// A clique label as an attachable graph. Hydrogen counts only feed the
// donor flags (aromatic N with H, aromatic O/S).
struct LabelGraph {
  Molecule mol;
  std::vector<bool> donor;
  bool ring = false;
};

LabelGraph label_graph(const std::string &label);
// The clique's fragment; old_to_new maps molecule atoms to fragment atoms.
LabelGraph fragment_graph(const Molecule &mol, const Clique &clique,
                          std::vector<int> *old_to_new);

// A label placed in a growing molecule: atoms[i] is the global index of
// label atom i.
struct PlacedClique {
  const LabelGraph *label = nullptr;
  std::vector<int> atoms;
};

// Union of placed cliques, first entry = the parent. Atom flags are ORed
// over the cliques, bond orders come from the first clique that has them.
struct AttachContext {
  Molecule graph;
  std::vector<bool> donor;
  std::vector<bool> in_parent;
  std::vector<int> global;  // local -> global atom
};

AttachContext build_context(std::span<const PlacedClique> cliques);

struct AttachCandidate {
  std::vector<int> map;  // label atom -> context atom, -1 for new atoms
  Molecule graph;        // union graph
  std::vector<bool> donor;
  std::vector<int> role;  // 0 context, 1 shared, 2 new
  std::string key;
};

// Bond-order load used for attachment checks: non-aromatic orders, one per
// aromatic bond, and one more for an aromatic atom that still needs its pi
// bond (not a donor, no exocyclic double bond). Implicit H is ignored.
int attachment_load(const Molecule &graph, const std::vector<bool> &donor,
                    int atom);
bool load_ok(const Molecule &graph, const std::vector<bool> &donor, int atom);

// Deterministic enumeration: fused (two shared atoms, ring-ring only) before
// single-atom attachments, deduplicated by key, truncated at `cap`.
// `overflow` (optional) receives the number of distinct candidates dropped.
std::vector<AttachCandidate> enumerate_attachments(const AttachContext &ctx,
                                                   const LabelGraph &child,
                                                   int cap = 100,
                                                   int *overflow = nullptr);

// Canonical key of a union graph: hydrogens cleared, shared atoms marked
// with one hydrogen so that the attachment site is part of the key.
std::string attachment_key(const Molecule &graph, std::span<const int> roles);

constexpr int kCandidateFeatureDim = kNumElements + 5;

// Stacked scorer input for a candidate list: features, block-diagonal
// adjacency and the mean-pooling operator (C x N).
struct CandidateTensors {
  Mat x;
  Mat adj;
  Mat pool;
};

CandidateTensors candidate_tensors(const AttachContext &ctx,
                                   std::span<const AttachCandidate> cands);

}  // namespace lcjt

#endif  // LCJT_MODEL_ASSEMBLY_H_
