//
// Project lcjtvae - Copyright 2026 The lcjtvae Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef LCJT_CHEM_VALENCE_H_
#define LCJT_CHEM_VALENCE_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "lcjt/chem/molecule.h"

namespace lcjt {

struct ValenceIssue {
  int atom;
  int total;  // localized bond order sum + implicit hydrogens
  std::vector<int> allowed;
};

struct ValenceReport {
  bool ok = true;
  std::vector<ValenceIssue> issues;

  std::string describe() const;
};

// Every atom's bond order sum plus implicit hydrogens must be one of
// allowed_valences(element, charge). Aromatic bonds use their Kekule order;
// if some aromatic bond has none, a Kekule structure is computed on a copy
// (failure to find one is reported as an issue on the offending atoms).
ValenceReport check_valence(const Molecule &mol);

enum class HydrogenMode : std::uint8_t {
  // Organic-subset atom: hydrogens fill the lowest admissible valence. An
  // aromatic atom with spare valence is also given a pi bond.
  kInfer,
  // Hydrogen count fixed (bracket atom); aromatic atoms take a pi bond only
  // if the admissible valence leaves room for one.
  kFixed,
  // Aromatic lone-pair donor (pyrrole-type N, furan O): never takes a pi
  // bond, hydrogens fill the remaining valence.
  kDonor,
};

// Assigns implicit hydrogens and a Kekule structure for aromatic bonds.
// Throws ValenceError if an atom exceeds every admissible valence and
// KekulizeError if the aromatic pi bonds cannot be localized.
void assign_hydrogens(Molecule &mol, std::span<const HydrogenMode> modes);

// Kekule assignment only. `wants_pi[i]` marks aromatic atoms that need
// exactly one double bond. Returns false if no perfect matching exists.
bool kekulize(Molecule &mol, const std::vector<bool> &wants_pi);

// Sum of bond orders counting aromatic bonds as 1.
int sigma_order_sum(const Molecule &mol, int atom);

}  // namespace lcjt

#endif  // LCJT_CHEM_VALENCE_H_
