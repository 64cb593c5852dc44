//
// Project lcjtvae - Copyright 2026 The lcjtvae Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef LCJT_CHEM_SMILES_H_
#define LCJT_CHEM_SMILES_H_

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lcjt/chem/molecule.h"

namespace lcjt {

struct SmilesOptions {
  // Re-derive aromaticity from the Kekule structure. When false, aromatic
  // flags are kept exactly as written (used for fragment labels).
  bool perceive_aromaticity = true;
};

// Reads a SMILES string. Stereo markers (/, \, @) are accepted and dropped,
// isotopes and atom classes are ignored. Throws ParseError (syntax, unknown
// element, unkekulizable aromatic input) or ValenceError.
Molecule parse_smiles(std::string_view text, const SmilesOptions &opts = {});

// Canonical atom ranks (0 = first) via iterative neighborhood refinement with
// tie-breaking; invariant under atom renumbering.
std::vector<int> canonical_ranks(const Molecule &mol);

// Writes SMILES with a depth-first traversal that starts each component at
// its lowest-ranked atom and visits neighbors in ascending rank.
std::string write_smiles(const Molecule &mol, std::span<const int> ranks);

std::string write_canonical_smiles(const Molecule &mol);

// Reads one SMILES per line; blank lines and '#' comments are skipped. The
// first whitespace-separated token is the SMILES.
std::vector<std::string> read_smiles_lines(std::string_view text);

}  // namespace lcjt

#endif  // LCJT_CHEM_SMILES_H_
