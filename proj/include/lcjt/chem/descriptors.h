//
// Project lcjtvae - Copyright 2026 The lcjtvae Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef LCJT_CHEM_DESCRIPTORS_H_
#define LCJT_CHEM_DESCRIPTORS_H_

#include <string>
#include <vector>

#include "lcjt/chem/molecule.h"

namespace lcjt {

struct Descriptors {
  double mw = 0;  // Daltons, implicit hydrogens included
  int hbd = 0;    // N/O atoms bearing at least one hydrogen
  int hba = 0;    // N + O atom count
  int rot_bonds = 0;
  int aromatic_rings = 0;
  double logp = 0;
};

// An empty molecule yields all-zero descriptors.
Descriptors compute_descriptors(const Molecule &mol);

// Atom-contribution logP using the restricted Crippen table shipped in
// data/crippen_v1.tsv.
double crippen_logp(const Molecule &mol);

// Crippen type label for each heavy atom (for inspection and tests).
std::vector<std::string> crippen_atom_types(const Molecule &mol);

}  // namespace lcjt

#endif  // LCJT_CHEM_DESCRIPTORS_H_
