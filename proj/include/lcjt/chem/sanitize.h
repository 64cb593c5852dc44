//
// Project lcjtvae - Copyright 2026 The lcjtvae Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef LCJT_CHEM_SANITIZE_H_
#define LCJT_CHEM_SANITIZE_H_

#include <span>

#include "lcjt/chem/molecule.h"
#include "lcjt/chem/valence.h"

namespace lcjt {

// Completes a graph built atom by atom: perceives rings, demotes acyclic
// aromatic bonds to single, assigns hydrogens and a Kekule structure,
// optionally re-perceives aromaticity, validates valences (throws
// ValenceError) and marks rotatable bonds.
void sanitize(Molecule &mol, std::span<const HydrogenMode> modes,
              bool perceive_aromatic = true);

// Bond::rotatable := single, acyclic, both ends with heavy degree >= 2.
void mark_rotatable(Molecule &mol);

// Hydrogen count and pi demand an organic-subset atom with the same bonds
// would be given by the SMILES reader.
struct OrganicHydrogens {
  int implicit_h;
  bool wants_pi;
};
OrganicHydrogens infer_organic_hydrogens(const Molecule &mol, int atom);

// Whether an aromatic atom with its current hydrogens needs a pi bond.
bool needs_pi_bond(const Molecule &mol, int atom);

}  // namespace lcjt

#endif  // LCJT_CHEM_SANITIZE_H_
