//
// Project lcjtvae - Copyright 2026 The lcjtvae Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef LCJT_CHEM_FRAGMENT_H_
#define LCJT_CHEM_FRAGMENT_H_

#include <span>
#include <vector>

#include "lcjt/chem/molecule.h"

namespace lcjt {

// Subgraph induced by `atoms`, with every cut bond replaced by hydrogens.
// Aromatic flags are preserved. Aromatic atoms that donated a lone pair in the
// parent stay donors; the others take a pi bond when the fragment admits a
// Kekule structure, otherwise the atoms whose pi partner was cut away fall
// back to hydrogens.
Molecule extract_fragment(const Molecule &mol, std::span<const int> atoms,
                          std::vector<int> *old_to_new = nullptr);

}  // namespace lcjt

#endif  // LCJT_CHEM_FRAGMENT_H_
