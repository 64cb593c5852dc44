//
// Project lcjtvae - Copyright 2026 The lcjtvae Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef LCJT_CHEM_SCAFFOLD_H_
#define LCJT_CHEM_SCAFFOLD_H_

#include "lcjt/chem/molecule.h"

namespace lcjt {

// Murcko scaffold: ring systems plus the linker atoms joining them. Acyclic
// atoms of degree one are pruned repeatedly until none remain, so exocyclic
// substituents (including =O) disappear. Acyclic or empty input gives an
// empty molecule.
Molecule murcko_scaffold(const Molecule &mol);

}  // namespace lcjt

#endif  // LCJT_CHEM_SCAFFOLD_H_
