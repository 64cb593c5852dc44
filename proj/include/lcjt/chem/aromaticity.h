//
// Project lcjtvae - Copyright 2026 The lcjtvae Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef LCJT_CHEM_AROMATICITY_H_
#define LCJT_CHEM_AROMATICITY_H_

#include "lcjt/chem/molecule.h"

namespace lcjt {

// Hückel aromaticity over the perceived rings of a kekulized molecule.
//
// Per-atom pi contributions (from the Kekule structure):
//   double bond to a ring member, or to an atom of another ring    1
//   double bond to an acyclic atom (C=O, exocyclic C=C)            0
//   no double bond: neutral N/P with three connections, neutral
//     two-connected O/S, carbanion, two-connected N-               2
//   no double bond: carbocation, neutral three-connected B         0
//   anything else (sp3 carbon, triple bond, two double bonds)     not sp2
// A ring is aromatic iff every member is sp2 and the sum is 4n+2. Pairs of
// rings fused on one bond are also tested as a single envelope, which makes
// azulene-type systems aromatic.
//
// Requires rings annotated and every bond to carry a Kekule order. Sets
// Atom::aromatic and Bond::order (aromatic ring bonds become kAromatic; other
// formerly aromatic bonds take their Kekule order).
void perceive_aromaticity(Molecule &mol);

}  // namespace lcjt

#endif  // LCJT_CHEM_AROMATICITY_H_
