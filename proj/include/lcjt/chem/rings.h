//
// Project lcjtvae - Copyright 2026 The lcjtvae Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef LCJT_CHEM_RINGS_H_
#define LCJT_CHEM_RINGS_H_

#include <vector>

#include "lcjt/chem/molecule.h"

namespace lcjt {

// Smallest set of smallest rings (a minimum cycle basis). Each ring lists its
// atoms in cyclic order, starting at the lowest index. The ring count always
// equals bonds - atoms + connected components. Ties between equally small
// cycles are broken by the sorted atom lists, so the result is deterministic.
std::vector<std::vector<int>> perceive_rings(const Molecule &mol);

// Stores perceive_rings() on the molecule and sets Bond::in_ring.
void annotate_rings(Molecule &mol);

// Bond indices along a ring, in ring order (bond i joins ring[i], ring[i+1]).
std::vector<int> ring_bonds(const Molecule &mol, const std::vector<int> &ring);

// Bonds that lie on some cycle (i.e. are not bridges). Independent of ring
// perception; used before rings are known.
std::vector<bool> cyclic_bonds(const Molecule &mol);

}  // namespace lcjt

#endif  // LCJT_CHEM_RINGS_H_
