//
// Project lcjtvae - Copyright 2026 The lcjtvae Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "lcjt/chem/sanitize.h"

#include "lcjt/chem/aromaticity.h"
#include "lcjt/chem/rings.h"
#include "lcjt/error.h"

namespace lcjt {

void sanitize(Molecule &mol, std::span<const HydrogenMode> modes,
              bool perceive_aromatic) {
  annotate_rings(mol);
  for (int i = 0; i < mol.num_bonds(); ++i) {
    Bond &b = mol.bond(i);
    if (b.order == BondOrder::kAromatic && !b.in_ring) {
      b.order = BondOrder::kSingle;
      b.kekule_order = 1;
    }
  }

  assign_hydrogens(mol, modes);
  if (perceive_aromatic)
    perceive_aromaticity(mol);

  ValenceReport report = check_valence(mol);
  if (!report.ok)
    throw ValenceError("valence check failed: " + report.describe(),
                       report.issues.front().atom);
  mark_rotatable(mol);
}

void mark_rotatable(Molecule &mol) {
  for (int i = 0; i < mol.num_bonds(); ++i) {
    Bond &b = mol.bond(i);
    b.rotatable = b.order == BondOrder::kSingle && !b.in_ring
                  && mol.heavy_degree(b.a) >= 2 && mol.heavy_degree(b.b) >= 2;
  }
}

OrganicHydrogens infer_organic_hydrogens(const Molecule &mol, int atom) {
  const Atom &a = mol.atom(atom);
  const int s = sigma_order_sum(mol, atom);
  for (int v: allowed_valences(a.element, a.formal_charge)) {
    if (v < s)
      continue;
    int free = v - s;
    bool pi = a.aromatic && free >= 1;
    return { free - (pi ? 1 : 0), pi };
  }
  return { -1, false };
}

bool needs_pi_bond(const Molecule &mol, int atom) {
  const Atom &a = mol.atom(atom);
  if (!a.aromatic)
    return false;
  const int t = sigma_order_sum(mol, atom) + a.implicit_h;
  for (int v: allowed_valences(a.element, a.formal_charge)) {
    if (v >= t)
      return v - t >= 1;
  }
  return false;
}

}  // namespace lcjt
