//
// Project lcjtvae - Copyright 2026 The lcjtvae Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "lcjt/chem/fragment.h"

#include "lcjt/chem/rings.h"
#include "lcjt/chem/sanitize.h"
#include "lcjt/chem/valence.h"
#include "lcjt/error.h"

namespace lcjt {
namespace {
bool pi_partner_outside(const Molecule &mol, int atom,
                        const std::vector<int> &old_to_new) {
  for (const Neighbor &nb: mol.neighbors(atom)) {
    if (mol.bond(nb.bond).kekule_order == 2 && old_to_new[nb.atom] < 0)
      return true;
  }
  return false;
}

bool try_assign(Molecule &frag, const std::vector<HydrogenMode> &modes) {
  Molecule copy = frag;
  try {
    assign_hydrogens(copy, modes);
  } catch (const KekulizeError &) {
    return false;
  }
  frag = std::move(copy);
  return true;
}
}  // namespace

Molecule extract_fragment(const Molecule &mol, std::span<const int> atoms,
                          std::vector<int> *old_to_new) {
  std::vector<int> map;
  Molecule frag = induced_subgraph(mol, atoms, &map);

  std::vector<HydrogenMode> modes(frag.num_atoms(), HydrogenMode::kInfer);
  for (std::size_t k = 0; k < atoms.size(); ++k) {
    int old = atoms[k];
    if (mol.atom(old).aromatic && !needs_pi_bond(mol, old))
      modes[k] = HydrogenMode::kDonor;
  }

  annotate_rings(frag);
  for (int i = 0; i < frag.num_bonds(); ++i) {
    Bond &b = frag.bond(i);
    if (b.order == BondOrder::kAromatic && !b.in_ring) {
      b.order = BondOrder::kSingle;
      b.kekule_order = 1;
    }
  }
  // Aromatic atoms left without any aromatic bond cannot carry a pi bond.
  for (int i = 0; i < frag.num_atoms(); ++i) {
    if (!frag.atom(i).aromatic)
      continue;
    bool has_aromatic_bond = false;
    for (const Neighbor &nb: frag.neighbors(i))
      has_aromatic_bond |= frag.bond(nb.bond).order == BondOrder::kAromatic;
    if (!has_aromatic_bond) {
      frag.atom(i).aromatic = false;
      modes[i] = HydrogenMode::kInfer;
    }
  }

  if (!try_assign(frag, modes)) {
    for (std::size_t k = 0; k < atoms.size(); ++k) {
      if (frag.atom(static_cast<int>(k)).aromatic
          && pi_partner_outside(mol, atoms[k], map))
        modes[k] = HydrogenMode::kDonor;
    }
    if (!try_assign(frag, modes)) {
      for (int i = 0; i < frag.num_atoms(); ++i) {
        if (frag.atom(i).aromatic)
          modes[i] = HydrogenMode::kDonor;
      }
      assign_hydrogens(frag, modes);
    }
  }

  mark_rotatable(frag);
  if (old_to_new != nullptr)
    *old_to_new = std::move(map);
  return frag;
}

}  // namespace lcjt
