//
// Project lcjtvae - Copyright 2026 The lcjtvae Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "lcjt/chem/aromaticity.h"

#include <algorithm>

#include "lcjt/chem/rings.h"

namespace lcjt {
namespace {
int pi_electrons(const Molecule &mol, int atom, const std::vector<bool> &member,
                 const std::vector<bool> &ring_atom) {
  const Atom &a = mol.atom(atom);
  int doubles = 0, partner = -1;
  for (const Neighbor &nb: mol.neighbors(atom)) {
    int order = mol.bond(nb.bond).kekule_order;
    if (order == 3)
      return -1;
    if (order == 2) {
      ++doubles;
      partner = nb.atom;
    }
  }
  if (doubles > 1)
    return -1;
  if (doubles == 1)
    return member[partner] || ring_atom[partner] ? 1 : 0;

  const int connections = mol.degree(atom) + a.implicit_h;
  switch (a.element) {
  case Element::kC:
    if (a.formal_charge == -1)
      return 2;
    if (a.formal_charge == 1)
      return 0;
    return -1;
  case Element::kN:
  case Element::kP:
    if (a.formal_charge == 0 && connections == 3)
      return 2;
    if (a.formal_charge == -1 && connections == 2)
      return 2;
    return -1;
  case Element::kO:
  case Element::kS:
    if (a.formal_charge == 0 && connections == 2)
      return 2;
    return -1;
  case Element::kB:
    if (a.formal_charge == 0 && connections == 3)
      return 0;
    return -1;
  default:
    return -1;
  }
}

bool huckel(const Molecule &mol, const std::vector<int> &atoms,
            const std::vector<bool> &ring_atom) {
  std::vector<bool> member(mol.num_atoms(), false);
  for (int a: atoms)
    member[a] = true;
  int total = 0;
  for (int a: atoms) {
    int e = pi_electrons(mol, a, member, ring_atom);
    if (e < 0)
      return false;
    total += e;
  }
  return total % 4 == 2;
}
}  // namespace

void perceive_aromaticity(Molecule &mol) {
  const auto &rings = mol.rings();
  std::vector<bool> ring_atom(mol.num_atoms(), false);
  for (const auto &ring: rings) {
    for (int a: ring)
      ring_atom[a] = true;
  }

  std::vector<bool> aromatic_ring(rings.size(), false);
  for (std::size_t r = 0; r < rings.size(); ++r)
    aromatic_ring[r] = huckel(mol, rings[r], ring_atom);

  for (std::size_t r = 0; r < rings.size(); ++r) {
    for (std::size_t s = r + 1; s < rings.size(); ++s) {
      if (aromatic_ring[r] && aromatic_ring[s])
        continue;
      std::vector<int> a = rings[r], b = rings[s];
      std::sort(a.begin(), a.end());
      std::sort(b.begin(), b.end());
      std::vector<int> shared, merged;
      std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                            std::back_inserter(shared));
      if (shared.size() != 2 || mol.find_bond(shared[0], shared[1]) < 0)
        continue;
      std::set_union(a.begin(), a.end(), b.begin(), b.end(),
                     std::back_inserter(merged));
      if (huckel(mol, merged, ring_atom))
        aromatic_ring[r] = aromatic_ring[s] = true;
    }
  }

  std::vector<bool> aromatic_bond(mol.num_bonds(), false);
  for (int i = 0; i < mol.num_atoms(); ++i)
    mol.atom(i).aromatic = false;
  for (std::size_t r = 0; r < rings.size(); ++r) {
    if (!aromatic_ring[r])
      continue;
    for (int a: rings[r])
      mol.atom(a).aromatic = true;
    for (int b: ring_bonds(mol, rings[r]))
      aromatic_bond[b] = true;
  }

  for (int i = 0; i < mol.num_bonds(); ++i) {
    Bond &b = mol.bond(i);
    if (aromatic_bond[i])
      b.order = BondOrder::kAromatic;
    else if (b.order == BondOrder::kAromatic)
      b.order = static_cast<BondOrder>(b.kekule_order);
  }
}

}  // namespace lcjt
