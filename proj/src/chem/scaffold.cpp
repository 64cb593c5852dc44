//
// Project lcjtvae - Copyright 2026 The lcjtvae Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "lcjt/chem/scaffold.h"

#include <vector>

#include "lcjt/chem/fragment.h"

namespace lcjt {

Molecule murcko_scaffold(const Molecule &mol) {
  if (mol.empty() || mol.rings().empty())
    return {};

  std::vector<bool> ring_atom(mol.num_atoms(), false);
  for (const auto &ring: mol.rings()) {
    for (int a: ring)
      ring_atom[a] = true;
  }

  std::vector<bool> kept(mol.num_atoms(), true);
  std::vector<int> degree(mol.num_atoms());
  for (int i = 0; i < mol.num_atoms(); ++i)
    degree[i] = mol.degree(i);

  std::vector<int> todo;
  for (int i = 0; i < mol.num_atoms(); ++i) {
    if (!ring_atom[i] && degree[i] <= 1)
      todo.push_back(i);
  }
  while (!todo.empty()) {
    int u = todo.back();
    todo.pop_back();
    if (!kept[u])
      continue;
    kept[u] = false;
    for (const Neighbor &nb: mol.neighbors(u)) {
      if (!kept[nb.atom])
        continue;
      if (--degree[nb.atom] <= 1 && !ring_atom[nb.atom])
        todo.push_back(nb.atom);
    }
  }

  std::vector<int> atoms;
  for (int i = 0; i < mol.num_atoms(); ++i) {
    if (kept[i])
      atoms.push_back(i);
  }
  return extract_fragment(mol, atoms);
}

}  // namespace lcjt
