//
// Project lcjtvae - Copyright 2026 The lcjtvae Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "lcjt/chem/molecule.h"

#include <algorithm>
#include <stack>

#include "lcjt/error.h"

namespace lcjt {

int Molecule::heavy_degree(int atom) const {
  int n = 0;
  for (const Neighbor &nb: adj_[atom]) {
    if (atoms_[nb.atom].element != Element::kH)
      ++n;
  }
  return n;
}

int Molecule::add_atom(const Atom &atom) {
  atoms_.push_back(atom);
  adj_.emplace_back();
  return num_atoms() - 1;
}

int Molecule::add_bond(int a, int b, BondOrder order) {
  if (a < 0 || b < 0 || a >= num_atoms() || b >= num_atoms())
    throw Error("bond endpoint out of range");
  if (a == b)
    throw Error("self loop on atom " + std::to_string(a));
  if (find_bond(a, b) >= 0)
    throw Error("parallel bond between atoms " + std::to_string(a) + " and "
                + std::to_string(b));

  Bond bond;
  bond.a = a;
  bond.b = b;
  bond.order = order;
  if (order != BondOrder::kAromatic)
    bond.kekule_order = static_cast<int>(order);
  bonds_.push_back(bond);
  int id = num_bonds() - 1;
  adj_[a].push_back({ b, id });
  adj_[b].push_back({ a, id });
  return id;
}

int Molecule::find_bond(int a, int b) const {
  if (a < 0 || a >= num_atoms())
    return -1;
  for (const Neighbor &nb: adj_[a]) {
    if (nb.atom == b)
      return nb.bond;
  }
  return -1;
}

int Molecule::bond_order_sum(int atom) const {
  int sum = 0;
  for (const Neighbor &nb: adj_[atom]) {
    const Bond &bond = bonds_[nb.bond];
    if (bond.order == BondOrder::kAromatic)
      sum += bond.kekule_order > 0 ? bond.kekule_order : 1;
    else
      sum += static_cast<int>(bond.order);
  }
  return sum;
}

int Molecule::connected_components(std::vector<int> &component_of) const {
  component_of.assign(atoms_.size(), -1);
  int count = 0;
  std::stack<int> todo;
  for (int start = 0; start < num_atoms(); ++start) {
    if (component_of[start] >= 0)
      continue;
    component_of[start] = count;
    todo.push(start);
    while (!todo.empty()) {
      int u = todo.top();
      todo.pop();
      for (const Neighbor &nb: adj_[u]) {
        if (component_of[nb.atom] < 0) {
          component_of[nb.atom] = count;
          todo.push(nb.atom);
        }
      }
    }
    ++count;
  }
  return count;
}

int Molecule::num_components() const {
  std::vector<int> tmp;
  return connected_components(tmp);
}

Molecule renumber_atoms(const Molecule &mol, std::span<const int> new_index) {
  const int n = mol.num_atoms();
  if (static_cast<int>(new_index.size()) != n)
    throw Error("permutation length does not match atom count");

  std::vector<int> old_of_new(n, -1);
  for (int i = 0; i < n; ++i) {
    int j = new_index[i];
    if (j < 0 || j >= n || old_of_new[j] >= 0)
      throw Error("invalid atom permutation");
    old_of_new[j] = i;
  }

  Molecule out;
  for (int j = 0; j < n; ++j)
    out.add_atom(mol.atom(old_of_new[j]));
  for (const Bond &b: mol.bonds()) {
    int id = out.add_bond(new_index[b.a], new_index[b.b], b.order);
    Bond &nb = out.bond(id);
    nb.in_ring = b.in_ring;
    nb.rotatable = b.rotatable;
    nb.torsion = b.torsion;
    nb.kekule_order = b.kekule_order;
  }

  std::vector<std::vector<int>> rings;
  for (const auto &ring: mol.rings()) {
    std::vector<int> r;
    for (int a: ring)
      r.push_back(new_index[a]);
    rings.push_back(std::move(r));
  }
  out.set_rings(std::move(rings));
  out.set_source_text(mol.source_text());
  return out;
}

Molecule induced_subgraph(const Molecule &mol, std::span<const int> atoms,
                          std::vector<int> *old_to_new) {
  std::vector<int> map(mol.num_atoms(), -1);
  Molecule out;
  for (int a: atoms) {
    map[a] = out.add_atom(mol.atom(a));
  }
  for (const Bond &b: mol.bonds()) {
    if (map[b.a] < 0 || map[b.b] < 0)
      continue;
    int id = out.add_bond(map[b.a], map[b.b], b.order);
    Bond &nb = out.bond(id);
    nb.in_ring = b.in_ring;
    nb.kekule_order = b.kekule_order;
    nb.torsion = b.torsion;
  }
  std::vector<std::vector<int>> rings;
  for (const auto &ring: mol.rings()) {
    if (std::all_of(ring.begin(), ring.end(),
                    [&](int a) { return map[a] >= 0; })) {
      std::vector<int> r;
      for (int a: ring)
        r.push_back(map[a]);
      rings.push_back(std::move(r));
    }
  }
  out.set_rings(std::move(rings));
  if (old_to_new != nullptr)
    *old_to_new = std::move(map);
  return out;
}

}  // namespace lcjt
