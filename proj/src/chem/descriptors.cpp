//
// Project lcjtvae - Copyright 2026 The lcjtvae Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "lcjt/chem/descriptors.h"

#include <algorithm>
#include <map>
#include <sstream>

#include "lcjt/chem/sanitize.h"
#include "lcjt/data_files.h"
#include "lcjt/error.h"

namespace lcjt {
namespace {
const std::map<std::string, double, std::less<>> &crippen_table() {
  static const std::map<std::string, double, std::less<>> table = [] {
    std::map<std::string, double, std::less<>> t;
    std::istringstream in { std::string(embedded_crippen_table()) };
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty() || line[0] == '#')
        continue;
      std::istringstream row(line);
      std::string type;
      double value;
      if (!(row >> type >> value))
        throw Error("malformed crippen table row: " + line);
      t.emplace(type, value);
    }
    return t;
  }();
  return table;
}

bool is_hetero(Element e) {
  return e != Element::kC && e != Element::kH;
}

struct BondSummary {
  int doubles = 0;
  int triples = 0;
  int aromatic = 0;
  bool double_to_hetero = false;
  int hetero_neighbors = 0;
  bool aromatic_neighbor = false;
  bool carbonyl_neighbor = false;
};

BondSummary summarize(const Molecule &mol, int atom) {
  BondSummary s;
  for (const Neighbor &nb: mol.neighbors(atom)) {
    const Bond &b = mol.bond(nb.bond);
    const Atom &other = mol.atom(nb.atom);
    if (is_hetero(other.element))
      ++s.hetero_neighbors;
    if (other.aromatic)
      s.aromatic_neighbor = true;
    switch (b.order) {
    case BondOrder::kDouble:
      ++s.doubles;
      if (is_hetero(other.element))
        s.double_to_hetero = true;
      break;
    case BondOrder::kTriple:
      ++s.triples;
      break;
    case BondOrder::kAromatic:
      ++s.aromatic;
      break;
    default:
      break;
    }
    if (other.element == Element::kC) {
      for (const Neighbor &nn: mol.neighbors(nb.atom)) {
        if (mol.bond(nn.bond).order == BondOrder::kDouble
            && mol.atom(nn.atom).element == Element::kO)
          s.carbonyl_neighbor = true;
      }
    }
  }
  return s;
}

std::string carbon_type(const Molecule &mol, int i) {
  const Atom &a = mol.atom(i);
  BondSummary s = summarize(mol, i);
  if (a.aromatic) {
    if (s.aromatic >= 3)
      return "C19";
    for (const Neighbor &nb: mol.neighbors(i)) {
      if (mol.bond(nb.bond).order == BondOrder::kAromatic)
        continue;
      return is_hetero(mol.atom(nb.atom).element) ? "C21" : "C20";
    }
    return "C18";
  }
  if (s.triples > 0)
    return "C7";
  if (s.double_to_hetero)
    return "C5";
  if (s.doubles > 0)
    return "C6";
  const int heavy = mol.heavy_degree(i);
  if (s.hetero_neighbors == 0) {
    if (s.aromatic_neighbor)
      return "C8";
    return heavy <= 2 ? "C1" : "C2";
  }
  return heavy <= 2 ? "C3" : "C4";
}

std::string heavy_type(const Molecule &mol, int i) {
  const Atom &a = mol.atom(i);
  BondSummary s = summarize(mol, i);
  switch (a.element) {
  case Element::kC:
    return carbon_type(mol, i);
  case Element::kN:
    if (a.formal_charge > 0)
      return "N13";
    if (a.aromatic)
      return needs_pi_bond(mol, i) ? "N11" : "N12";
    if (s.triples > 0)
      return "N9";
    if (s.doubles > 0)
      return "N10";
    if (a.implicit_h >= 2)
      return "N1";
    if (a.implicit_h == 1)
      return "N2";
    return "N3";
  case Element::kO:
    if (a.aromatic)
      return "O1";
    if (a.formal_charge < 0)
      return "O12";
    if (s.doubles > 0)
      return "O9";
    if (a.implicit_h > 0)
      return "O2";
    return s.aromatic_neighbor ? "O4" : "O3";
  case Element::kS:
    if (a.aromatic)
      return "S3";
    return s.doubles > 0 ? "S2" : "S1";
  case Element::kP:
    return "P";
  case Element::kB:
    return "B";
  case Element::kF:
    return "F";
  case Element::kCl:
    return "Cl";
  case Element::kBr:
    return "Br";
  case Element::kI:
    return "I";
  case Element::kH:
    return "H1";
  }
  return "C1";
}

std::string hydrogen_type(const Molecule &mol, int i) {
  const Atom &a = mol.atom(i);
  switch (a.element) {
  case Element::kC:
    return "H1";
  case Element::kN:
    return "H3";
  case Element::kO:
    return summarize(mol, i).carbonyl_neighbor ? "H4" : "H2";
  default:
    return "HS";
  }
}

double lookup(std::string_view type) {
  const auto &table = crippen_table();
  auto it = table.find(type);
  if (it == table.end())
    throw Error("crippen type missing from table: " + std::string(type));
  return it->second;
}
}  // namespace

std::vector<std::string> crippen_atom_types(const Molecule &mol) {
  std::vector<std::string> out;
  for (int i = 0; i < mol.num_atoms(); ++i)
    out.push_back(heavy_type(mol, i));
  return out;
}

double crippen_logp(const Molecule &mol) {
  double logp = 0;
  for (int i = 0; i < mol.num_atoms(); ++i) {
    logp += lookup(heavy_type(mol, i));
    if (mol.atom(i).implicit_h > 0)
      logp += mol.atom(i).implicit_h * lookup(hydrogen_type(mol, i));
  }
  return logp;
}

Descriptors compute_descriptors(const Molecule &mol) {
  Descriptors d;
  if (mol.empty())
    return d;

  for (int i = 0; i < mol.num_atoms(); ++i) {
    const Atom &a = mol.atom(i);
    d.mw += atomic_weight(a.element) + a.implicit_h * atomic_weight(Element::kH);
    if (a.element == Element::kN || a.element == Element::kO) {
      ++d.hba;
      if (a.implicit_h > 0)
        ++d.hbd;
    }
  }
  for (const Bond &b: mol.bonds()) {
    if (b.order == BondOrder::kSingle && !b.in_ring
        && mol.heavy_degree(b.a) >= 2 && mol.heavy_degree(b.b) >= 2)
      ++d.rot_bonds;
  }
  for (const auto &ring: mol.rings()) {
    if (std::all_of(ring.begin(), ring.end(),
                    [&](int a) { return mol.atom(a).aromatic; }))
      ++d.aromatic_rings;
  }
  d.logp = crippen_logp(mol);
  return d;
}

}  // namespace lcjt
