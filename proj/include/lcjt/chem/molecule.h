//
// Project lcjtvae - Copyright 2026 The lcjtvae Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef LCJT_CHEM_MOLECULE_H_
#define LCJT_CHEM_MOLECULE_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lcjt/chem/element.h"

namespace lcjt {

enum class BondOrder : std::uint8_t {
  kSingle = 1,
  kDouble = 2,
  kTriple = 3,
  kAromatic = 4,
};

struct Atom {
  Element element = Element::kC;
  int formal_charge = 0;
  bool aromatic = false;
  int implicit_h = 0;
};

struct Bond {
  int a = -1;
  int b = -1;
  BondOrder order = BondOrder::kSingle;
  bool in_ring = false;
  bool rotatable = false;
  std::optional<double> torsion;
  // Localized order (1 or 2) of an aromatic bond; equals `order` otherwise.
  // Zero while no Kekule structure has been assigned.
  int kekule_order = 0;

  int other(int atom) const { return atom == a ? b : a; }
};

struct Neighbor {
  int atom;
  int bond;
};

// Attributed heavy-atom graph. Hydrogens are normally implicit counts; an
// explicit H atom is allowed (e.g. "[H][H]") but unusual.
class Molecule {
public:
  Molecule() = default;

  int num_atoms() const { return static_cast<int>(atoms_.size()); }
  int num_bonds() const { return static_cast<int>(bonds_.size()); }
  bool empty() const { return atoms_.empty(); }

  const Atom &atom(int i) const { return atoms_[i]; }
  Atom &atom(int i) { return atoms_[i]; }
  const Bond &bond(int i) const { return bonds_[i]; }
  Bond &bond(int i) { return bonds_[i]; }

  const std::vector<Atom> &atoms() const { return atoms_; }
  const std::vector<Bond> &bonds() const { return bonds_; }

  std::span<const Neighbor> neighbors(int atom) const { return adj_[atom]; }
  int degree(int atom) const { return static_cast<int>(adj_[atom].size()); }
  int heavy_degree(int atom) const;

  int add_atom(const Atom &atom);
  // Throws lcjt::Error on self loops, parallel edges and bad indices.
  int add_bond(int a, int b, BondOrder order);

  // Index of the bond joining a and b, or -1.
  int find_bond(int a, int b) const;

  // Sum of localized bond orders; aromatic bonds without a Kekule assignment
  // count as 1.
  int bond_order_sum(int atom) const;

  // Perceived smallest set of smallest rings (atom cycles, in ring order).
  const std::vector<std::vector<int>> &rings() const { return rings_; }
  void set_rings(std::vector<std::vector<int>> rings) {
    rings_ = std::move(rings);
  }

  const std::string &source_text() const { return source_text_; }
  void set_source_text(std::string text) { source_text_ = std::move(text); }

  // Component id per atom; returns the number of components.
  int connected_components(std::vector<int> &component_of) const;
  int num_components() const;

private:
  std::vector<Atom> atoms_;
  std::vector<Bond> bonds_;
  std::vector<std::vector<Neighbor>> adj_;
  std::vector<std::vector<int>> rings_;
  std::string source_text_;
};

// Copy of `mol` with atom i moved to position new_index[i]. Ring lists are
// remapped; bond order within the bond list is preserved.
Molecule renumber_atoms(const Molecule &mol, std::span<const int> new_index);

// Atoms in `atoms` (in the given order) and every bond among them. Ring
// lists, hydrogens and flags are copied verbatim; callers fix up hydrogens.
Molecule induced_subgraph(const Molecule &mol, std::span<const int> atoms,
                          std::vector<int> *old_to_new = nullptr);

}  // namespace lcjt

#endif  // LCJT_CHEM_MOLECULE_H_
