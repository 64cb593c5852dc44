//
// Project lcjtvae - Copyright 2026 The lcjtvae Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef LCJT_GEOM_CONFORMER_H_
#define LCJT_GEOM_CONFORMER_H_

#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "lcjt/chem/molecule.h"

namespace lcjt {

// Cartesian coordinates in Angstrom, one per atom of the owning molecule.
struct Conformer {
  std::vector<Eigen::Vector3d> coords;

  int size() const { return static_cast<int>(coords.size()); }
};

struct SdfRecord {
  std::string name;
  Molecule molecule;
  Conformer conformer;
};

// MDL V2000 records separated by "$$$$". Hydrogens attached to a heavy atom
// are folded into implicit counts (their coordinates are dropped); records
// without explicit hydrogens get them inferred. Charges come from the atom
// block unless an "M  CHG" line is present. Throws ParseError with the
// 1-based line number.
std::vector<SdfRecord> parse_sdf_v2000(std::string_view text);

// Single, acyclic bonds whose ends both have heavy degree >= 2.
std::vector<int> find_rotatable_bonds(const Molecule &mol);

// Signed dihedral i-j-k-l in degrees, range (-180, 180]. Throws
// GeometryError when i or l is collinear with the j-k axis.
double dihedral_angle(const Conformer &conf, int i, int j, int k, int l);

struct TorsionFeature {
  double sin = 0;
  double cos = 0;
  bool has_torsion = false;
};

struct TorsionFeatures {
  std::vector<TorsionFeature> bonds;  // indexed like mol.bonds()
  int degenerate = 0;                 // rotatable bonds skipped on geometry
};

// Per bond (sin, cos) of the dihedral over the lowest-index heavy neighbour
// on each side. Non-rotatable bonds and a null conformer give zeros with the
// flag cleared.
TorsionFeatures bond_torsion_features(const Molecule &mol,
                                      const Conformer *conf);

// Minimal RMSD over proper rotations and translations. Throws GeometryError
// on size mismatch or empty input.
double kabsch_rmsd(const Conformer &a, const Conformer &b);

}  // namespace lcjt

#endif  // LCJT_GEOM_CONFORMER_H_
