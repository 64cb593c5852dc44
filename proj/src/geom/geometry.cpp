//
// Project lcjtvae - Copyright 2026 The lcjtvae Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <cmath>
#include <numbers>

#include "lcjt/error.h"
#include "lcjt/geom/conformer.h"

namespace lcjt {
namespace {
constexpr double kDegenerate = 1e-10;

int lowest_heavy_neighbor(const Molecule &mol, int atom, int exclude) {
  int best = -1;
  for (const Neighbor &nb: mol.neighbors(atom)) {
    if (nb.atom == exclude || mol.atom(nb.atom).element == Element::kH)
      continue;
    if (best < 0 || nb.atom < best)
      best = nb.atom;
  }
  return best;
}
}  // namespace

std::vector<int> find_rotatable_bonds(const Molecule &mol) {
  std::vector<int> out;
  for (int i = 0; i < mol.num_bonds(); ++i) {
    const Bond &b = mol.bond(i);
    if (b.order == BondOrder::kSingle && !b.in_ring
        && mol.heavy_degree(b.a) >= 2 && mol.heavy_degree(b.b) >= 2)
      out.push_back(i);
  }
  return out;
}

double dihedral_angle(const Conformer &conf, int i, int j, int k, int l) {
  const int n = conf.size();
  for (int x: { i, j, k, l }) {
    if (x < 0 || x >= n)
      throw GeometryError("dihedral: atom index out of range");
  }
  if (i == j || i == k || i == l || j == k || j == l || k == l)
    throw GeometryError("dihedral: indices must be distinct");

  const Eigen::Vector3d b1 = conf.coords[j] - conf.coords[i];
  const Eigen::Vector3d b2 = conf.coords[k] - conf.coords[j];
  const Eigen::Vector3d b3 = conf.coords[l] - conf.coords[k];
  const Eigen::Vector3d n1 = b1.cross(b2);
  const Eigen::Vector3d n2 = b2.cross(b3);
  if (n1.norm() <= kDegenerate * b1.norm() * b2.norm()
      || n2.norm() <= kDegenerate * b2.norm() * b3.norm())
    throw GeometryError("dihedral: collinear atoms");

  double y = b2.norm() * b1.dot(n2);
  double x = n1.dot(n2);
  double deg = std::atan2(y, x) * 180.0 / std::numbers::pi;
  if (deg <= -180.0)
    deg += 360.0;
  return deg;
}

TorsionFeatures bond_torsion_features(const Molecule &mol,
                                      const Conformer *conf) {
  TorsionFeatures out;
  out.bonds.resize(mol.num_bonds());
  if (conf == nullptr)
    return out;
  if (conf->size() != mol.num_atoms())
    throw GeometryError("torsion: conformer size does not match molecule");

  for (int bi: find_rotatable_bonds(mol)) {
    const Bond &b = mol.bond(bi);
    int i = lowest_heavy_neighbor(mol, b.a, b.b);
    int l = lowest_heavy_neighbor(mol, b.b, b.a);
    try {
      double rad = dihedral_angle(*conf, i, b.a, b.b, l) * std::numbers::pi / 180.0;
      out.bonds[bi] = { std::sin(rad), std::cos(rad), true };
    } catch (const GeometryError &) {
      ++out.degenerate;
    }
  }
  return out;
}

double kabsch_rmsd(const Conformer &a, const Conformer &b) {
  if (a.size() != b.size())
    throw GeometryError("kabsch: atom count mismatch ("
                        + std::to_string(a.size()) + " vs "
                        + std::to_string(b.size()) + ")");
  const int n = a.size();
  if (n == 0)
    throw GeometryError("kabsch: empty conformers");

  Eigen::Matrix3Xd pa(3, n), pb(3, n);
  for (int i = 0; i < n; ++i) {
    pa.col(i) = a.coords[i];
    pb.col(i) = b.coords[i];
  }
  pa.colwise() -= pa.rowwise().mean();
  pb.colwise() -= pb.rowwise().mean();

  const Eigen::Matrix3d h = pa * pb.transpose();
  Eigen::JacobiSVD<Eigen::Matrix3d> svd(h, Eigen::ComputeFullU
                                               | Eigen::ComputeFullV);
  Eigen::Matrix3d d = Eigen::Matrix3d::Identity();
  if ((svd.matrixV() * svd.matrixU().transpose()).determinant() < 0)
    d(2, 2) = -1;
  const Eigen::Matrix3d rot = svd.matrixV() * d * svd.matrixU().transpose();

  // Residuals are formed explicitly; the closed form loses precision near 0.
  const double sq = (rot * pa - pb).squaredNorm();
  return std::sqrt(sq / n);
}

}  // namespace lcjt
