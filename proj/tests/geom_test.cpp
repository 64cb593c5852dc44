//
// Project lcjtvae - Copyright 2026 The lcjtvae Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "lcjt/chem/smiles.h"
#include "lcjt/error.h"
#include "lcjt/geom/conformer.h"
#include "test_util.h"

namespace lcjt {
namespace {
constexpr double kPi = std::numbers::pi;

Conformer make(std::initializer_list<Eigen::Vector3d> pts) {
  return Conformer { std::vector<Eigen::Vector3d>(pts) };
}

Eigen::Matrix3d random_rotation(std::mt19937_64 &rng) {
  std::normal_distribution<double> g;
  Eigen::Quaterniond q(g(rng), g(rng), g(rng), g(rng));
  q.normalize();
  return q.toRotationMatrix();
}

Conformer transform(const Conformer &c, const Eigen::Matrix3d &r,
                    const Eigen::Vector3d &t) {
  Conformer out;
  for (const auto &p: c.coords)
    out.coords.push_back(r * p + t);
  return out;
}

// Horn's closed-form quaternion solution; independent of the SVD path.
double horn_rmsd(const Conformer &a, const Conformer &b) {
  const int n = a.size();
  Eigen::Vector3d ca = Eigen::Vector3d::Zero(), cb = Eigen::Vector3d::Zero();
  for (int i = 0; i < n; ++i) {
    ca += a.coords[i];
    cb += b.coords[i];
  }
  ca /= n;
  cb /= n;
  Eigen::Matrix3d s = Eigen::Matrix3d::Zero();
  double ga = 0, gb = 0;
  for (int i = 0; i < n; ++i) {
    Eigen::Vector3d x = a.coords[i] - ca, y = b.coords[i] - cb;
    s += x * y.transpose();
    ga += x.squaredNorm();
    gb += y.squaredNorm();
  }
  Eigen::Matrix4d k;
  k << s(0, 0) + s(1, 1) + s(2, 2), s(1, 2) - s(2, 1), s(2, 0) - s(0, 2),
      s(0, 1) - s(1, 0),  //
      s(1, 2) - s(2, 1), s(0, 0) - s(1, 1) - s(2, 2), s(0, 1) + s(1, 0),
      s(2, 0) + s(0, 2),  //
      s(2, 0) - s(0, 2), s(0, 1) + s(1, 0), -s(0, 0) + s(1, 1) - s(2, 2),
      s(1, 2) + s(2, 1),  //
      s(0, 1) - s(1, 0), s(2, 0) + s(0, 2), s(1, 2) + s(2, 1),
      -s(0, 0) - s(1, 1) + s(2, 2);
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(k);
  double lmax = es.eigenvalues().maxCoeff();
  return std::sqrt(std::max(0.0, (ga + gb - 2 * lmax) / n));
}

Conformer random_cloud(int n, std::mt19937_64 &rng) {
  std::uniform_real_distribution<double> u(-3, 3);
  Conformer c;
  for (int i = 0; i < n; ++i)
    c.coords.emplace_back(u(rng), u(rng), u(rng));
  return c;
}

const char *kMethanolBlock = R"(methanol
  handmade

  2  1  0  0  0  0  0  0  0  0999 V2000
    0.0000    0.0000    0.0000 C   0  0  0  0  0  0  0  0  0  0  0  0
    1.4300   -0.1250    0.0500 O   0  0  0  0  0  0  0  0  0  0  0  0
  1  2  1  0  0  0  0
M  END
$$$$
)";

TEST(Sdf, TwoAtomBlock) {
  auto recs = parse_sdf_v2000(kMethanolBlock);
  ASSERT_EQ(recs.size(), 1U);
  const SdfRecord &r = recs[0];
  EXPECT_EQ(r.name, "methanol");
  ASSERT_EQ(r.molecule.num_atoms(), 2);
  EXPECT_EQ(r.molecule.num_bonds(), 1);
  EXPECT_EQ(r.molecule.atom(0).implicit_h, 3);
  EXPECT_EQ(r.molecule.atom(1).implicit_h, 1);
  EXPECT_EQ(r.conformer.coords[1], Eigen::Vector3d(1.43, -0.125, 0.05));
  EXPECT_EQ(write_canonical_smiles(r.molecule), "CO");
}

TEST(Sdf, ThreeRecordsInOrder) {
  std::string text = std::string(kMethanolBlock) + R"(second
x

  2  1  0  0  0  0  0  0  0  0999 V2000
    0.0000    0.0000    0.0000 C   0  0  0  0  0  0  0  0  0  0  0  0
    1.5000    0.0000    0.0000 C   0  0  0  0  0  0  0  0  0  0  0  0
  1  2  2  0  0  0  0
M  END
> <note>
ethene
$$$$
third


  3  2  0  0  0  0  0  0  0  0999 V2000
    0.0000    0.0000    0.0000 N   0  0  0  0  0  0  0  0  0  0  0  0
    1.0000    0.0000    0.0000 O   0  0  0  0  0  0  0  0  0  0  0  0
   -1.0000    0.0000    0.0000 O   0  0  0  0  0  0  0  0  0  0  0  0
  1  2  2  0  0  0  0
  1  3  1  0  0  0  0
M  CHG  1   3  -1
M  END
$$$$
)";
  auto recs = parse_sdf_v2000(text);
  ASSERT_EQ(recs.size(), 3U);
  EXPECT_EQ(recs[0].name, "methanol");
  EXPECT_EQ(recs[1].name, "second");
  EXPECT_EQ(write_canonical_smiles(recs[1].molecule), "C=C");
  EXPECT_EQ(recs[2].name, "third");
  EXPECT_EQ(recs[2].molecule.atom(2).formal_charge, -1);
  EXPECT_EQ(write_canonical_smiles(recs[2].molecule),
            write_canonical_smiles(parse_smiles("N(=O)[O-]")));
}

TEST(Sdf, ExplicitHydrogensAndAromaticBonds) {
  std::string text = R"(benzene
h

  7  7  0  0  0  0  0  0  0  0999 V2000
    1.3900    0.0000    0.0000 C   0  0
    0.6950    1.2038    0.0000 C   0  0
   -0.6950    1.2038    0.0000 C   0  0
   -1.3900    0.0000    0.0000 C   0  0
   -0.6950   -1.2038    0.0000 C   0  0
    0.6950   -1.2038    0.0000 C   0  0
    2.4700    0.0000    0.0000 H   0  0
  1  2  4  0
  2  3  4  0
  3  4  4  0
  4  5  4  0
  5  6  4  0
  6  1  4  0
  1  7  1  0
M  END
)";
  // Partial explicit hydrogens: only the first carbon carries one. The
  // others are fixed at zero, which is not a valid benzene, so this must
  // fail loudly instead of inventing hydrogens.
  EXPECT_THROW(parse_sdf_v2000(text), ParseError);

  std::string heavy = R"(benzene
h

  6  6  0  0  0  0  0  0  0  0999 V2000
    1.3900    0.0000    0.0000 C   0  0
    0.6950    1.2038    0.0000 C   0  0
   -0.6950    1.2038    0.0000 C   0  0
   -1.3900    0.0000    0.0000 C   0  0
   -0.6950   -1.2038    0.0000 C   0  0
    0.6950   -1.2038    0.0000 C   0  0
  1  2  4  0
  2  3  4  0
  3  4  4  0
  4  5  4  0
  5  6  4  0
  6  1  4  0
M  END
)";
  auto recs = parse_sdf_v2000(heavy);
  ASSERT_EQ(recs.size(), 1U);
  EXPECT_EQ(write_canonical_smiles(recs[0].molecule), "c1ccccc1");
}

TEST(Sdf, Errors) {
  std::string truncated = R"(bad


  3  2  0  0  0  0  0  0  0  0999 V2000
    0.0000    0.0000    0.0000 C   0  0
    1.0000    0.0000    0.0000 C   0  0
  1  2  1  0
M  END
)";
  try {
    parse_sdf_v2000(truncated);
    FAIL();
  } catch (const ParseError &e) {
    EXPECT_NE(std::string(e.what()).find("counts-line mismatch"),
              std::string::npos)
        << e.what();
  }
  std::string v3000 = R"(bad


  0  0  0  0  0  0  0  0  0  0999 V3000
M  END
)";
  EXPECT_THROW(parse_sdf_v2000(v3000), ParseError);
  std::string bad_coord = R"(bad


  1  0  0  0  0  0  0  0  0  0999 V2000
    0.0000    abcdef    0.0000 C   0  0
M  END
)";
  EXPECT_THROW(parse_sdf_v2000(bad_coord), ParseError);
}

TEST(Rotatable, Definition) {
  EXPECT_TRUE(find_rotatable_bonds(parse_smiles("CCO")).empty());
  EXPECT_EQ(find_rotatable_bonds(parse_smiles("CCCC")), (std::vector<int> { 1 }));
  Molecule biphenyl = parse_smiles("c1ccccc1-c2ccccc2");
  auto rot = find_rotatable_bonds(biphenyl);
  ASSERT_EQ(rot.size(), 1U);
  const Bond &b = biphenyl.bond(rot[0]);
  EXPECT_EQ(std::min(b.a, b.b), 5);
  EXPECT_EQ(std::max(b.a, b.b), 6);
}

TEST(Dihedral, ConstructedCases) {
  Conformer anti = make({ { -1, 1, 0 }, { 0, 0, 0 }, { 1.5, 0, 0 }, { 2.5, -1, 0 } });
  EXPECT_NEAR(dihedral_angle(anti, 0, 1, 2, 3), 180.0, 1e-9);
  Conformer syn = make({ { -1, 1, 0 }, { 0, 0, 0 }, { 1.5, 0, 0 }, { 2.5, 1, 0 } });
  EXPECT_NEAR(dihedral_angle(syn, 0, 1, 2, 3), 0.0, 1e-9);
  // b1 = (-1,0,0), b2 = (0,0,1), b3 = (0,1,0): y = |b2| b1.(b2 x b3) = 1,
  // x = (b1 x b2).(b2 x b3) = 0, atan2(1, 0) = +90.
  Conformer perp = make({ { 1, 0, 0 }, { 0, 0, 0 }, { 0, 0, 1 }, { 0, 1, 1 } });
  EXPECT_NEAR(dihedral_angle(perp, 0, 1, 2, 3), 90.0, 1e-9);
  EXPECT_NEAR(dihedral_angle(perp, 3, 2, 1, 0), 90.0, 1e-9);
  Conformer mirror = make({ { 1, 0, 0 }, { 0, 0, 0 }, { 0, 0, 1 }, { 0, -1, 1 } });
  EXPECT_NEAR(dihedral_angle(mirror, 0, 1, 2, 3), -90.0, 1e-9);
}

TEST(Dihedral, Errors) {
  Conformer line = make({ { -1, 0, 0 }, { 0, 0, 0 }, { 1, 0, 0 }, { 2, 1, 0 } });
  EXPECT_THROW(dihedral_angle(line, 0, 1, 2, 3), GeometryError);
  EXPECT_THROW(dihedral_angle(line, 0, 1, 1, 3), GeometryError);
}

TEST(Dihedral, RigidInvarianceAndReversal) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-10, 10);
  for (int trial = 0; trial < 200; ++trial) {
    Conformer c = random_cloud(4, rng);
    double d = dihedral_angle(c, 0, 1, 2, 3);
    Conformer moved = transform(c, random_rotation(rng),
                                Eigen::Vector3d(u(rng), u(rng), u(rng)));
    double dm = dihedral_angle(moved, 0, 1, 2, 3);
    double diff = std::fabs(d - dm);
    EXPECT_LT(std::min(diff, 360.0 - diff), 1e-9);
    EXPECT_NEAR(std::fabs(dihedral_angle(c, 3, 2, 1, 0)), std::fabs(d), 1e-9);
  }
}

TEST(Torsion, NoConformer) {
  Molecule m = parse_smiles("CCCC");
  TorsionFeatures f = bond_torsion_features(m, nullptr);
  ASSERT_EQ(f.bonds.size(), 3U);
  for (const auto &t: f.bonds) {
    EXPECT_EQ(t.sin, 0);
    EXPECT_EQ(t.cos, 0);
    EXPECT_FALSE(t.has_torsion);
  }
}

TEST(Torsion, ButaneAnti) {
  Molecule m = parse_smiles("CCCC");
  Conformer c = make({ { -1, 1, 0 }, { 0, 0, 0 }, { 1.5, 0, 0 }, { 2.5, -1, 0 } });
  TorsionFeatures f = bond_torsion_features(m, &c);
  EXPECT_FALSE(f.bonds[0].has_torsion);
  EXPECT_TRUE(f.bonds[1].has_torsion);
  EXPECT_NEAR(f.bonds[1].sin, 0.0, 1e-12);
  EXPECT_NEAR(f.bonds[1].cos, -1.0, 1e-12);
  EXPECT_FALSE(f.bonds[2].has_torsion);
}

TEST(Torsion, BiphenylTwist45) {
  Molecule m = parse_smiles("c1ccccc1-c2ccccc2");
  // Ring 1 in the xy plane with atom 5 at the origin; ring 2 rotated about
  // the x axis (the 5-6 bond) by the twist angle.
  const double twist = kPi / 4, r = 1.4, link = 1.48;
  Conformer c;
  c.coords.resize(12);
  const Eigen::Vector3d c1(-r, 0, 0), c2(link + r, 0, 0);
  const int ring1[6] = { 5, 0, 1, 2, 3, 4 };   // at 0, 60, ..., 300 degrees
  const int ring2[6] = { 9, 8, 7, 6, 11, 10 };  // at 0, 60, ..., 300 degrees
  for (int s = 0; s < 6; ++s) {
    double th = s * kPi / 3;
    c.coords[ring1[s]] = c1 + Eigen::Vector3d(r * std::cos(th), r * std::sin(th), 0);
    c.coords[ring2[s]] = c2 + Eigen::Vector3d(r * std::cos(th),
                                              r * std::sin(th) * std::cos(twist),
                                              r * std::sin(th) * std::sin(twist));
  }
  ASSERT_NEAR((c.coords[5] - c.coords[6]).norm(), link, 1e-12);
  TorsionFeatures f = bond_torsion_features(m, &c);
  int bi = m.find_bond(5, 6);
  ASSERT_GE(bi, 0);
  EXPECT_TRUE(f.bonds[bi].has_torsion);
  EXPECT_NEAR(f.bonds[bi].sin, std::sin(twist), 1e-9);
  EXPECT_NEAR(f.bonds[bi].cos, std::cos(twist), 1e-9);
  int flagged = 0;
  for (const auto &t: f.bonds)
    flagged += t.has_torsion;
  EXPECT_EQ(flagged, 1);
}

TEST(Kabsch, SelfIsZero) {
  std::mt19937_64 rng(1);
  Conformer a = random_cloud(10, rng);
  EXPECT_LT(kabsch_rmsd(a, a), 1e-12);
}

TEST(Kabsch, RigidCopy) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-20, 20);
  for (int trial = 0; trial < 100; ++trial) {
    Conformer a = random_cloud(3 + trial % 20, rng);
    Conformer b = transform(a, random_rotation(rng),
                            Eigen::Vector3d(u(rng), u(rng), u(rng)));
    EXPECT_LT(kabsch_rmsd(a, b), 1e-9);
  }
}

TEST(Kabsch, SingleAtomOffsetMatchesHorn) {
  std::mt19937_64 rng(3);
  for (int n: { 4, 8, 16, 32 }) {
    Conformer a = random_cloud(n, rng);
    Conformer b = a;
    b.coords[0] += Eigen::Vector3d(1, 0, 0);
    double got = kabsch_rmsd(a, b);
    EXPECT_NEAR(got, horn_rmsd(a, b), 1e-9);
    // Centroid correction alone gives sqrt(n-1)/n; rotation can only help.
    EXPECT_LE(got, std::sqrt(n - 1.0) / n + 1e-12);
    EXPECT_LE(got, 1 / std::sqrt(static_cast<double>(n)));
    EXPECT_GT(got, 0);
  }
}

TEST(Kabsch, RandomPairsMatchHornAndAreSymmetric) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 100; ++trial) {
    Conformer a = random_cloud(5 + trial % 7, rng);
    Conformer b = random_cloud(a.size(), rng);
    double ab = kabsch_rmsd(a, b);
    EXPECT_NEAR(ab, horn_rmsd(a, b), 1e-9);
    EXPECT_NEAR(ab, kabsch_rmsd(b, a), 1e-12);
    EXPECT_GE(ab, 0);
  }
  // Mirror images are not superimposable by a proper rotation.
  Conformer a = make({ { 0, 0, 0 }, { 1, 0, 0 }, { 0, 1, 0 }, { 0, 0, 1 } });
  Conformer m = a;
  for (auto &p: m.coords)
    p.z() = -p.z();
  EXPECT_GT(kabsch_rmsd(a, m), 0.1);
}

TEST(Kabsch, SizeMismatch) {
  std::mt19937_64 rng(6);
  EXPECT_THROW(kabsch_rmsd(random_cloud(3, rng), random_cloud(4, rng)),
               GeometryError);
}

TEST(Rotatable, CorpusSubsetOfSingleAcyclic) {
  for (const std::string &smi:
       read_smiles_lines(test::read_file(test::fixture("corpus_250.smi")))) {
    Molecule m = parse_smiles(smi);
    for (int bi: find_rotatable_bonds(m)) {
      EXPECT_EQ(m.bond(bi).order, BondOrder::kSingle);
      EXPECT_FALSE(m.bond(bi).in_ring);
      EXPECT_TRUE(m.bond(bi).rotatable);
    }
  }
}
}  // namespace
}  // namespace lcjt
