//
// Project lcjtvae - Copyright 2026 The lcjtvae Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <cmath>
#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "lcjt/chem/descriptors.h"
#include "lcjt/chem/fingerprint.h"
#include "lcjt/chem/smiles.h"
#include "lcjt/error.h"
#include "lcjt/eval/metrics.h"
#include "lcjt/eval/projection.h"

namespace lcjt {
namespace {

double logistic(double t) { return 1.0 / (1.0 + std::exp(-t)); }

TEST(Metrics, Validity) {
  auto v = judge_samples({ "CCO", "c1ccccc1", "C(" });
  Fraction f = validity(v);
  EXPECT_EQ(f.numerator, 2);
  EXPECT_EQ(f.denominator, 3);
  EXPECT_DOUBLE_EQ(f.fraction, 2.0 / 3.0);
  EXPECT_FALSE(v[2].valid);
  EXPECT_FALSE(v[2].reason.empty());
  EXPECT_DOUBLE_EQ(validity(judge_samples({ "CCO", "CCN" })).fraction, 1.0);
}

TEST(Metrics, ValenceFailureIsInvalid) {
  auto v = judge_samples({ "C(C)(C)(C)(C)C", "" });
  EXPECT_FALSE(v[0].valid);
  EXPECT_FALSE(v[1].valid);
}

TEST(Metrics, EmptyInputIsUndefined) {
  auto v = judge_samples({});
  EXPECT_FALSE(validity(v).defined());
  EXPECT_TRUE(std::isnan(validity(v).fraction));
  GenerationReport r = evaluate_generation({}, {});
  EXPECT_TRUE(std::isnan(r.mean_qed_lite));
  EXPECT_NE(generation_report_csv(r).find("undefined (0/0)"), std::string::npos);
}

TEST(Metrics, Uniqueness) {
  Fraction f = uniqueness(judge_samples({ "CCO", "OCC", "CCC" }));
  EXPECT_EQ(f.numerator, 2);
  EXPECT_EQ(f.denominator, 3);
  EXPECT_DOUBLE_EQ(uniqueness(judge_samples({ "CCO", "CCC", "CCN" })).fraction, 1.0);
  EXPECT_DOUBLE_EQ(uniqueness(judge_samples({ "CCO", "OCC", "C(O)C", "[CH3][CH2][OH]" })).fraction,
                   0.25);
  // Invalid samples are outside the denominator.
  EXPECT_EQ(uniqueness(judge_samples({ "CCO", "C(" })).denominator, 1);
}

TEST(Metrics, Novelty) {
  auto train = canonical_set({ "OCC" });
  Fraction f = novelty(judge_samples({ "CCO", "CCC", "CCC" }), train);
  EXPECT_EQ(f.numerator, 1);
  EXPECT_EQ(f.denominator, 2);
  EXPECT_DOUBLE_EQ(novelty(judge_samples({ "CCN", "CCC" }), train).fraction, 1.0);
  EXPECT_DOUBLE_EQ(novelty(judge_samples({ "CCO" }), train).fraction, 0.0);
}

TEST(Metrics, CanonicalSetSkipsUnparseable) {
  EXPECT_EQ(canonical_set({ "CCO", "OCC", "C(" }).size(), 1U);
}

TEST(Lipinski, Cases) {
  LipinskiResult eth = lipinski_violations(compute_descriptors(parse_smiles("CCO")));
  EXPECT_EQ(eth.violations, 0);
  EXPECT_TRUE(eth.pass);

  Descriptors d;
  d.mw = 600;
  d.logp = 6;
  d.hbd = 0;
  d.hba = 2;
  LipinskiResult r = lipinski_violations(d);
  EXPECT_EQ(r.violations, 2);
  EXPECT_FALSE(r.pass);

  Descriptors m;
  m.mw = 501;
  r = lipinski_violations(m);
  EXPECT_EQ(r.violations, 1);
  EXPECT_TRUE(r.pass);

  // Thresholds are strict.
  Descriptors edge;
  edge.mw = 500;
  edge.logp = 5;
  edge.hbd = 5;
  edge.hba = 10;
  EXPECT_EQ(lipinski_violations(edge).violations, 0);
}

TEST(Lipinski, Monotone) {
  Descriptors base;
  base.mw = 300;
  base.logp = 2;
  base.hbd = 2;
  base.hba = 4;
  int prev = lipinski_violations(base).violations;
  for (int step = 0; step < 20; ++step) {
    Descriptors d = base;
    d.mw += 30 * step;
    d.logp += 0.4 * step;
    d.hbd += step / 2;
    d.hba += step;
    const int v = lipinski_violations(d).violations;
    EXPECT_GE(v, prev);
    prev = v;
  }
  EXPECT_EQ(prev, 4);
}

TEST(QedLite, ShippedTableParses) {
  const QedLiteParams &p = QedLiteParams::shipped();
  ASSERT_EQ(p.windows.size(), 6U);
  EXPECT_EQ(p.windows[0].property, "mw");
  EXPECT_EQ(p.windows[5].property, "aromatic_rings");
  EXPECT_TRUE(std::isinf(p.windows[2].lower));  // hbd is one-sided
}

TEST(QedLite, RawMatchesFormula) {
  const QedLiteWindow &mw = QedLiteParams::shipped().windows[0];
  const double expect = logistic((300.0 - 200) / 30) * logistic((450.0 - 300) / 40);
  EXPECT_NEAR(mw.raw(300), expect, 1e-15);
  const QedLiteWindow &hbd = QedLiteParams::shipped().windows[2];
  EXPECT_NEAR(hbd.raw(1), logistic((2.5 - 1) / 0.6), 1e-15);
}

TEST(QedLite, PeakIsMaximum) {
  for (const QedLiteWindow &w: QedLiteParams::shipped().windows) {
    const double x0 = w.argmax();
    ASSERT_TRUE(std::isfinite(x0)) << w.property;
    const double peak = w.peak();
    // Coarse scan over the domain never beats the peak.
    for (double x = std::max(w.min_value, -20.0); x < 1000; x += 0.25)
      EXPECT_LE(w.raw(x), peak + 1e-12) << w.property << " at " << x;
    EXPECT_NEAR(w.desirability(x0), 1.0, 1e-12);
  }
}

TEST(QedLite, AllAtMaximaIsOne) {
  const auto &w = QedLiteParams::shipped().windows;
  QedLiteInputs x { w[0].argmax(), w[1].argmax(), w[2].argmax(),
                    w[3].argmax(), w[4].argmax(), w[5].argmax() };
  EXPECT_NEAR(qed_lite(x), 1.0, 0.01);
}

TEST(QedLite, MwTailGoesToZero) {
  QedLiteInputs x { 300, 2, 1, 4, 3, 1 };
  double prev = qed_lite(x);
  for (double mw: { 600.0, 1000.0, 5000.0, 1e5 }) {
    x.mw = mw;
    const double q = qed_lite(x);
    EXPECT_LT(q, prev);
    prev = q;
  }
  EXPECT_LT(prev, 1e-10);
}

TEST(QedLite, RealMoleculesInRange) {
  for (const char *s: { "CCO", "CC(=O)Oc1ccccc1C(=O)O", "c1ccc2ccccc2c1", "CCCCCCCCCCCCCCCCCCCC" }) {
    const double q = qed_lite(compute_descriptors(parse_smiles(s)));
    EXPECT_GE(q, 0.0) << s;
    EXPECT_LE(q, 1.0) << s;
  }
  // Aspirin is more drug-like than eicosane.
  EXPECT_GT(qed_lite(compute_descriptors(parse_smiles("CC(=O)Oc1ccccc1C(=O)O"))),
            qed_lite(compute_descriptors(parse_smiles("CCCCCCCCCCCCCCCCCCCC"))));
}

TEST(QedLite, ParseErrors) {
  EXPECT_THROW(QedLiteParams::parse("mw 1 1 2 1 0\n"), ParseError);  // missing rows
  const std::string ok = "mw 200 30 450 40 0\nlogp 0 0.7 4.5 0.7 -inf\nhbd -inf 1 2.5 0.6 0\n"
                         "hba 0.5 0.5 7 1 0\nrot_bonds -inf 1 6 1.5 0\n"
                         "aromatic_rings 0.5 0.3 3 0.5 0\n";
  EXPECT_NO_THROW(QedLiteParams::parse(ok));
  EXPECT_THROW(QedLiteParams::parse(ok + "mw 1 1 2 1 0\n"), ParseError);
  EXPECT_THROW(QedLiteParams::parse(ok + "tpsa 1 1 2 1 0\n"), ParseError);
  EXPECT_THROW(QedLiteParams::parse("mw 200 0 450 40 0\n"), ParseError);
  EXPECT_THROW(QedLiteParams::parse("mw 200 x 450 40 0\n"), ParseError);
}

TEST(Report, DenominatorsAndRows) {
  GenerationReport r = evaluate_generation({ "CCO", "OCC", "CCC", "C(" }, canonical_set({ "CCC" }));
  EXPECT_EQ(r.details.size(), 4U);
  EXPECT_EQ(r.validity.numerator, 3);
  EXPECT_EQ(r.uniqueness.numerator, 2);
  EXPECT_EQ(r.uniqueness.denominator, 3);
  EXPECT_EQ(r.novelty.numerator, 1);
  EXPECT_EQ(r.novelty.denominator, 2);
  EXPECT_EQ(r.lipinski_rate.denominator, 3);
  EXPECT_TRUE(r.details[1].duplicate);
  EXPECT_FALSE(r.details[0].duplicate);
  const std::string csv = generation_report_csv(r);
  EXPECT_NE(csv.find("uniqueness (unique/valid)"), std::string::npos);
  EXPECT_NE(csv.find("novelty (novel/unique valid)"), std::string::npos);
  EXPECT_NE(csv.find("0.6667 (2/3)"), std::string::npos);
  EXPECT_NE(csv.find("simplified QED"), std::string::npos);
}

TEST(Pca, CollinearHasZeroSecondComponent) {
  Eigen::MatrixXd x(3, 3);
  x << 0, 0, 0, 1, 2, 3, 2, 4, 6;
  Eigen::MatrixXd y = pca_2d(x);
  const double s = std::sqrt(14.0);
  EXPECT_NEAR(std::abs(y(0, 0)), s, 1e-9);
  EXPECT_NEAR(y(1, 0), 0.0, 1e-9);
  EXPECT_NEAR(std::abs(y(2, 0)), s, 1e-9);
  EXPECT_NEAR(y.col(1).squaredNorm(), 0.0, 1e-18);
}

TEST(Pca, ReorderInvariant) {
  std::mt19937_64 g(7);
  std::normal_distribution<double> nd;
  Eigen::MatrixXd x(12, 5);
  for (int i = 0; i < x.rows(); ++i)
    for (int j = 0; j < x.cols(); ++j)
      x(i, j) = nd(g) * (j + 1);
  std::vector<int> perm(12);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), g);
  Eigen::MatrixXd xp(12, 5);
  for (int i = 0; i < 12; ++i)
    xp.row(i) = x.row(perm[i]);
  Eigen::MatrixXd y = pca_2d(x), yp = pca_2d(xp);
  for (int k = 0; k < 2; ++k) {
    double sign = 0;
    for (int i = 0; i < 12; ++i) {
      if (sign == 0 && std::abs(y(perm[i], k)) > 1e-6)
        sign = yp(i, k) / y(perm[i], k) > 0 ? 1 : -1;
      EXPECT_NEAR(yp(i, k), sign * y(perm[i], k), 1e-9);
    }
  }
}

TEST(Pca, VarianceMatchesEigenvalues) {
  // Oracle: eigenvalues of the sample covariance, computed independently.
  std::mt19937_64 g(3);
  std::normal_distribution<double> nd;
  Eigen::MatrixXd x(30, 4);
  for (int i = 0; i < 30; ++i)
    for (int j = 0; j < 4; ++j)
      x(i, j) = nd(g) * (4 - j);
  Eigen::MatrixXd c = x.rowwise() - x.colwise().mean();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(c.transpose() * c);
  Eigen::MatrixXd y = pca_2d(x);
  EXPECT_NEAR(y.col(0).squaredNorm(), es.eigenvalues()(3), 1e-8);
  EXPECT_NEAR(y.col(1).squaredNorm(), es.eigenvalues()(2), 1e-8);
  EXPECT_NEAR(y.col(0).dot(y.col(1)), 0.0, 1e-8);
}

TEST(Projection, TooFewPoints) {
  Eigen::MatrixXd x(2, 3);
  x.setRandom();
  EXPECT_THROW(pca_2d(x), Error);
  EXPECT_THROW(tsne_2d(x, {}), Error);
}

TEST(Tsne, PerplexityBound) {
  Eigen::MatrixXd x(10, 3);
  x.setRandom();
  ProjectionConfig cfg;
  cfg.perplexity = 3;  // (10 - 1) / 3 = 3, must be strictly below
  EXPECT_THROW(tsne_2d(x, cfg), Error);
  cfg.perplexity = 2.9;
  cfg.iterations = 20;
  EXPECT_NO_THROW(tsne_2d(x, cfg));
}

TEST(Tsne, AffinityRowsHitTargetEntropy) {
  std::mt19937_64 g(11);
  std::normal_distribution<double> nd;
  Eigen::MatrixXd x(25, 6);
  for (int i = 0; i < x.rows(); ++i)
    for (int j = 0; j < x.cols(); ++j)
      x(i, j) = nd(g);
  for (double perp: { 2.0, 5.0, 7.5 }) {
    TsneAffinities a = tsne_affinities(x, perp);
    for (int i = 0; i < x.rows(); ++i) {
      double h = 0, sum = 0;
      for (int j = 0; j < x.rows(); ++j) {
        const double p = a.conditional(i, j);
        sum += p;
        if (p > 0)
          h -= p * std::log(p);
      }
      EXPECT_NEAR(sum, 1.0, 1e-12);
      EXPECT_NEAR(std::exp(h), perp, 1e-6);
      EXPECT_EQ(a.conditional(i, i), 0.0);
    }
    EXPECT_NEAR(a.joint.sum(), 1.0, 1e-12);
    EXPECT_NEAR((a.joint - a.joint.transpose()).norm(), 0.0, 1e-15);
  }
}

Eigen::MatrixXd two_cluster_fingerprints() {
  const char *alkanes[] = {
    "CC", "CCC", "CCCC", "CC(C)C", "CCCCC", "CC(C)CC", "CC(C)(C)C", "CCCCCC",
    "CC(C)CCC", "CCC(C)CC", "CC(C)C(C)C", "CC(C)(C)CC", "CCCCCCC", "CC(C)CCCC",
    "CCC(C)CCC", "CC(C)C(C)CC", "CCCCCCCC", "CC(C)(C)CC(C)C", "CCCCCCCCC", "CCCCCCCCCC",
  };
  const char *aromatics[] = {
    "c1ccccc1", "c1ccc2ccccc2c1", "c1ccc2cc3ccccc3cc2c1", "c1ccc2c(c1)ccc1ccccc12",
    "c1cc2ccc3cccc4ccc(c1)c2c34", "c1ccc(cc1)-c1ccccc1", "c1ccc2cc3cc4ccccc4cc3cc2c1",
    "c1ccc2c(c1)c1ccccc1c1ccccc21", "c1ccc(cc1)-c1ccc(cc1)-c1ccccc1", "c1ccc2c(c1)-c1ccccc1-2",
    "c1ccc2c(c1)ccc1c2ccc2ccccc21", "c1cc2ccc3ccc4ccc5ccc6ccc1c1c2c3c4c5c61",
    "c1ccc2cc(ccc2c1)-c1ccccc1", "c1ccc2ccc3ccccc3c2c1", "c1ccc2c(c1)ccc1c3ccccc3ccc21",
    "c1ccc2c(c1)c1cccc3cccc2c31", "c1ccc(cc1)-c1cccc2ccccc12", "c1ccc2c(c1)ccc1ccc3ccccc3c12",
    "c1ccc-2c(c1)-c1cccc3cccc-2c13", "c1ccc2cc3ccccc3cc2c1-c1ccccc1",
  };
  std::vector<Fingerprint> fps;
  for (const char *s: alkanes)
    fps.push_back(circular_fingerprint(parse_smiles(s)));
  for (const char *s: aromatics)
    fps.push_back(circular_fingerprint(parse_smiles(s)));
  return fingerprint_matrix(fps);
}

TEST(Tsne, Deterministic) {
  Eigen::MatrixXd x = two_cluster_fingerprints();
  ProjectionConfig cfg;
  cfg.perplexity = 8;
  cfg.iterations = 200;
  cfg.seed = 42;
  Eigen::MatrixXd a = tsne_2d(x, cfg), b = tsne_2d(x, cfg);
  EXPECT_TRUE(a == b);
  cfg.seed = 43;
  EXPECT_FALSE(a == tsne_2d(x, cfg));
}

TEST(Tsne, SeparatesClusters) {
  Eigen::MatrixXd x = two_cluster_fingerprints();
  ASSERT_EQ(x.rows(), 40);
  ProjectionConfig cfg;
  cfg.perplexity = 8;
  cfg.seed = 1;
  Eigen::MatrixXd y = tsne_2d(x, cfg);
  ASSERT_TRUE(y.allFinite());
  const Eigen::RowVector2d ca = y.topRows(20).colwise().mean();
  const Eigen::RowVector2d cb = y.bottomRows(20).colwise().mean();
  double intra = 0;
  int pairs = 0;
  for (int half = 0; half < 2; ++half) {
    for (int i = 0; i < 20; ++i)
      for (int j = i + 1; j < 20; ++j) {
        intra += (y.row(20 * half + i) - y.row(20 * half + j)).norm();
        ++pairs;
      }
  }
  intra /= pairs;
  EXPECT_GT((ca - cb).norm(), intra);
}

TEST(Projection, FingerprintMatrixBits) {
  Fingerprint f(16, 2);
  f.set(3);
  f.set(15);
  Eigen::MatrixXd m = fingerprint_matrix({ f });
  EXPECT_EQ(m.sum(), 2.0);
  EXPECT_EQ(m(0, 3), 1.0);
  EXPECT_EQ(m(0, 15), 1.0);
}

}  // namespace
}  // namespace lcjt
