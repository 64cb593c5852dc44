//
// Project lcjtvae - Copyright 2026 The lcjtvae Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef LCJT_EVAL_METRICS_H_
#define LCJT_EVAL_METRICS_H_

#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "lcjt/chem/descriptors.h"

namespace lcjt {

// numerator / denominator; `fraction` is NaN when the denominator is 0.
struct Fraction {
  int numerator = 0;
  int denominator = 0;
  double fraction = 0;

  bool defined() const { return denominator > 0; }
};

Fraction make_fraction(int num, int den);

struct SampleVerdict {
  std::string smiles;
  bool valid = false;
  std::string canonical;  // empty unless valid
  std::string reason;     // empty if valid
};

// Valid = parses and passes check_valence.
std::vector<SampleVerdict> judge_samples(const std::vector<std::string> &samples);

Fraction validity(const std::vector<SampleVerdict> &v);
// Distinct canonical forms over valid samples.
Fraction uniqueness(const std::vector<SampleVerdict> &v);
// Unique valid canonical forms absent from `training`, over unique valid.
Fraction novelty(const std::vector<SampleVerdict> &v, const std::set<std::string> &training);

// Canonical SMILES of each parseable training molecule; others are skipped.
std::set<std::string> canonical_set(const std::vector<std::string> &smiles);

struct LipinskiResult {
  int violations = 0;  // among mw > 500, logp > 5, hbd > 5, hba > 10
  bool pass = true;    // at most one violation
};

LipinskiResult lipinski_violations(const Descriptors &d);

// One logistic window per property:
//   d(x) = s((x - lower) / lower_width) * s((upper - x) / upper_width) / max,
// with s the logistic function and an infinite bound dropping its factor.
// The max is taken over x >= min_value.
struct QedLiteWindow {
  std::string property;
  double lower = 0;
  double lower_width = 1;
  double upper = 0;
  double upper_width = 1;
  double min_value = 0;

  double log_raw(double x) const;
  double raw(double x) const;
  // Supremum of raw over the domain and where it is reached (may be +-inf
  // for a window that keeps rising).
  double peak() const;
  double argmax() const;
  double desirability(double x) const;
};

struct QedLiteParams {
  // mw, logp, hbd, hba, rot_bonds, aromatic_rings, in that order.
  std::vector<QedLiteWindow> windows;

  // Parses the tab-separated parameter table; throws ParseError on a bad
  // row, a missing property or a duplicate.
  static QedLiteParams parse(std::string_view text);
  // The table shipped with the library (version 1).
  static const QedLiteParams &shipped();
};

// Real-valued property vector, same order as QedLiteParams::windows.
struct QedLiteInputs {
  double mw = 0;
  double logp = 0;
  double hbd = 0;
  double hba = 0;
  double rot_bonds = 0;
  double aromatic_rings = 0;

  static QedLiteInputs from(const Descriptors &d);
};

// Geometric mean of the six desirabilities, in [0, 1].
double qed_lite(const QedLiteInputs &x, const QedLiteParams &p = QedLiteParams::shipped());
double qed_lite(const Descriptors &d, const QedLiteParams &p = QedLiteParams::shipped());

struct MoleculeDetail {
  SampleVerdict verdict;
  bool novel = false;
  bool duplicate = false;  // canonical form seen earlier in the list
  Descriptors descriptors;  // valid samples only
  double qed_lite = 0;
  LipinskiResult lipinski;
};

struct GenerationReport {
  Fraction validity;
  Fraction uniqueness;
  Fraction novelty;
  double mean_qed_lite = 0;  // over valid samples; NaN if none
  Fraction lipinski_rate;    // passing valid samples over valid
  std::vector<MoleculeDetail> details;
};

GenerationReport evaluate_generation(const std::vector<std::string> &samples,
                                     const std::set<std::string> &training,
                                     const QedLiteParams &p = QedLiteParams::shipped());

// Summary row (with the denominators named in the header) followed by one
// row per sample.
std::string generation_report_csv(const GenerationReport &r);

}  // namespace lcjt

#endif  // LCJT_EVAL_METRICS_H_
