//
// Project lcjtvae - Copyright 2026 The lcjtvae Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "lcjt/eval/metrics.h"

#include <cmath>
#include <limits>
#include <sstream>

#include "lcjt/chem/smiles.h"
#include "lcjt/chem/valence.h"
#include "lcjt/data/csv.h"
#include "lcjt/data_files.h"
#include "lcjt/error.h"

namespace lcjt {
namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

// log(1 / (1 + exp(-t))) without overflow.
double log_sigmoid(double t) {
  return t < 0 ? t - std::log1p(std::exp(t)) : -std::log1p(std::exp(-t));
}

const char *const kProperties[] = { "mw", "logp", "hbd", "hba", "rot_bonds",
                                    "aromatic_rings" };

double parse_bound(const std::string &s, int line) {
  if (s == "-inf")
    return -kInf;
  if (s == "inf" || s == "+inf")
    return kInf;
  std::optional<double> v;
  try {
    v = parse_optional_number(s);
  } catch (const ParseError &) {
  }
  if (!v)
    throw ParseError("qed_lite table: bad number '" + s + "'", line);
  return *v;
}
}  // namespace

Fraction make_fraction(int num, int den) {
  return { num, den, den > 0 ? static_cast<double>(num) / den : kNan };
}

std::vector<SampleVerdict> judge_samples(const std::vector<std::string> &samples) {
  std::vector<SampleVerdict> out;
  out.reserve(samples.size());
  for (const std::string &s: samples) {
    SampleVerdict v;
    v.smiles = s;
    if (s.empty()) {
      v.reason = "empty SMILES";
      out.push_back(std::move(v));
      continue;
    }
    try {
      Molecule m = parse_smiles(s);
      ValenceReport rep = check_valence(m);
      if (!rep.ok) {
        v.reason = rep.describe();
      } else {
        v.canonical = write_canonical_smiles(m);
        v.valid = true;
      }
    } catch (const Error &e) {
      v.reason = e.what();
    }
    out.push_back(std::move(v));
  }
  return out;
}

Fraction validity(const std::vector<SampleVerdict> &v) {
  int ok = 0;
  for (const SampleVerdict &s: v)
    ok += s.valid;
  return make_fraction(ok, static_cast<int>(v.size()));
}

Fraction uniqueness(const std::vector<SampleVerdict> &v) {
  std::set<std::string> seen;
  int valid = 0;
  for (const SampleVerdict &s: v) {
    if (!s.valid)
      continue;
    ++valid;
    seen.insert(s.canonical);
  }
  return make_fraction(static_cast<int>(seen.size()), valid);
}

Fraction novelty(const std::vector<SampleVerdict> &v, const std::set<std::string> &training) {
  std::set<std::string> seen;
  for (const SampleVerdict &s: v) {
    if (s.valid)
      seen.insert(s.canonical);
  }
  int novel = 0;
  for (const std::string &c: seen)
    novel += training.count(c) == 0;
  return make_fraction(novel, static_cast<int>(seen.size()));
}

std::set<std::string> canonical_set(const std::vector<std::string> &smiles) {
  std::set<std::string> out;
  for (const std::string &s: smiles) {
    try {
      out.insert(write_canonical_smiles(parse_smiles(s)));
    } catch (const Error &) {
    }
  }
  return out;
}

LipinskiResult lipinski_violations(const Descriptors &d) {
  LipinskiResult r;
  r.violations = (d.mw > 500) + (d.logp > 5) + (d.hbd > 5) + (d.hba > 10);
  r.pass = r.violations <= 1;
  return r;
}

double QedLiteWindow::log_raw(double x) const {
  double out = 0;
  if (std::isfinite(lower))
    out += log_sigmoid((x - lower) / lower_width);
  if (std::isfinite(upper))
    out += log_sigmoid((upper - x) / upper_width);
  return out;
}

double QedLiteWindow::raw(double x) const { return std::exp(log_raw(x)); }

double QedLiteWindow::argmax() const {
  const bool lo = std::isfinite(lower), hi = std::isfinite(upper);
  if (!lo && !hi)
    return std::isfinite(min_value) ? min_value : 0.0;
  if (lo && !hi)
    return kInf;
  if (!lo)
    return std::isfinite(min_value) ? min_value : -kInf;
  // Product of two log-concave factors: unimodal, so golden section works.
  double a = lower - 60 * lower_width, b = upper + 60 * upper_width;
  if (std::isfinite(min_value))
    a = std::max(a, min_value);
  if (a >= b)
    return a;
  const double g = (std::sqrt(5.0) - 1) / 2;
  double c = b - g * (b - a), d = a + g * (b - a);
  double fc = log_raw(c), fd = log_raw(d);
  for (int it = 0; it < 200 && b - a > 1e-12 * (1 + std::abs(a)); ++it) {
    if (fc < fd) {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = log_raw(d);
    } else {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = log_raw(c);
    }
  }
  return (a + b) / 2;
}

double QedLiteWindow::peak() const {
  const double x = argmax();
  if (std::isinf(x))
    return 1.0;  // supremum approached at infinity
  return raw(x);
}

double QedLiteWindow::desirability(double x) const {
  return std::min(1.0, raw(x) / peak());
}

QedLiteParams QedLiteParams::parse(std::string_view text) {
  QedLiteParams p;
  p.windows.resize(std::size(kProperties));
  std::vector<bool> have(std::size(kProperties), false);
  int lineno = 0;
  for (std::string_view lv: split_lines(text)) {
    const std::string line(lv);
    ++lineno;
    if (line.empty() || line[0] == '#')
      continue;
    std::istringstream in(line);
    std::vector<std::string> f;
    for (std::string tok; in >> tok;)
      f.push_back(tok);
    if (f.empty())
      continue;
    if (f.size() != 6)
      throw ParseError("qed_lite table: expected 6 fields", lineno);
    std::size_t idx = std::size(kProperties);
    for (std::size_t i = 0; i < std::size(kProperties); ++i) {
      if (f[0] == kProperties[i])
        idx = i;
    }
    if (idx == std::size(kProperties))
      throw ParseError("qed_lite table: unknown property '" + f[0] + "'", lineno);
    if (have[idx])
      throw ParseError("qed_lite table: duplicate property '" + f[0] + "'", lineno);
    have[idx] = true;
    QedLiteWindow &w = p.windows[idx];
    w.property = f[0];
    w.lower = parse_bound(f[1], lineno);
    w.lower_width = parse_bound(f[2], lineno);
    w.upper = parse_bound(f[3], lineno);
    w.upper_width = parse_bound(f[4], lineno);
    w.min_value = parse_bound(f[5], lineno);
    if (!(w.lower_width > 0) || !(w.upper_width > 0) || std::isinf(w.lower_width)
        || std::isinf(w.upper_width))
      throw ParseError("qed_lite table: widths must be positive and finite", lineno);
    if (w.lower == kInf || w.upper == -kInf || w.min_value == kInf)
      throw ParseError("qed_lite table: bound has the wrong sign of infinity", lineno);
  }
  for (std::size_t i = 0; i < have.size(); ++i) {
    if (!have[i])
      throw ParseError(std::string("qed_lite table: missing property '") + kProperties[i]
                       + "'");
  }
  return p;
}

const QedLiteParams &QedLiteParams::shipped() {
  static const QedLiteParams p = parse(embedded_qed_lite_table());
  return p;
}

QedLiteInputs QedLiteInputs::from(const Descriptors &d) {
  return { d.mw, d.logp, static_cast<double>(d.hbd), static_cast<double>(d.hba),
           static_cast<double>(d.rot_bonds), static_cast<double>(d.aromatic_rings) };
}

double qed_lite(const QedLiteInputs &x, const QedLiteParams &p) {
  if (p.windows.size() != 6)
    throw Error("qed_lite: expected six windows");
  const double v[] = { x.mw, x.logp, x.hbd, x.hba, x.rot_bonds, x.aromatic_rings };
  double s = 0;
  for (std::size_t i = 0; i < 6; ++i) {
    const QedLiteWindow &w = p.windows[i];
    s += w.log_raw(v[i]) - std::log(w.peak());
  }
  return std::min(1.0, std::exp(s / 6));
}

double qed_lite(const Descriptors &d, const QedLiteParams &p) {
  return qed_lite(QedLiteInputs::from(d), p);
}

GenerationReport evaluate_generation(const std::vector<std::string> &samples,
                                     const std::set<std::string> &training,
                                     const QedLiteParams &p) {
  GenerationReport r;
  std::vector<SampleVerdict> verdicts = judge_samples(samples);
  r.validity = validity(verdicts);
  r.uniqueness = uniqueness(verdicts);
  r.novelty = novelty(verdicts, training);
  std::set<std::string> seen;
  double qsum = 0;
  int valid = 0, lip = 0;
  for (SampleVerdict &v: verdicts) {
    MoleculeDetail d;
    if (v.valid) {
      Molecule m = parse_smiles(v.smiles);
      d.descriptors = compute_descriptors(m);
      d.qed_lite = qed_lite(d.descriptors, p);
      d.lipinski = lipinski_violations(d.descriptors);
      d.duplicate = !seen.insert(v.canonical).second;
      d.novel = training.count(v.canonical) == 0;
      qsum += d.qed_lite;
      lip += d.lipinski.pass;
      ++valid;
    }
    d.verdict = std::move(v);
    r.details.push_back(std::move(d));
  }
  r.mean_qed_lite = valid > 0 ? qsum / valid : kNan;
  r.lipinski_rate = make_fraction(lip, valid);
  return r;
}

std::string generation_report_csv(const GenerationReport &r) {
  auto frac = [](const Fraction &f) {
    return (f.defined() ? format_fixed(f.fraction, 4) : std::string("undefined")) + " ("
           + std::to_string(f.numerator) + "/" + std::to_string(f.denominator) + ")";
  };
  std::string out = csv_row({ "validity (valid/total)", "uniqueness (unique/valid)",
                              "novelty (novel/unique valid)",
                              "mean_qed_lite (simplified QED; over valid)",
                              "lipinski_pass (pass/valid)" });
  out += csv_row({ frac(r.validity), frac(r.uniqueness), frac(r.novelty),
                   std::isnan(r.mean_qed_lite) ? std::string("undefined")
                                               : format_fixed(r.mean_qed_lite, 4),
                   frac(r.lipinski_rate) });
  out += "\n";
  out += csv_row({ "index", "smiles", "valid", "canonical", "duplicate", "novel", "mw", "logp",
                   "hbd", "hba", "rot_bonds", "aromatic_rings", "qed_lite",
                   "lipinski_violations", "reason" });
  int i = 0;
  for (const MoleculeDetail &d: r.details) {
    const Descriptors &x = d.descriptors;
    const bool ok = d.verdict.valid;
    auto num = [&](double v) { return ok ? format_fixed(v, 4) : std::string(); };
    auto cnt = [&](int v) { return ok ? std::to_string(v) : std::string(); };
    out += csv_row({ std::to_string(i++), d.verdict.smiles, ok ? "1" : "0", d.verdict.canonical,
                     ok ? (d.duplicate ? "1" : "0") : "", ok ? (d.novel ? "1" : "0") : "",
                     num(x.mw), num(x.logp), cnt(x.hbd), cnt(x.hba), cnt(x.rot_bonds),
                     cnt(x.aromatic_rings), num(d.qed_lite), cnt(d.lipinski.violations),
                     d.verdict.reason });
  }
  return out;
}

}  // namespace lcjt
