//
// Project lcjtvae - Copyright 2026 The lcjtvae Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "lcjt/data/summary.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lcjt/data/csv.h"
#include "lcjt/error.h"

namespace lcjt {

double quantile_sorted(std::span<const double> sorted, double q) {
  if (sorted.empty())
    return std::numeric_limits<double>::quiet_NaN();
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  if (lo + 1 >= sorted.size())
    return sorted.back();
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

PropertySummary summarize(std::string property, std::vector<double> values) {
  constexpr double nan = std::numeric_limits<double>::quiet_NaN();
  PropertySummary s;
  s.property = std::move(property);
  s.count = static_cast<int>(values.size());
  if (values.empty()) {
    s.mean = s.std = s.min = s.q25 = s.median = s.q75 = s.max = nan;
    return s;
  }
  std::sort(values.begin(), values.end());
  double sum = 0;
  for (double v: values)
    sum += v;
  s.mean = sum / static_cast<double>(values.size());
  if (values.size() < 2) {
    s.std = nan;
  } else {
    double ss = 0;
    for (double v: values)
      ss += (v - s.mean) * (v - s.mean);
    s.std = std::sqrt(ss / static_cast<double>(values.size() - 1));
  }
  s.min = values.front();
  s.max = values.back();
  s.q25 = quantile_sorted(values, 0.25);
  s.median = quantile_sorted(values, 0.5);
  s.q75 = quantile_sorted(values, 0.75);
  return s;
}

std::vector<PropertySummary> summarize_properties(
    const std::vector<CompoundRecord> &records) {
  if (records.empty())
    throw Error("summarize_properties: no records");
  using Field = std::optional<double> CompoundRecord::*;
  const std::pair<const char *, Field> props[] = {
    { "MW", &CompoundRecord::mw },
    { "logPo/w", &CompoundRecord::logp },
    { "logS", &CompoundRecord::logs },
    { "logHERG", &CompoundRecord::logherg },
    { "#metab", &CompoundRecord::metab },
    { "Rule-Of-Five", &CompoundRecord::ro5_violations },
  };
  std::vector<PropertySummary> out;
  for (const auto &[name, field]: props) {
    std::vector<double> v;
    for (const CompoundRecord &r: records) {
      if (r.*field)
        v.push_back(*(r.*field));
    }
    out.push_back(summarize(name, std::move(v)));
  }
  return out;
}

std::string summary_csv(const std::vector<PropertySummary> &rows) {
  std::string out = csv_row({ "Property", "Count", "Mean", "Std Dev", "Min", "25%", "50%",
                              "75%", "Max" });
  for (const PropertySummary &s: rows) {
    out += csv_row({ s.property, std::to_string(s.count), format_number(s.mean),
                     format_number(s.std), format_number(s.min), format_number(s.q25),
                     format_number(s.median), format_number(s.q75),
                     format_number(s.max) });
  }
  return out;
}

}  // namespace lcjt
