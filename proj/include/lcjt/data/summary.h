//
// Project lcjtvae - Copyright 2026 The lcjtvae Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef LCJT_DATA_SUMMARY_H_
#define LCJT_DATA_SUMMARY_H_

#include <span>
#include <string>
#include <vector>

#include "lcjt/data/compounds.h"

namespace lcjt {

struct PropertySummary {
  std::string property;
  int count = 0;
  double mean = 0;
  double std = 0;  // sample (n - 1); NaN when count < 2
  double min = 0;
  double q25 = 0;
  double median = 0;
  double q75 = 0;
  double max = 0;
};

// Linear interpolation between order statistics at position q * (n - 1).
double quantile_sorted(std::span<const double> sorted, double q);

// Statistics of one column; an empty column yields count 0 and NaN values.
PropertySummary summarize(std::string property, std::vector<double> values);

// One row per property (MW, logPo/w, logS, logHERG, #metab, Rule-Of-Five)
// over the records where it is present. Throws Error on empty input.
std::vector<PropertySummary> summarize_properties(
    const std::vector<CompoundRecord> &records);

// Property,Count,Mean,Std Dev,Min,25%,50%,75%,Max
std::string summary_csv(const std::vector<PropertySummary> &rows);

}  // namespace lcjt

#endif  // LCJT_DATA_SUMMARY_H_
