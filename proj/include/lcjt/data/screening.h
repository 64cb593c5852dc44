//
// Project lcjtvae - Copyright 2026 The lcjtvae Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef LCJT_DATA_SCREENING_H_
#define LCJT_DATA_SCREENING_H_

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "lcjt/data/compounds.h"

namespace lcjt {

// Closed windows except logherg, whose upper bound is strict.
struct FilterSpec {
  double mw_min = 130;
  double mw_max = 725;
  double logp_min = -2;
  double logp_max = 6.5;
  double logs_min = -6.5;
  double logs_max = 0.5;
  double logherg_max = -5;
  double metab_min = 1;
  double metab_max = 8;
  double ro5_max = 1;

  void validate() const;
  // Keys filter.mw_min, filter.mw_max, ..., filter.ro5_max.
  std::map<std::string, std::string> to_map() const;
  static FilterSpec from_map(const std::map<std::string, std::string> &kv);
};

struct FilterFailure {
  CompoundRecord record;
  std::vector<std::string> reasons;  // one per violated bound
};

struct FilterResult {
  std::vector<CompoundRecord> passed;
  std::vector<FilterFailure> failed;
};

// Absent fields are not checked.
std::vector<std::string> filter_violations(const CompoundRecord &r,
                                           const FilterSpec &spec);
FilterResult admet_filter(const std::vector<CompoundRecord> &records,
                          const FilterSpec &spec);

enum class AffinityClass { kHigh, kLow, kNone };

std::string_view to_string(AffinityClass c);
AffinityClass parse_affinity_class(std::string_view s);

// High below -5, None above -1, Low in between with both ends inclusive.
// Throws Error for a non-finite score.
AffinityClass classify_affinity(double score);

struct AffinityCountRow {
  std::string ligase;
  Library library = Library::kOther;
  int high = 0;
  int low = 0;
  int none = 0;
  int missing = 0;  // records of this library without a score

  int total() const { return high + low + none; }
};

struct AffinityCountTable {
  std::vector<AffinityCountRow> rows;  // ligase order as given, then library
  int grand_total = 0;                 // scored (record, ligase) pairs
  int grand_missing = 0;
};

// Rows exist for every (ligase, library) with at least one record.
AffinityCountTable affinity_count_table(const std::vector<CompoundRecord> &records,
                                        const std::vector<std::string> &ligases);
std::string affinity_table_csv(const AffinityCountTable &t);

inline constexpr std::string_view kAcyclicScaffold = "acyclic";

struct ScaffoldCount {
  std::string scaffold;  // canonical SMILES or kAcyclicScaffold
  int count = 0;
};

struct ScaffoldRanking {
  std::vector<ScaffoldCount> ranked;  // count desc, then scaffold asc
  std::vector<Rejection> unparsed;
};

// Over the records scored against `ligase` that fall in `cls`.
ScaffoldRanking scaffold_frequency(const std::vector<CompoundRecord> &records,
                                   const std::string &ligase, AffinityClass cls);

}  // namespace lcjt

#endif  // LCJT_DATA_SCREENING_H_
