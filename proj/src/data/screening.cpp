//
// Project lcjtvae - Copyright 2026 The lcjtvae Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "lcjt/data/screening.h"

#include <algorithm>
#include <cmath>

#include "lcjt/chem/scaffold.h"
#include "lcjt/chem/smiles.h"
#include "lcjt/data/csv.h"
#include "lcjt/error.h"

namespace lcjt {
namespace {
struct SpecField {
  const char *key;
  double FilterSpec::*field;
};

constexpr SpecField kSpecFields[] = {
  { "filter.mw_min", &FilterSpec::mw_min },
  { "filter.mw_max", &FilterSpec::mw_max },
  { "filter.logp_min", &FilterSpec::logp_min },
  { "filter.logp_max", &FilterSpec::logp_max },
  { "filter.logs_min", &FilterSpec::logs_min },
  { "filter.logs_max", &FilterSpec::logs_max },
  { "filter.logherg_max", &FilterSpec::logherg_max },
  { "filter.metab_min", &FilterSpec::metab_min },
  { "filter.metab_max", &FilterSpec::metab_max },
  { "filter.ro5_max", &FilterSpec::ro5_max },
};

void window(std::vector<std::string> &out, const char *name,
            const std::optional<double> &v, double lo, double hi) {
  if (v && (*v < lo || *v > hi))
    out.push_back(std::string(name) + " " + format_number(*v) + " outside ["
                  + format_number(lo) + ", " + format_number(hi) + "]");
}
}  // namespace

void FilterSpec::validate() const {
  const std::pair<double, double> iv[] = {
    { mw_min, mw_max }, { logp_min, logp_max }, { logs_min, logs_max }, { metab_min, metab_max }
  };
  for (const SpecField &f: kSpecFields) {
    if (!std::isfinite(this->*f.field))
      throw Error(std::string("config: ") + f.key + " must be finite");
  }
  for (auto [lo, hi]: iv) {
    if (lo > hi)
      throw Error("config: filter lower bound exceeds upper bound");
  }
}

std::map<std::string, std::string> FilterSpec::to_map() const {
  std::map<std::string, std::string> out;
  for (const SpecField &f: kSpecFields)
    out[f.key] = format_number(this->*f.field);
  return out;
}

FilterSpec FilterSpec::from_map(const std::map<std::string, std::string> &kv) {
  FilterSpec s;
  for (const SpecField &f: kSpecFields) {
    auto it = kv.find(f.key);
    if (it == kv.end())
      continue;
    std::optional<double> v;
    try {
      v = parse_optional_number(it->second);
    } catch (const ParseError &) {
    }
    if (!v)
      throw Error(std::string("config: ") + f.key + " expects a number, got '"
                  + it->second + "'");
    s.*f.field = *v;
  }
  s.validate();
  return s;
}

std::vector<std::string> filter_violations(const CompoundRecord &r,
                                           const FilterSpec &spec) {
  std::vector<std::string> out;
  window(out, "MW", r.mw, spec.mw_min, spec.mw_max);
  window(out, "logPo_w", r.logp, spec.logp_min, spec.logp_max);
  window(out, "logS", r.logs, spec.logs_min, spec.logs_max);
  if (r.logherg && !(*r.logherg < spec.logherg_max))
    out.push_back("logHERG " + format_number(*r.logherg) + " not below "
                  + format_number(spec.logherg_max));
  window(out, "metab", r.metab, spec.metab_min, spec.metab_max);
  if (r.ro5_violations && *r.ro5_violations > spec.ro5_max)
    out.push_back("ro5_violations " + format_number(*r.ro5_violations) + " above "
                  + format_number(spec.ro5_max));
  return out;
}

FilterResult admet_filter(const std::vector<CompoundRecord> &records,
                          const FilterSpec &spec) {
  FilterResult out;
  for (const CompoundRecord &r: records) {
    std::vector<std::string> why = filter_violations(r, spec);
    if (why.empty())
      out.passed.push_back(r);
    else
      out.failed.push_back({ r, std::move(why) });
  }
  return out;
}

std::string_view to_string(AffinityClass c) {
  switch (c) {
  case AffinityClass::kHigh:
    return "High";
  case AffinityClass::kLow:
    return "Low";
  default:
    return "None";
  }
}

AffinityClass parse_affinity_class(std::string_view s) {
  if (s == "High")
    return AffinityClass::kHigh;
  if (s == "Low")
    return AffinityClass::kLow;
  if (s == "None")
    return AffinityClass::kNone;
  throw Error("unknown affinity class '" + std::string(s) + "'");
}

AffinityClass classify_affinity(double score) {
  if (!std::isfinite(score))
    throw Error("classify_affinity: non-finite score");
  if (score < -5.0)
    return AffinityClass::kHigh;
  if (score <= -1.0)
    return AffinityClass::kLow;
  return AffinityClass::kNone;
}

AffinityCountTable affinity_count_table(const std::vector<CompoundRecord> &records,
                                        const std::vector<std::string> &ligases) {
  const Library libs[] = { Library::kChembl, Library::kVitas, Library::kOther };
  AffinityCountTable t;
  for (const std::string &lig: ligases) {
    for (Library lib: libs) {
      AffinityCountRow row { lig, lib };
      bool any = false;
      for (const CompoundRecord &r: records) {
        if (r.library != lib)
          continue;
        any = true;
        auto it = r.dock.find(lig);
        if (it == r.dock.end()) {
          ++row.missing;
          continue;
        }
        switch (classify_affinity(it->second)) {
        case AffinityClass::kHigh:
          ++row.high;
          break;
        case AffinityClass::kLow:
          ++row.low;
          break;
        case AffinityClass::kNone:
          ++row.none;
          break;
        }
      }
      if (!any)
        continue;
      t.grand_total += row.total();
      t.grand_missing += row.missing;
      t.rows.push_back(row);
    }
  }
  return t;
}

std::string affinity_table_csv(const AffinityCountTable &t) {
  std::string out = csv_row({ "Ligase", "Library", "High_Affinity", "Low_Affinity",
                              "No_Affinity", "Missing", "Total" });
  for (const AffinityCountRow &r: t.rows) {
    out += csv_row({ r.ligase, std::string(to_string(r.library)), std::to_string(r.high),
                     std::to_string(r.low), std::to_string(r.none),
                     std::to_string(r.missing), std::to_string(r.total()) });
  }
  out += csv_row({ "Total", "", "", "", "", std::to_string(t.grand_missing),
                   std::to_string(t.grand_total) });
  return out;
}

ScaffoldRanking scaffold_frequency(const std::vector<CompoundRecord> &records,
                                   const std::string &ligase, AffinityClass cls) {
  ScaffoldRanking out;
  std::map<std::string, int> counts;
  for (const CompoundRecord &r: records) {
    auto it = r.dock.find(ligase);
    if (it == r.dock.end() || classify_affinity(it->second) != cls)
      continue;
    std::string key;
    try {
      Molecule scaffold = murcko_scaffold(parse_smiles(r.smiles));
      key = scaffold.num_atoms() == 0 ? std::string(kAcyclicScaffold)
                                      : write_canonical_smiles(scaffold);
    } catch (const Error &e) {
      out.unparsed.push_back({ r.line, r.id, e.what() });
      continue;
    }
    ++counts[key];
  }
  for (const auto &[k, n]: counts)
    out.ranked.push_back({ k, n });
  std::stable_sort(out.ranked.begin(), out.ranked.end(),
                   [](const ScaffoldCount &a, const ScaffoldCount &b) {
                     return a.count > b.count;
                   });
  return out;
}

}  // namespace lcjt
