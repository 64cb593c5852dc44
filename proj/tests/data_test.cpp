//
// Project lcjtvae - Copyright 2026 The lcjtvae Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <cmath>
#include <limits>
#include <random>

#include <gtest/gtest.h>

#include "lcjt/data/compounds.h"
#include "lcjt/data/csv.h"
#include "lcjt/data/pairs.h"
#include "lcjt/data/screening.h"
#include "lcjt/data/summary.h"
#include "lcjt/error.h"
#include "test_util.h"

namespace lcjt {
namespace {

const std::string kHeader =
    "id,smiles,library,MW,logPo_w,logS,logHERG,metab,ro5_violations,dock_CRBN,dock_VHL\n";

CompoundRecord rec(std::string id, std::string smiles, std::map<std::string, double> dock,
                   Library lib = Library::kChembl) {
  CompoundRecord r;
  r.id = std::move(id);
  r.smiles = std::move(smiles);
  r.library = lib;
  r.dock = std::move(dock);
  return r;
}

CompoundRecord profile(double mw, double logp, double logs, double herg, double metab,
                       double ro5) {
  CompoundRecord r = rec("x", "CCO", {});
  r.mw = mw;
  r.logp = logp;
  r.logs = logs;
  r.logherg = herg;
  r.metab = metab;
  r.ro5_violations = ro5;
  return r;
}

// Csv

TEST(Csv, QuotedFields) {
  auto f = split_csv_line(R"(a,"b,c","say ""hi""",)");
  ASSERT_EQ(f.size(), 4u);
  EXPECT_EQ(f[1], "b,c");
  EXPECT_EQ(f[2], "say \"hi\"");
  EXPECT_EQ(f[3], "");
  EXPECT_THROW(split_csv_line("a,\"b"), ParseError);
  EXPECT_EQ(csv_row({ "a", "b,c", "q\"" }), "a,\"b,c\",\"q\"\"\"\n");
}

TEST(Csv, Numbers) {
  EXPECT_EQ(parse_optional_number(" -4.59 "), -4.59);
  EXPECT_EQ(parse_optional_number("+1e2"), 100.0);
  EXPECT_FALSE(parse_optional_number("  ").has_value());
  EXPECT_THROW(parse_optional_number("12a"), ParseError);
  EXPECT_THROW(parse_optional_number("nan"), ParseError);
  EXPECT_EQ(format_number(0.1), "0.1");
  EXPECT_EQ(format_number(std::nan("")), "");
  EXPECT_EQ(format_fixed(-5.84, 2), "-5.84");
  EXPECT_EQ(format_fixed(-0.001, 2), "0.00");
}

// Ingest

TEST(Ingest, WellFormedRows) {
  std::string text = kHeader
                     + "A,CCO,ChEMBL,46.07,-0.3,0.1,-6,1,0,-6.2,\n"
                       "B,c1ccccc1,Vitas,78.1,2.1,-1.6,-5.5,2,0,,-3\n"
                       "C,CCN,other-lib,45.1,-0.1,0.5,-6,1,0,,\n";
  IngestResult r = ingest_compounds_csv(text);
  ASSERT_EQ(r.records.size(), 3u);
  EXPECT_TRUE(r.rejections.empty());
  EXPECT_EQ(r.ligases, (std::vector<std::string> { "CRBN", "VHL" }));
  EXPECT_EQ(r.records[0].dock.at("CRBN"), -6.2);
  EXPECT_EQ(r.records[0].dock.count("VHL"), 0u);
  EXPECT_EQ(r.records[1].library, Library::kVitas);
  EXPECT_EQ(r.records[2].library, Library::kOther);
  EXPECT_EQ(r.records[2].line, 4);
  EXPECT_EQ(r.records[1].mw, 78.1);
}

TEST(Ingest, NonNumericRejectedWithLine) {
  std::string text = kHeader + "A,CCO,ChEMBL,46.07,-0.3,0.1,-6,1,0,,\n"
                               "B,CCC,ChEMBL,heavy,1,1,-6,1,0,,\n";
  IngestResult r = ingest_compounds_csv(text);
  ASSERT_EQ(r.records.size(), 1u);
  ASSERT_EQ(r.rejections.size(), 1u);
  EXPECT_EQ(r.rejections[0].line, 3);
  EXPECT_EQ(r.rejections[0].id, "B");
  EXPECT_NE(r.rejections[0].reason.find("MW"), std::string::npos);
}

TEST(Ingest, DuplicateIdKeepsFirst) {
  std::string text = kHeader + "A,CCO,ChEMBL,46,0,0,-6,1,0,,\n"
                               "A,CCC,ChEMBL,44,0,0,-6,1,0,,\n";
  IngestResult r = ingest_compounds_csv(text);
  ASSERT_EQ(r.records.size(), 1u);
  EXPECT_EQ(r.records[0].smiles, "CCO");
  ASSERT_EQ(r.rejections.size(), 1u);
  EXPECT_EQ(r.rejections[0].line, 3);
  EXPECT_EQ(r.rejections[0].reason, "duplicate id");
}

TEST(Ingest, MalformedRowsAreLogged) {
  std::string text = kHeader + "A,CCO,ChEMBL,46,0,0,-6,1,0\n"  // short
                               ",CCO,ChEMBL,46,0,0,-6,1,0,,\n"
                               "B,,ChEMBL,46,0,0,-6,1,0,,\n"
                               "\n"
                               "C,CCO,ChEMBL,46,0,0,-6,1,0,,x\n";
  IngestResult r = ingest_compounds_csv(text);
  EXPECT_TRUE(r.records.empty());
  ASSERT_EQ(r.rejections.size(), 4u);
  EXPECT_EQ(r.rejections[0].line, 2);
  EXPECT_EQ(r.rejections[3].line, 6);
  EXPECT_NE(r.rejections[3].reason.find("dock_VHL"), std::string::npos);
}

TEST(Ingest, SchemaErrors) {
  EXPECT_THROW(ingest_compounds_csv(""), SchemaError);
  EXPECT_THROW(ingest_compounds_csv("\n\n"), SchemaError);
  try {
    ingest_compounds_csv("id,smiles,library,MW\nA,CCO,ChEMBL,1\n");
    FAIL();
  } catch (const SchemaError &e) {
    EXPECT_EQ(e.position(), 1);
    EXPECT_NE(std::string(e.what()).find("logPo_w"), std::string::npos);
  }
}

TEST(Ingest, RoundTrip) {
  IngestResult a = ingest_compounds_csv(test::read_file(test::fixture("filter_12.csv")));
  IngestResult b = ingest_compounds_csv(compounds_to_csv(a.records, a.ligases));
  ASSERT_EQ(a.records.size(), b.records.size());
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    EXPECT_EQ(a.records[i].id, b.records[i].id);
    EXPECT_EQ(a.records[i].mw, b.records[i].mw);
    EXPECT_EQ(a.records[i].dock, b.records[i].dock);
  }
}

// Filter

TEST(Filter, MeanLibraryProfilePasses) {
  EXPECT_TRUE(filter_violations(profile(366.68, 3.39, -4.59, -6, 4, 0), {}).empty());
}

TEST(Filter, SingleBoundFailures) {
  auto mw = filter_violations(profile(129, 3.39, -4.59, -6, 4, 0), {});
  ASSERT_EQ(mw.size(), 1u);
  EXPECT_EQ(mw[0], "MW 129 outside [130, 725]");
  auto herg = filter_violations(profile(366.68, 3.39, -4.59, -4.5, 4, 0), {});
  ASSERT_EQ(herg.size(), 1u);
  EXPECT_EQ(herg[0].rfind("logHERG", 0), 0u);
}

TEST(Filter, AbsentFieldsAreNotChecked) {
  CompoundRecord r = rec("x", "CCO", {});
  r.mw = 5000;
  EXPECT_EQ(filter_violations(r, {}).size(), 1u);
}

TEST(Filter, TwelveRowFixture) {
  IngestResult in = ingest_compounds_csv(test::read_file(test::fixture("filter_12.csv")));
  ASSERT_EQ(in.records.size(), 12u);
  FilterResult f = admet_filter(in.records, {});
  EXPECT_EQ(f.passed.size() + f.failed.size(), 12u);
  std::vector<std::string> passed;
  for (const CompoundRecord &r: f.passed)
    passed.push_back(r.id);
  EXPECT_EQ(passed, (std::vector<std::string> { "F01", "F04" }));
  // Expected first violated field per failing row, in input order.
  const std::vector<std::pair<std::string, std::string>> expected = {
    { "F02", "MW" },      { "F03", "MW" },      { "F05", "logPo_w" }, { "F06", "logPo_w" },
    { "F07", "logS" },    { "F08", "logS" },    { "F09", "logHERG" }, { "F10", "logHERG" },
    { "F11", "metab" },   { "F12", "metab" },
  };
  ASSERT_EQ(f.failed.size(), expected.size());
  for (std::size_t i = 0; i < expected.size(); ++i) {
    EXPECT_EQ(f.failed[i].record.id, expected[i].first);
    EXPECT_EQ(f.failed[i].reasons[0].rfind(expected[i].second, 0), 0u)
        << f.failed[i].reasons[0];
  }
  // F12 breaks both the metab window and the Rule-of-Five bound.
  EXPECT_EQ(f.failed.back().reasons.size(), 2u);
}

TEST(Filter, Idempotent) {
  IngestResult in = ingest_compounds_csv(test::read_file(test::fixture("filter_12.csv")));
  FilterResult once = admet_filter(in.records, {});
  FilterResult twice = admet_filter(once.passed, {});
  EXPECT_EQ(twice.passed.size(), once.passed.size());
  EXPECT_TRUE(twice.failed.empty());
}

TEST(Filter, SpecOverridesAndValidation) {
  FilterSpec s = FilterSpec::from_map({ { "filter.mw_min", "100" } });
  EXPECT_EQ(s.mw_min, 100);
  EXPECT_EQ(FilterSpec::from_map(s.to_map()).mw_min, 100);
  EXPECT_THROW(FilterSpec::from_map({ { "filter.mw_min", "800" } }), Error);
  EXPECT_THROW(FilterSpec::from_map({ { "filter.logp_max", "x" } }), Error);
}

// Affinity

TEST(Affinity, BoundarySet) {
  EXPECT_EQ(classify_affinity(-6.2), AffinityClass::kHigh);
  EXPECT_EQ(classify_affinity(-5.0), AffinityClass::kLow);
  EXPECT_EQ(classify_affinity(-3.0), AffinityClass::kLow);
  EXPECT_EQ(classify_affinity(-1.0), AffinityClass::kLow);
  EXPECT_EQ(classify_affinity(-0.5), AffinityClass::kNone);
  EXPECT_EQ(classify_affinity(0.5), AffinityClass::kNone);
  EXPECT_THROW(classify_affinity(std::numeric_limits<double>::infinity()), Error);
  EXPECT_THROW(classify_affinity(std::nan("")), Error);
}

TEST(Affinity, ClassesPartitionTheLine) {
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> u(-20, 20);
  for (int i = 0; i < 10000; ++i) {
    const double s = u(gen);
    const AffinityClass c = classify_affinity(s);
    const int hits = (s < -5) + (s >= -5 && s <= -1) + (s > -1);
    ASSERT_EQ(hits, 1);
    EXPECT_EQ(c == AffinityClass::kHigh, s < -5);
    EXPECT_EQ(c == AffinityClass::kNone, s > -1);
  }
  EXPECT_EQ(classify_affinity(std::nextafter(-5.0, -10.0)), AffinityClass::kHigh);
  EXPECT_EQ(classify_affinity(std::nextafter(-1.0, 0.0)), AffinityClass::kNone);
}

TEST(AffinityTable, TwoRecords) {
  std::vector<CompoundRecord> rs = { rec("a", "CCO", { { "VHL", -6 } }),
                                     rec("b", "CCC", { { "VHL", -0.5 } }) };
  AffinityCountTable t = affinity_count_table(rs, { "VHL" });
  ASSERT_EQ(t.rows.size(), 1u);
  EXPECT_EQ(t.rows[0].high, 1);
  EXPECT_EQ(t.rows[0].low, 0);
  EXPECT_EQ(t.rows[0].none, 1);
  EXPECT_EQ(t.grand_total, 2);
}

TEST(AffinityTable, MissingScoresSeparate) {
  std::vector<CompoundRecord> rs = {
    rec("a", "CCO", { { "VHL", -6 }, { "CRBN", -2 } }),
    rec("b", "CCC", { { "VHL", -3 } }),
    rec("c", "CCN", { { "CRBN", -7 } }, Library::kVitas),
  };
  AffinityCountTable t = affinity_count_table(rs, { "CRBN", "VHL" });
  ASSERT_EQ(t.rows.size(), 4u);
  const AffinityCountRow &crbn_chembl = t.rows[0];
  EXPECT_EQ(crbn_chembl.ligase, "CRBN");
  EXPECT_EQ(crbn_chembl.library, Library::kChembl);
  EXPECT_EQ(crbn_chembl.low, 1);
  EXPECT_EQ(crbn_chembl.missing, 1);
  EXPECT_EQ(crbn_chembl.total(), 1);
  EXPECT_EQ(t.rows[3].missing, 1);  // VHL / Vitas
  int sum = 0;
  for (const AffinityCountRow &r: t.rows)
    sum += r.high + r.low + r.none;
  EXPECT_EQ(t.grand_total, sum);
  EXPECT_EQ(t.grand_total, 4);
  EXPECT_EQ(t.grand_missing, 2);
  EXPECT_EQ(affinity_table_csv(t), affinity_table_csv(affinity_count_table(rs, { "CRBN", "VHL" })));
  EXPECT_EQ(affinity_table_csv(t).substr(0, 68),
            "Ligase,Library,High_Affinity,Low_Affinity,No_Affinity,Missing,Total\n");
}

// Summary

TEST(Summary, SmallExamples) {
  PropertySummary s = summarize("p", { 3, 1, 2 });
  EXPECT_EQ(s.count, 3);
  EXPECT_EQ(s.mean, 2);
  EXPECT_EQ(s.std, 1);
  EXPECT_EQ(s.median, 2);
  PropertySummary c = summarize("p", { 7, 7, 7, 7 });
  EXPECT_EQ(c.std, 0);
  EXPECT_EQ(c.min, c.max);
  // Positions 0.25*4 = 1 and 0.75*4 = 3 land on order statistics 2 and 4.
  PropertySummary q = summarize("p", { 100, 4, 3, 2, 1 });
  EXPECT_EQ(q.q25, 2);
  EXPECT_EQ(q.q75, 4);
  // Four values: 0.25*3 = 0.75 between 10 and 20.
  EXPECT_DOUBLE_EQ(summarize("p", { 10, 20, 30, 40 }).q25, 17.5);
  EXPECT_TRUE(std::isnan(summarize("p", { 5 }).std));
  EXPECT_EQ(summarize("p", {}).count, 0);
}

TEST(Summary, QuantilesMonotone) {
  std::mt19937_64 gen(8);
  std::normal_distribution<double> nd(0, 10);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> v(1 + trial);
    for (double &x: v)
      x = nd(gen);
    PropertySummary s = summarize("p", v);
    EXPECT_LE(s.min, s.q25);
    EXPECT_LE(s.q25, s.median);
    EXPECT_LE(s.median, s.q75);
    EXPECT_LE(s.q75, s.max);
  }
}

TEST(Summary, PropertiesCsvHasEightStatistics) {
  IngestResult in = ingest_compounds_csv(test::read_file(test::fixture("filter_12.csv")));
  std::vector<PropertySummary> rows = summarize_properties(in.records);
  ASSERT_EQ(rows.size(), 6u);
  EXPECT_EQ(rows[0].property, "MW");
  EXPECT_EQ(rows[0].count, 12);
  std::string csv = summary_csv(rows);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "Property,Count,Mean,Std Dev,Min,25%,50%,75%,Max");
  for (std::string_view line: split_lines(csv))
    EXPECT_EQ(split_csv_line(line).size(), 9u);
  EXPECT_THROW(summarize_properties({}), Error);
}

// Scaffolds

TEST(Scaffold, Frequency) {
  std::vector<CompoundRecord> rs = {
    rec("a", "Cc1ccccc1", { { "VHL", -6 } }),
    rec("b", "CCc1ccccc1", { { "VHL", -7 } }),
    rec("c", "CCO", { { "VHL", -8 } }),
    rec("d", "C1CCCCC1", { { "VHL", -3 } }),
    rec("e", "c1ccccc1C1CC1", { { "CRBN", -9 } }),
  };
  ScaffoldRanking r = scaffold_frequency(rs, "VHL", AffinityClass::kHigh);
  ASSERT_EQ(r.ranked.size(), 2u);
  EXPECT_EQ(r.ranked[0].scaffold, "c1ccccc1");
  EXPECT_EQ(r.ranked[0].count, 2);
  EXPECT_EQ(r.ranked[1].scaffold, kAcyclicScaffold);
  EXPECT_EQ(r.ranked[1].count, 1);
  EXPECT_TRUE(scaffold_frequency(rs, "MDM2", AffinityClass::kHigh).ranked.empty());
}

TEST(Scaffold, TiesRankBySmiles) {
  std::vector<CompoundRecord> rs = {
    rec("a", "C1CCCCC1C", { { "VHL", -6 } }),
    rec("b", "c1ccccc1C", { { "VHL", -6 } }),
    rec("c", "C(", { { "VHL", -6 } }),
  };
  ScaffoldRanking r = scaffold_frequency(rs, "VHL", AffinityClass::kHigh);
  ASSERT_EQ(r.ranked.size(), 2u);
  EXPECT_LT(r.ranked[0].scaffold, r.ranked[1].scaffold);
  ASSERT_EQ(r.unparsed.size(), 1u);
  EXPECT_EQ(r.unparsed[0].id, "c");
}

// Pairs

TEST(Pairs, HighOnlyByDefault) {
  std::vector<CompoundRecord> rs = {
    rec("a", "CCO", { { "VHL", -6 } }),
    rec("b", "c1ccccc1O", { { "VHL", -7 }, { "CRBN", -0.2 } }),
    rec("c", "CCN", { { "VHL", -5.5 } }),
    rec("d", "CCC", { { "VHL", -2 } }),
  };
  std::vector<LigaseContext> ligs = { { "CRBN", "ACD", {} }, { "VHL", "ACE", {} } };
  PairingResult p = build_training_pairs(rs, ligs);
  ASSERT_EQ(p.pairs.size(), 3u);
  for (const TrainingPair &t: p.pairs) {
    EXPECT_EQ(t.ligase.id, "VHL");
    EXPECT_EQ(t.affinity, AffinityClass::kHigh);
  }
  PairingPolicy low;
  low.include_low = true;
  PairingResult q = build_training_pairs(rs, ligs, low);
  ASSERT_EQ(q.pairs.size(), 4u);
  EXPECT_EQ(q.pairs[3].compound.id, "d");
  EXPECT_EQ(q.pairs[3].affinity, AffinityClass::kLow);
}

TEST(Pairs, ExclusionsAndUnknownLigase) {
  std::vector<CompoundRecord> rs = {
    rec("a", "CCO.Cl", { { "VHL", -6 } }),
    rec("b", "C1CC", { { "VHL", -6 } }),
    rec("c", "C", { { "VHL", -6 } }),
    rec("d", "CCO", { { "VHL", -6 } }),
  };
  std::vector<LigaseContext> ligs = { { "VHL", "ACE", {} } };
  PairingResult p = build_training_pairs(rs, ligs);
  ASSERT_EQ(p.pairs.size(), 1u);
  ASSERT_EQ(p.excluded.size(), 3u);
  EXPECT_EQ(p.excluded[0].id, "a");
  EXPECT_NE(p.excluded[0].reason.find("multi-fragment"), std::string::npos);
  PairingPolicy bad;
  bad.ligases = { "MDM2" };
  EXPECT_THROW(build_training_pairs(rs, ligs, bad), Error);
}

}  // namespace
}  // namespace lcjt
