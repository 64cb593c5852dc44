//
// Project lcjtvae - Copyright 2026 The lcjtvae Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef LCJT_DATA_COMPOUNDS_H_
#define LCJT_DATA_COMPOUNDS_H_

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace lcjt {

enum class Library { kChembl, kVitas, kOther };

std::string_view to_string(Library lib);
// Case-insensitive "chembl" / "vitas"; anything else is kOther.
Library parse_library(std::string_view s);

struct CompoundRecord {
  std::string id;
  std::string smiles;
  Library library = Library::kOther;
  std::optional<double> mw;
  std::optional<double> logp;
  std::optional<double> logs;
  std::optional<double> logherg;
  std::optional<double> metab;
  std::optional<double> ro5_violations;
  std::map<std::string, double> dock;  // ligase id -> kcal/mol
  int line = 0;                        // 1-based source line
};

struct Rejection {
  int line = 0;
  std::string id;
  std::string reason;
};

struct IngestResult {
  std::vector<CompoundRecord> records;
  std::vector<Rejection> rejections;
  std::vector<std::string> ligases;  // from dock_* columns, header order
};

// Mandatory header columns, in the documented order.
const std::vector<std::string> &compound_columns();

// Reads the compound CSV (header row, then one compound per line; blank
// lines skipped). Columns are matched by name, so extra columns are ignored
// and dock_<ligase> columns are optional. Numeric fields may be blank.
// Malformed rows and repeated ids are logged and skipped. Throws SchemaError
// for an empty file or a header missing a mandatory column.
IngestResult ingest_compounds_csv(std::string_view text);

std::string compounds_to_csv(const std::vector<CompoundRecord> &records,
                             const std::vector<std::string> &ligases);

}  // namespace lcjt

#endif  // LCJT_DATA_COMPOUNDS_H_
