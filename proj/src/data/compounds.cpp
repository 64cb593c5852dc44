//
// Project lcjtvae - Copyright 2026 The lcjtvae Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "lcjt/data/compounds.h"

#include <algorithm>
#include <set>

#include "lcjt/data/csv.h"
#include "lcjt/error.h"

namespace lcjt {
namespace {
constexpr std::string_view kDockPrefix = "dock_";

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::string trimmed(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t'))
    s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t'))
    s.remove_suffix(1);
  return std::string(s);
}
}  // namespace

std::string_view to_string(Library lib) {
  switch (lib) {
  case Library::kChembl:
    return "ChEMBL";
  case Library::kVitas:
    return "Vitas";
  default:
    return "other";
  }
}

Library parse_library(std::string_view s) {
  const std::string l = lower(s);
  if (l == "chembl")
    return Library::kChembl;
  if (l == "vitas")
    return Library::kVitas;
  return Library::kOther;
}

const std::vector<std::string> &compound_columns() {
  static const std::vector<std::string> cols = {
    "id", "smiles", "library", "MW", "logPo_w", "logS", "logHERG", "metab", "ro5_violations"
  };
  return cols;
}

IngestResult ingest_compounds_csv(std::string_view text) {
  std::vector<std::string_view> lines = split_lines(text);
  std::size_t header_idx = 0;
  while (header_idx < lines.size() && trimmed(lines[header_idx]).empty())
    ++header_idx;
  if (header_idx == lines.size())
    throw SchemaError("compound csv: empty file");

  std::vector<std::string> header;
  try {
    header = split_csv_line(lines[header_idx]);
  } catch (const ParseError &e) {
    throw SchemaError(std::string("compound csv header: ") + e.what(),
                      static_cast<int>(header_idx) + 1);
  }
  for (std::string &h: header)
    h = trimmed(h);
  auto column = [&](const std::string &name) -> int {
    auto it = std::find(header.begin(), header.end(), name);
    return it == header.end() ? -1 : static_cast<int>(it - header.begin());
  };
  std::vector<int> idx;
  for (const std::string &name: compound_columns()) {
    const int c = column(name);
    if (c < 0)
      throw SchemaError("compound csv: missing column '" + name + "'",
                        static_cast<int>(header_idx) + 1);
    idx.push_back(c);
  }

  IngestResult out;
  std::vector<std::pair<std::string, int>> dock_cols;
  for (std::size_t c = 0; c < header.size(); ++c) {
    if (header[c].starts_with(kDockPrefix) && header[c].size() > kDockPrefix.size()) {
      std::string lig = header[c].substr(kDockPrefix.size());
      if (std::find(out.ligases.begin(), out.ligases.end(), lig) != out.ligases.end())
        throw SchemaError("compound csv: duplicate column '" + header[c] + "'",
                          static_cast<int>(header_idx) + 1);
      out.ligases.push_back(lig);
      dock_cols.emplace_back(lig, static_cast<int>(c));
    }
  }

  std::set<std::string> seen;
  for (std::size_t li = header_idx + 1; li < lines.size(); ++li) {
    const int line_no = static_cast<int>(li) + 1;
    if (trimmed(lines[li]).empty())
      continue;
    std::vector<std::string> f;
    try {
      f = split_csv_line(lines[li]);
    } catch (const ParseError &e) {
      out.rejections.push_back({ line_no, "", e.what() });
      continue;
    }
    if (f.size() != header.size()) {
      out.rejections.push_back({ line_no, f.empty() ? "" : trimmed(f[0]),
                                 "expected " + std::to_string(header.size())
                                     + " fields, found " + std::to_string(f.size()) });
      continue;
    }
    CompoundRecord r;
    r.line = line_no;
    r.id = trimmed(f[idx[0]]);
    r.smiles = trimmed(f[idx[1]]);
    r.library = parse_library(trimmed(f[idx[2]]));
    if (r.id.empty()) {
      out.rejections.push_back({ line_no, "", "empty id" });
      continue;
    }
    if (r.smiles.empty()) {
      out.rejections.push_back({ line_no, r.id, "empty smiles" });
      continue;
    }
    std::optional<double> *fields[] = { &r.mw, &r.logp, &r.logs, &r.logherg,
                                        &r.metab, &r.ro5_violations };
    std::string error;
    for (int k = 0; k < 6 && error.empty(); ++k) {
      try {
        *fields[k] = parse_optional_number(f[idx[3 + k]]);
      } catch (const ParseError &e) {
        error = compound_columns()[3 + k] + ": " + e.what();
      }
    }
    for (const auto &[lig, c]: dock_cols) {
      if (!error.empty())
        break;
      try {
        if (auto v = parse_optional_number(f[c]))
          r.dock.emplace(lig, *v);
      } catch (const ParseError &e) {
        error = "dock_" + lig + ": " + e.what();
      }
    }
    if (!error.empty()) {
      out.rejections.push_back({ line_no, r.id, error });
      continue;
    }
    if (!seen.insert(r.id).second) {
      out.rejections.push_back({ line_no, r.id, "duplicate id" });
      continue;
    }
    out.records.push_back(std::move(r));
  }
  return out;
}

std::string compounds_to_csv(const std::vector<CompoundRecord> &records,
                             const std::vector<std::string> &ligases) {
  std::vector<std::string> head = compound_columns();
  for (const std::string &l: ligases)
    head.push_back(std::string(kDockPrefix) + l);
  std::string out = csv_row(head);
  auto opt = [](const std::optional<double> &v) {
    return v ? format_number(*v) : std::string();
  };
  for (const CompoundRecord &r: records) {
    std::vector<std::string> row = { r.id,
                                     r.smiles,
                                     std::string(to_string(r.library)),
                                     opt(r.mw),
                                     opt(r.logp),
                                     opt(r.logs),
                                     opt(r.logherg),
                                     opt(r.metab),
                                     opt(r.ro5_violations) };
    for (const std::string &l: ligases) {
      auto it = r.dock.find(l);
      row.push_back(it == r.dock.end() ? "" : format_number(it->second));
    }
    out += csv_row(row);
  }
  return out;
}

}  // namespace lcjt
