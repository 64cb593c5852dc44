//
// Project lcjtvae - Copyright 2026 The lcjtvae Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "lcjt/app/ligase_file.h"

#include <cctype>
#include <set>

#include "lcjt/app/run_config.h"
#include "lcjt/data/csv.h"
#include "lcjt/error.h"

namespace lcjt {

std::vector<LigaseContext> parse_ligase_fasta(std::string_view text) {
  std::vector<LigaseContext> out;
  std::vector<int> header_line;
  std::set<std::string> ids;
  int lineno = 0;
  for (std::string_view raw: split_lines(text)) {
    ++lineno;
    const std::string line = trim(raw);
    if (line.empty() || line[0] == '#')
      continue;
    if (line[0] == '>') {
      std::string id = trim(std::string_view(line).substr(1));
      id = id.substr(0, id.find_first_of(" \t"));
      if (id.empty())
        throw ParseError("ligase file: empty id", lineno);
      if (!ids.insert(id).second)
        throw ParseError("ligase file: duplicate id '" + id + "'", lineno);
      out.push_back({ id, "", {} });
      header_line.push_back(lineno);
      continue;
    }
    if (out.empty())
      throw ParseError("ligase file: sequence before the first '>' header", lineno);
    for (char c: line) {
      if (std::isspace(static_cast<unsigned char>(c)))
        continue;
      const char u = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
      if (residue_index(u) < 0)
        throw ParseError("ligase file: residue '" + std::string(1, c) + "' outside the "
                         "20-letter alphabet", lineno);
      out.back().sequence += u;
    }
  }
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (out[i].sequence.empty())
      throw ParseError("ligase file: record '" + out[i].id + "' has no sequence",
                       header_line[i]);
  }
  return out;
}

std::map<std::string, std::vector<double>> parse_embedding_sidecar(std::string_view text) {
  std::map<std::string, std::vector<double>> out;
  int lineno = 0;
  for (std::string_view raw: split_lines(text)) {
    ++lineno;
    const std::string line = trim(raw);
    if (line.empty() || line[0] == '#')
      continue;
    const auto colon = line.find(':');
    if (colon == std::string::npos)
      throw ParseError("embedding file: expected 'id: values'", lineno);
    const std::string id = trim(std::string_view(line).substr(0, colon));
    if (id.empty() || out.count(id))
      throw ParseError("embedding file: empty or duplicate id", lineno);
    std::vector<double> v;
    std::string_view rest = std::string_view(line).substr(colon + 1);
    std::size_t start = 0;
    while (start <= rest.size()) {
      auto comma = rest.find(',', start);
      if (comma == std::string_view::npos)
        comma = rest.size();
      std::optional<double> x;
      try {
        x = parse_optional_number(rest.substr(start, comma - start));
      } catch (const ParseError &) {
      }
      if (!x)
        throw ParseError("embedding file: bad value for '" + id + "'", lineno);
      v.push_back(*x);
      start = comma + 1;
    }
    out[id] = std::move(v);
  }
  return out;
}

void attach_embeddings(std::vector<LigaseContext> &ligases,
                       const std::map<std::string, std::vector<double>> &vectors) {
  for (const auto &[id, v]: vectors) {
    bool found = false;
    for (LigaseContext &l: ligases) {
      if (l.id == id) {
        l.embedding = v;
        found = true;
      }
    }
    if (!found)
      throw Error("embedding file: no ligase sequence for '" + id + "'");
  }
}

}  // namespace lcjt
