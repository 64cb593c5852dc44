//
// Project lcjtvae - Copyright 2026 The lcjtvae Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "lcjt/app/run_config.h"

#include <charconv>
#include <fstream>
#include <sstream>

#include "lcjt/data/csv.h"
#include "lcjt/error.h"

namespace lcjt {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos)
    return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

RunConfig RunConfig::parse(std::string_view text) {
  RunConfig c;
  int lineno = 0;
  for (std::string_view raw: split_lines(text)) {
    ++lineno;
    std::string_view line = raw;
    if (auto hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);
    if (trim(line).empty())
      continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ParseError("config: expected 'key = value'", lineno);
    std::string key = trim(line.substr(0, eq));
    if (key.empty())
      throw ParseError("config: empty key", lineno);
    if (c.has(key))
      throw ParseError("config: duplicate key '" + key + "'", lineno);
    c.values_[key] = trim(line.substr(eq + 1));
  }
  return c;
}

RunConfig RunConfig::load(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw Error("config: cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return parse(ss.str());
  } catch (const ParseError &e) {
    throw ParseError(path + ": " + e.what());
  }
}

void RunConfig::set(const std::string &key, const std::string &value) {
  values_[key] = value;
}

std::string RunConfig::get(const std::string &key, const std::string &fallback) const {
  auto it = values_.find(key);
  const std::string v = it == values_.end() ? fallback : it->second;
  resolved_[key] = v;
  return v;
}

std::string RunConfig::require(const std::string &key) const {
  if (!has(key))
    throw Error("config: missing required key '" + key + "'");
  return get(key);
}

long long RunConfig::get_int(const std::string &key, long long fallback) const {
  const std::string v = get(key, std::to_string(fallback));
  long long out = 0;
  auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || p != v.data() + v.size())
    throw Error("config: " + key + " expects an integer, got '" + v + "'");
  return out;
}

double RunConfig::get_double(const std::string &key, double fallback) const {
  const std::string v = get(key, format_number(fallback));
  std::optional<double> d;
  try {
    d = parse_optional_number(v);
  } catch (const ParseError &) {
  }
  if (!d)
    throw Error("config: " + key + " expects a number, got '" + v + "'");
  return *d;
}

bool RunConfig::get_bool(const std::string &key, bool fallback) const {
  const std::string v = get(key, fallback ? "true" : "false");
  if (v == "true" || v == "1" || v == "yes")
    return true;
  if (v == "false" || v == "0" || v == "no")
    return false;
  throw Error("config: " + key + " expects true or false, got '" + v + "'");
}

std::vector<std::string> RunConfig::get_list(const std::string &key) const {
  std::vector<std::string> out;
  std::string v = get(key);
  std::size_t start = 0;
  while (start <= v.size()) {
    auto comma = v.find(',', start);
    if (comma == std::string::npos)
      comma = v.size();
    std::string item = trim(std::string_view(v).substr(start, comma - start));
    if (!item.empty())
      out.push_back(item);
    start = comma + 1;
  }
  return out;
}

std::map<std::string, std::string> RunConfig::section(const std::string &prefix) const {
  std::map<std::string, std::string> out;
  for (const auto &[k, v]: values_) {
    if (k.compare(0, prefix.size(), prefix) == 0)
      out[k.substr(prefix.size())] = v;
  }
  return out;
}

void RunConfig::note_effective(const std::string &key, const std::string &value) const {
  resolved_[key] = value;
}

std::map<std::string, std::string> RunConfig::effective() const {
  std::map<std::string, std::string> out = resolved_;
  for (const auto &[k, v]: values_)
    out[k] = v;
  return out;
}

}  // namespace lcjt
