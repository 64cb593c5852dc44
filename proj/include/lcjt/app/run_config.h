//
// Project lcjtvae - Copyright 2026 The lcjtvae Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef LCJT_APP_RUN_CONFIG_H_
#define LCJT_APP_RUN_CONFIG_H_

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace lcjt {

// Flat "key = value" settings. Lookups remember the value they resolved to
// (default included) so the effective configuration can be echoed.
class RunConfig {
public:
  // One assignment per line; '#' starts a comment; blank lines ignored.
  // Throws ParseError with the line number on a line without '=' or with an
  // empty key, and on a repeated key.
  static RunConfig parse(std::string_view text);
  static RunConfig load(const std::string &path);

  // Later sets win (command-line overrides).
  void set(const std::string &key, const std::string &value);
  bool has(const std::string &key) const { return values_.count(key) > 0; }

  std::string get(const std::string &key, const std::string &fallback = "") const;
  // Throws Error if the key is absent.
  std::string require(const std::string &key) const;
  long long get_int(const std::string &key, long long fallback) const;
  double get_double(const std::string &key, double fallback) const;
  bool get_bool(const std::string &key, bool fallback) const;
  // Comma-separated, entries trimmed, empty entries dropped.
  std::vector<std::string> get_list(const std::string &key) const;

  // Keys starting with `prefix`, prefix removed.
  std::map<std::string, std::string> section(const std::string &prefix) const;
  // Records settings resolved elsewhere (e.g. defaults filled in by a
  // typed config) for the echo.
  void note_effective(const std::string &key, const std::string &value) const;

  const std::map<std::string, std::string> &values() const { return values_; }
  // Every explicitly set key plus every default that was looked up.
  std::map<std::string, std::string> effective() const;

private:
  std::map<std::string, std::string> values_;
  mutable std::map<std::string, std::string> resolved_;
};

std::string trim(std::string_view s);

}  // namespace lcjt

#endif  // LCJT_APP_RUN_CONFIG_H_
