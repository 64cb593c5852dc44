//
// Project lcjtvae - Copyright 2026 The lcjtvae Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef LCJT_APP_MANIFEST_H_
#define LCJT_APP_MANIFEST_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace lcjt {

struct ManifestEntry {
  std::string path;  // relative to the output directory
  std::uint64_t hash = 0;  // FNV-1a 64 of the file bytes
  std::size_t bytes = 0;
};

// Writes artifacts under an output directory and records each one. The
// MANIFEST file holds one "[command]" section per command run in that
// directory; finishing a command replaces only its own section.
class Manifest {
public:
  Manifest(std::filesystem::path out_dir, std::string command);

  // Writes via a temporary file and rename, then records the hash.
  void write(const std::string &rel, std::string_view content);
  // Records a file written by other means.
  void record(const std::string &rel);
  void note(const std::string &text) { notes_.push_back(text); }

  // status "ok" or "failed"; the config echo is written in key order.
  void finish(int exit_code, const std::string &message,
              const std::map<std::string, std::string> &config);

  const std::vector<ManifestEntry> &entries() const { return entries_; }
  const std::filesystem::path &dir() const { return dir_; }

private:
  std::filesystem::path dir_;
  std::string command_;
  std::vector<ManifestEntry> entries_;
  std::vector<std::string> notes_;
};

std::string hex64(std::uint64_t v);
std::string read_text_file(const std::filesystem::path &p);
// Atomic replace of `p` with `content`.
void write_text_file(const std::filesystem::path &p, std::string_view content);

}  // namespace lcjt

#endif  // LCJT_APP_MANIFEST_H_
