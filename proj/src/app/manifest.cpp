//
// Project lcjtvae - Copyright 2026 The lcjtvae Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "lcjt/app/manifest.h"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "lcjt/error.h"
#include "lcjt/hash.h"

namespace lcjt {
namespace fs = std::filesystem;

namespace {
const char *const kCommandOrder[] = { "ingest", "train", "generate", "eval", "report" };

int command_rank(const std::string &name) {
  for (int i = 0; i < 5; ++i) {
    if (name == kCommandOrder[i])
      return i;
  }
  return 5;
}
}  // namespace

std::string hex64(std::uint64_t v) {
  static const char *digits = "0123456789abcdef";
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i, v >>= 4)
    s[i] = digits[v & 15];
  return s;
}

std::string read_text_file(const fs::path &p) {
  std::ifstream in(p, std::ios::binary);
  if (!in)
    throw Error("cannot read " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const fs::path &p, std::string_view content) {
  if (p.has_parent_path())
    fs::create_directories(p.parent_path());
  fs::path tmp = p;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out)
      throw Error("cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out)
      throw Error("write failed: " + tmp.string());
  }
  fs::rename(tmp, p);
}

Manifest::Manifest(fs::path out_dir, std::string command)
    : dir_(std::move(out_dir)), command_(std::move(command)) {
  fs::create_directories(dir_);
}

void Manifest::write(const std::string &rel, std::string_view content) {
  write_text_file(dir_ / rel, content);
  record(rel);
}

void Manifest::record(const std::string &rel) {
  const std::string bytes = read_text_file(dir_ / rel);
  ManifestEntry e { rel, fnv1a64(bytes), bytes.size() };
  auto it = std::find_if(entries_.begin(), entries_.end(),
                         [&](const ManifestEntry &x) { return x.path == rel; });
  if (it != entries_.end())
    *it = e;
  else
    entries_.push_back(e);
}

void Manifest::finish(int exit_code, const std::string &message,
                      const std::map<std::string, std::string> &config) {
  std::ostringstream sec;
  sec << "[" << command_ << "]\n";
  sec << "status = " << (exit_code == 0 ? "ok" : "failed") << "\n";
  sec << "exit_code = " << exit_code << "\n";
  if (!message.empty())
    sec << "message = " << message << "\n";
  for (const ManifestEntry &e: entries_)
    sec << "artifact = " << e.path << " fnv1a64:" << hex64(e.hash) << " bytes:" << e.bytes
        << "\n";
  for (const std::string &n: notes_)
    sec << "note = " << n << "\n";
  for (const auto &[k, v]: config)
    sec << "config." << k << " = " << v << "\n";

  // Keep the sections other commands left behind.
  std::map<std::string, std::string> sections;
  const fs::path path = dir_ / "MANIFEST";
  if (fs::exists(path)) {
    std::istringstream in(read_text_file(path));
    std::string line, name, body;
    auto flush = [&] {
      if (!name.empty())
        sections[name] = body;
    };
    while (std::getline(in, line)) {
      if (line.size() > 2 && line.front() == '[' && line.back() == ']') {
        flush();
        name = line.substr(1, line.size() - 2);
        body = line + "\n";
      } else if (!name.empty() && !line.empty()) {
        body += line + "\n";
      }
    }
    flush();
  }
  sections[command_] = sec.str();
  std::vector<std::pair<std::string, std::string>> ordered(sections.begin(), sections.end());
  std::stable_sort(ordered.begin(), ordered.end(), [](const auto &a, const auto &b) {
    return command_rank(a.first) < command_rank(b.first);
  });
  std::string text = "# lcjtvae output manifest\n";
  for (const auto &[n, body]: ordered)
    text += "\n" + body;
  write_text_file(path, text);
}

}  // namespace lcjt
