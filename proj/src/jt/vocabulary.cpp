//
// Project lcjtvae - Copyright 2026 The lcjtvae Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "lcjt/jt/vocabulary.h"

#include <algorithm>
#include <charconv>

#include "lcjt/error.h"
#include "lcjt/jt/junction_tree.h"

namespace lcjt {

Vocabulary::Vocabulary(std::vector<std::pair<std::string, int>> entries) {
  std::sort(entries.begin(), entries.end(), [](const auto &x, const auto &y) {
    if (x.second != y.second)
      return x.second > y.second;
    return x.first < y.first;
  });
  for (auto &[label, count]: entries) {
    if (label.empty())
      throw Error("vocabulary: empty label");
    if (!index_.emplace(label, size()).second)
      throw Error("vocabulary: duplicate label " + label);
    labels_.push_back(std::move(label));
    counts_.push_back(count);
  }
}

int Vocabulary::index_of(std::string_view label) const {
  auto it = index_.find(label);
  return it == index_.end() ? -1 : it->second;
}

std::string Vocabulary::to_tsv() const {
  std::string out;
  for (int i = 0; i < size(); ++i) {
    out += labels_[i];
    out += '\t';
    out += std::to_string(counts_[i]);
    out += '\n';
  }
  return out;
}

Vocabulary Vocabulary::from_tsv(std::string_view text) {
  std::vector<std::pair<std::string, int>> entries;
  int line_no = 0;
  while (!text.empty()) {
    ++line_no;
    auto eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view {}
                                         : text.substr(eol + 1);
    if (!line.empty() && line.back() == '\r')
      line.remove_suffix(1);
    if (line.empty())
      continue;
    auto tab = line.find('\t');
    if (tab == std::string_view::npos)
      throw ParseError("vocabulary: missing tab", line_no);
    int count = 0;
    auto num = line.substr(tab + 1);
    auto [ptr, ec] = std::from_chars(num.data(), num.data() + num.size(), count);
    if (ec != std::errc() || ptr != num.data() + num.size() || count < 0)
      throw ParseError("vocabulary: bad count", line_no);
    entries.emplace_back(std::string(line.substr(0, tab)), count);
  }
  Vocabulary v(entries);
  // The stored order must already be canonical.
  for (int i = 0; i < v.size(); ++i) {
    if (v.label(i) != entries[i].first)
      throw ParseError("vocabulary: entries out of order", i + 1);
  }
  return v;
}

Vocabulary build_vocabulary(std::span<const Molecule> corpus) {
  std::map<std::string, int> counts;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    JunctionTree tree;
    try {
      tree = decompose(corpus[i]);
    } catch (const Error &e) {
      throw Error("molecule " + std::to_string(i) + " ("
                  + corpus[i].source_text() + "): " + e.what());
    }
    for (const Clique &c: tree.nodes)
      ++counts[c.label];
  }
  return Vocabulary({ counts.begin(), counts.end() });
}

}  // namespace lcjt
