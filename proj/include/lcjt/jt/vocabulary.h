//
// Project lcjtvae - Copyright 2026 The lcjtvae Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef LCJT_JT_VOCABULARY_H_
#define LCJT_JT_VOCABULARY_H_

#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lcjt/chem/molecule.h"

namespace lcjt {

class Vocabulary {
public:
  Vocabulary() = default;
  // Entries are sorted by (count desc, label asc); labels must be unique.
  explicit Vocabulary(std::vector<std::pair<std::string, int>> entries);

  int size() const { return static_cast<int>(labels_.size()); }
  bool empty() const { return labels_.empty(); }
  const std::string &label(int i) const { return labels_[i]; }
  int count(int i) const { return counts_[i]; }
  const std::vector<std::string> &labels() const { return labels_; }

  // -1 when absent.
  int index_of(std::string_view label) const;

  // "label<TAB>count" per line.
  std::string to_tsv() const;
  static Vocabulary from_tsv(std::string_view text);

  bool operator==(const Vocabulary &other) const {
    return labels_ == other.labels_ && counts_ == other.counts_;
  }

private:
  std::vector<std::string> labels_;
  std::vector<int> counts_;
  std::map<std::string, int, std::less<>> index_;
};

// Clique label frequencies over the corpus. Decomposition failures are
// rethrown with the molecule position and source text attached.
Vocabulary build_vocabulary(std::span<const Molecule> corpus);

}  // namespace lcjt

#endif  // LCJT_JT_VOCABULARY_H_
