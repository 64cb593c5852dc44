//
// Project lcjtvae - Copyright 2026 The lcjtvae Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef LCJT_MODEL_SEQUENCE_H_
#define LCJT_MODEL_SEQUENCE_H_

#include <string>
#include <string_view>
#include <vector>

#include "lcjt/model/config.h"
#include "lcjt/tensor/tensor.h"

namespace lcjt {

inline constexpr std::string_view kAminoAcids = "ACDEFGHIKLMNPQRSTVWY";
inline constexpr int kNumKmers = 20 * 20 * 20;

// Position in kAminoAcids, or -1.
int residue_index(char c);

// Raw 3-mer counts (1 x 8000); index = 400 r0 + 20 r1 + r2. Throws
// ParseError on a letter outside the 20-residue alphabet.
Mat kmer_counts(std::string_view sequence);
// Counts scaled to unit L2 norm (all zero for sequences shorter than 3).
Mat kmer_features(std::string_view sequence);
// L x 20
Mat onehot_residues(std::string_view sequence);

struct LigaseContext {
  std::string id;
  std::string sequence;
  std::vector<double> embedding;  // external mode only
};

// Encoder input for one ligase under a given mode.
struct PreparedLigase {
  std::string id;
  Mat input;
};

PreparedLigase prepare_ligase(const LigaseContext &ctx, const ModelConfig &cfg);

}  // namespace lcjt

#endif  // LCJT_MODEL_SEQUENCE_H_
