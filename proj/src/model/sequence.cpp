//
// Project lcjtvae - Copyright 2026 The lcjtvae Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "lcjt/model/sequence.h"

#include <cmath>

#include "lcjt/error.h"

namespace lcjt {
namespace {
std::vector<int> residues(std::string_view seq) {
  std::vector<int> out;
  out.reserve(seq.size());
  for (std::size_t i = 0; i < seq.size(); ++i) {
    int r = residue_index(seq[i]);
    if (r < 0)
      throw ParseError(std::string("unknown residue '") + seq[i] + "'",
                       static_cast<int>(i));
    out.push_back(r);
  }
  return out;
}
}  // namespace

int residue_index(char c) {
  auto p = kAminoAcids.find(c);
  return p == std::string_view::npos ? -1 : static_cast<int>(p);
}

Mat kmer_counts(std::string_view sequence) {
  std::vector<int> r = residues(sequence);
  Mat c = Mat::Zero(1, kNumKmers);
  for (std::size_t i = 0; i + 2 < r.size(); ++i)
    c(0, 400 * r[i] + 20 * r[i + 1] + r[i + 2]) += 1;
  return c;
}

Mat kmer_features(std::string_view sequence) {
  Mat c = kmer_counts(sequence);
  const double norm = c.norm();
  if (norm > 0)
    c /= norm;
  return c;
}

Mat onehot_residues(std::string_view sequence) {
  std::vector<int> r = residues(sequence);
  Mat x = Mat::Zero(static_cast<Eigen::Index>(r.size()), 20);
  for (std::size_t i = 0; i < r.size(); ++i)
    x(static_cast<Eigen::Index>(i), r[i]) = 1;
  return x;
}

PreparedLigase prepare_ligase(const LigaseContext &ctx, const ModelConfig &cfg) {
  PreparedLigase p;
  p.id = ctx.id;
  switch (cfg.seq_encoder_mode) {
  case SeqEncoderMode::kKmer:
    if (ctx.sequence.empty())
      throw Error("ligase " + ctx.id + ": empty sequence");
    p.input = kmer_features(ctx.sequence);
    break;
  case SeqEncoderMode::kOnehotRnn:
    if (ctx.sequence.empty())
      throw Error("ligase " + ctx.id + ": empty sequence");
    p.input = onehot_residues(ctx.sequence);
    break;
  case SeqEncoderMode::kExternal:
    if (static_cast<int>(ctx.embedding.size()) != cfg.external_dim)
      throw ShapeError("ligase " + ctx.id + ": external vector has "
                       + std::to_string(ctx.embedding.size())
                       + " values, expected "
                       + std::to_string(cfg.external_dim));
    p.input = Mat(1, cfg.external_dim);
    for (int i = 0; i < cfg.external_dim; ++i) {
      if (!std::isfinite(ctx.embedding[i]))
        throw Error("ligase " + ctx.id + ": non-finite embedding value");
      p.input(0, i) = ctx.embedding[i];
    }
    break;
  }
  return p;
}

}  // namespace lcjt
