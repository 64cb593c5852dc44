//
// Project lcjtvae - Copyright 2026 The lcjtvae Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef LCJT_MODEL_CONFIG_H_
#define LCJT_MODEL_CONFIG_H_

#include <map>
#include <string>
#include <string_view>

namespace lcjt {

enum class FusionMode { kConcat, kCrossAttention };
enum class SeqEncoderMode { kKmer, kOnehotRnn, kExternal };

std::string_view to_string(FusionMode m);
std::string_view to_string(SeqEncoderMode m);
FusionMode parse_fusion_mode(std::string_view s);
SeqEncoderMode parse_seq_encoder_mode(std::string_view s);

struct ModelConfig {
  int hidden = 64;
  int z_tree = 16;
  int z_graph = 16;
  int seq_embed = 128;
  int fused = 32;
  int mp_iters = 3;
  int tree_iters = 4;
  int max_decode_nodes = 30;
  int attention_heads = 1;
  int assembly_iters = 3;
  // Length of precomputed ligase vectors in external mode.
  int external_dim = 128;
  FusionMode fusion_mode = FusionMode::kConcat;
  SeqEncoderMode seq_encoder_mode = SeqEncoderMode::kKmer;

  int z_mol() const { return z_tree + z_graph; }

  // Throws Error naming the first offending field.
  void validate() const;

  // Flat key -> value form; from_map ignores unrelated keys and throws on
  // malformed values.
  std::map<std::string, std::string> to_map() const;
  static ModelConfig from_map(const std::map<std::string, std::string> &kv);

  bool operator==(const ModelConfig &) const = default;
};

struct TrainingSchedule {
  double beta_step = 0.002;
  double beta_max = 1.0;
  int epochs = 500;
  int batch_size = 8;
  double base_lr = 1e-3;
  double lr_decay = 0.9;

  // beta after `step` completed mini-batches.
  double beta(long long step) const;

  void validate() const;
  std::map<std::string, std::string> to_map() const;
  static TrainingSchedule from_map(const std::map<std::string, std::string> &kv);
};

struct LossReport {
  double total = 0;
  double recon_topology = 0;
  double recon_label = 0;
  double recon_assembly = 0;
  double kl = 0;
  double beta = 0;
  double wacc = 0;
  double tacc = 0;
  double sacc = 0;

  double recon() const { return recon_topology + recon_label + recon_assembly; }
};

}  // namespace lcjt

#endif  // LCJT_MODEL_CONFIG_H_
