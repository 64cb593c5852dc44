//
// Project lcjtvae - Copyright 2026 The lcjtvae Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "lcjt/model/config.h"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "lcjt/error.h"

namespace lcjt {
namespace {
int parse_int(const std::string &key, const std::string &v) {
  int out = 0;
  auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || p != v.data() + v.size())
    throw Error("config: " + key + " expects an integer, got '" + v + "'");
  return out;
}

double parse_double(const std::string &key, const std::string &v) {
  double out = 0;
  auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || p != v.data() + v.size() || !std::isfinite(out))
    throw Error("config: " + key + " expects a number, got '" + v + "'");
  return out;
}

std::string fmt_double(double v) {
  char buf[32];
  auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, p);
}

template <class F>
void with(const std::map<std::string, std::string> &kv, const char *key, F f) {
  auto it = kv.find(key);
  if (it != kv.end())
    f(it->first, it->second);
}
}  // namespace

std::string_view to_string(FusionMode m) {
  return m == FusionMode::kConcat ? "concat" : "cross_attention";
}

std::string_view to_string(SeqEncoderMode m) {
  switch (m) {
  case SeqEncoderMode::kKmer:
    return "kmer";
  case SeqEncoderMode::kOnehotRnn:
    return "onehot_rnn";
  default:
    return "external";
  }
}

FusionMode parse_fusion_mode(std::string_view s) {
  if (s == "concat")
    return FusionMode::kConcat;
  if (s == "cross_attention")
    return FusionMode::kCrossAttention;
  throw Error("unknown fusion_mode '" + std::string(s) + "'");
}

SeqEncoderMode parse_seq_encoder_mode(std::string_view s) {
  if (s == "kmer")
    return SeqEncoderMode::kKmer;
  if (s == "onehot_rnn")
    return SeqEncoderMode::kOnehotRnn;
  if (s == "external")
    return SeqEncoderMode::kExternal;
  throw Error("unknown seq_encoder_mode '" + std::string(s) + "'");
}

void ModelConfig::validate() const {
  const std::pair<const char *, int> dims[] = {
    { "hidden", hidden },
    { "z_tree", z_tree },
    { "z_graph", z_graph },
    { "seq_embed", seq_embed },
    { "fused", fused },
    { "mp_iters", mp_iters },
    { "tree_iters", tree_iters },
    { "max_decode_nodes", max_decode_nodes },
    { "attention_heads", attention_heads },
    { "assembly_iters", assembly_iters },
    { "external_dim", external_dim },
  };
  for (auto [name, v]: dims) {
    if (v < 1)
      throw Error(std::string("config: ") + name + " must be >= 1");
  }
  if (hidden % attention_heads != 0)
    throw Error("config: hidden must be divisible by attention_heads");
}

std::map<std::string, std::string> ModelConfig::to_map() const {
  return {
    { "hidden", std::to_string(hidden) },
    { "z_tree", std::to_string(z_tree) },
    { "z_graph", std::to_string(z_graph) },
    { "seq_embed", std::to_string(seq_embed) },
    { "fused", std::to_string(fused) },
    { "mp_iters", std::to_string(mp_iters) },
    { "tree_iters", std::to_string(tree_iters) },
    { "max_decode_nodes", std::to_string(max_decode_nodes) },
    { "attention_heads", std::to_string(attention_heads) },
    { "assembly_iters", std::to_string(assembly_iters) },
    { "external_dim", std::to_string(external_dim) },
    { "fusion_mode", std::string(to_string(fusion_mode)) },
    { "seq_encoder_mode", std::string(to_string(seq_encoder_mode)) },
  };
}

ModelConfig ModelConfig::from_map(const std::map<std::string, std::string> &kv) {
  ModelConfig c;
  auto ints = [&](const char *key, int &field) {
    with(kv, key, [&](const std::string &k, const std::string &v) {
      field = parse_int(k, v);
    });
  };
  ints("hidden", c.hidden);
  ints("z_tree", c.z_tree);
  ints("z_graph", c.z_graph);
  ints("seq_embed", c.seq_embed);
  ints("fused", c.fused);
  ints("mp_iters", c.mp_iters);
  ints("tree_iters", c.tree_iters);
  ints("max_decode_nodes", c.max_decode_nodes);
  ints("attention_heads", c.attention_heads);
  ints("assembly_iters", c.assembly_iters);
  ints("external_dim", c.external_dim);
  with(kv, "fusion_mode", [&](const std::string &, const std::string &v) {
    c.fusion_mode = parse_fusion_mode(v);
  });
  with(kv, "seq_encoder_mode", [&](const std::string &, const std::string &v) {
    c.seq_encoder_mode = parse_seq_encoder_mode(v);
  });
  c.validate();
  return c;
}

double TrainingSchedule::beta(long long step) const {
  return std::min(beta_max, beta_step * static_cast<double>(step));
}

void TrainingSchedule::validate() const {
  if (!(beta_step >= 0) || !(beta_max >= 0))
    throw Error("config: beta_step and beta_max must be non-negative");
  if (epochs < 0)
    throw Error("config: epochs must be >= 0");
  if (batch_size < 1)
    throw Error("config: batch_size must be >= 1");
  if (!(base_lr > 0))
    throw Error("config: lr must be positive");
  if (!(lr_decay > 0) || lr_decay > 1)
    throw Error("config: lr_decay must lie in (0, 1]");
}

std::map<std::string, std::string> TrainingSchedule::to_map() const {
  return {
    { "beta_step", fmt_double(beta_step) },
    { "beta_max", fmt_double(beta_max) },
    { "epochs", std::to_string(epochs) },
    { "batch_size", std::to_string(batch_size) },
    { "lr", fmt_double(base_lr) },
    { "lr_decay", fmt_double(lr_decay) },
  };
}

TrainingSchedule TrainingSchedule::from_map(
    const std::map<std::string, std::string> &kv) {
  TrainingSchedule s;
  with(kv, "beta_step", [&](const std::string &k, const std::string &v) {
    s.beta_step = parse_double(k, v);
  });
  with(kv, "beta_max", [&](const std::string &k, const std::string &v) {
    s.beta_max = parse_double(k, v);
  });
  with(kv, "epochs", [&](const std::string &k, const std::string &v) {
    s.epochs = parse_int(k, v);
  });
  with(kv, "batch_size", [&](const std::string &k, const std::string &v) {
    s.batch_size = parse_int(k, v);
  });
  with(kv, "lr", [&](const std::string &k, const std::string &v) {
    s.base_lr = parse_double(k, v);
  });
  with(kv, "lr_decay", [&](const std::string &k, const std::string &v) {
    s.lr_decay = parse_double(k, v);
  });
  s.validate();
  return s;
}

}  // namespace lcjt
