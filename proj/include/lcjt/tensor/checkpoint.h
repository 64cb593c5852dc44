//
// Project lcjtvae - Copyright 2026 The lcjtvae Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef LCJT_TENSOR_CHECKPOINT_H_
#define LCJT_TENSOR_CHECKPOINT_H_

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "lcjt/tensor/optim.h"
#include "lcjt/tensor/tensor.h"

namespace lcjt {

struct Checkpoint {
  std::vector<std::pair<std::string, Mat>> tensors;
  long long adam_t = 0;
  std::map<std::string, Adam::Moments> adam_moments;
  int epoch = 0;
  long long beta_step = 0;
  double beta = 0;
  std::map<std::string, std::string> rng_states;
  std::map<std::string, std::string> metadata;

  bool operator==(const Checkpoint &other) const;
};

// Binary container: "LCJTCKPT", u32 version, then length-prefixed
// sections. Numbers are stored little-endian; doubles bit-exact.
std::string serialize_checkpoint(const Checkpoint &ckpt);
Checkpoint deserialize_checkpoint(const std::string &bytes);

void save_checkpoint(const std::string &path, const Checkpoint &ckpt);
Checkpoint load_checkpoint(const std::string &path);

}  // namespace lcjt

#endif  // LCJT_TENSOR_CHECKPOINT_H_
