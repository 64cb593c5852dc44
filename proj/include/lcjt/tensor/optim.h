//
// Project lcjtvae - Copyright 2026 The lcjtvae Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef LCJT_TENSOR_OPTIM_H_
#define LCJT_TENSOR_OPTIM_H_

#include <map>
#include <span>
#include <string>

#include "lcjt/tensor/rng.h"
#include "lcjt/tensor/tensor.h"

namespace lcjt {

// N(0, 2 / (fan_in + fan_out)) for a rows x cols weight. Throws ShapeError
// unless `shape` has exactly two positive extents.
Mat xavier_normal(std::span<const int> shape, Rng &rng);
Mat xavier_normal(int rows, int cols, Rng &rng);

// Global L2 norm over all gradients; if above max_norm every gradient is
// scaled by max_norm / norm. Returns the norm before clipping.
double clip_global_norm(ParamStore &params, double max_norm = 50.0);
double clip_global_norm(std::span<Mat *const> grads, double max_norm = 50.0);

struct AdamConfig {
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

class Adam {
public:
  struct Moments {
    Mat m;
    Mat v;
  };

  explicit Adam(AdamConfig cfg = {}): cfg_(cfg) { }

  // Bias-corrected update of every parameter from its grad; t += 1.
  void step(ParamStore &params, double lr);

  long long t() const { return t_; }
  void set_t(long long t) { t_ = t; }
  const AdamConfig &config() const { return cfg_; }
  std::map<std::string, Moments> &moments() { return moments_; }
  const std::map<std::string, Moments> &moments() const { return moments_; }

private:
  AdamConfig cfg_;
  long long t_ = 0;
  std::map<std::string, Moments> moments_;
};

// lr(epoch) = base_lr * decay^epoch.
struct LrSchedule {
  double base_lr = 1e-3;
  double decay = 0.9;

  double lr(int epoch) const;
};

}  // namespace lcjt

#endif  // LCJT_TENSOR_OPTIM_H_
