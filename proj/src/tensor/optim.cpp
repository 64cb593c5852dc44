//
// Project lcjtvae - Copyright 2026 The lcjtvae Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "lcjt/tensor/optim.h"

#include <cmath>
#include <vector>

#include "lcjt/error.h"

namespace lcjt {

Mat xavier_normal(std::span<const int> shape, Rng &rng) {
  if (shape.size() != 2 || shape[0] <= 0 || shape[1] <= 0) {
    std::string s = "(";
    for (std::size_t i = 0; i < shape.size(); ++i)
      s += (i ? "x" : "") + std::to_string(shape[i]);
    throw ShapeError("xavier_normal: need a 2-D shape, got " + s + ")");
  }
  const double sd = std::sqrt(2.0 / (shape[0] + shape[1]));
  Mat w(shape[0], shape[1]);
  for (Eigen::Index i = 0; i < w.size(); ++i)
    w.data()[i] = sd * rng.normal();
  return w;
}

Mat xavier_normal(int rows, int cols, Rng &rng) {
  const int shape[2] = { rows, cols };
  return xavier_normal(shape, rng);
}

double clip_global_norm(std::span<Mat *const> grads, double max_norm) {
  double sq = 0;
  for (const Mat *g: grads)
    sq += g->squaredNorm();
  const double norm = std::sqrt(sq);
  if (norm > max_norm) {
    const double s = max_norm / norm;
    for (Mat *g: grads)
      *g *= s;
  }
  return norm;
}

double clip_global_norm(ParamStore &params, double max_norm) {
  std::vector<Mat *> grads;
  for (Parameter *p: params.all())
    grads.push_back(&p->grad);
  return clip_global_norm(grads, max_norm);
}

void Adam::step(ParamStore &params, double lr) {
  ++t_;
  const double c1 = 1.0 - std::pow(cfg_.beta1, static_cast<double>(t_));
  const double c2 = 1.0 - std::pow(cfg_.beta2, static_cast<double>(t_));
  for (Parameter *p: params.all()) {
    auto it = moments_.find(p->name);
    if (it == moments_.end()) {
      Moments zero { Mat::Zero(p->value.rows(), p->value.cols()),
                     Mat::Zero(p->value.rows(), p->value.cols()) };
      it = moments_.emplace(p->name, std::move(zero)).first;
    }
    Moments &mo = it->second;
    if (mo.m.rows() != p->value.rows() || mo.m.cols() != p->value.cols()
        || p->grad.rows() != p->value.rows() || p->grad.cols() != p->value.cols())
      throw ShapeError("adam: state shape mismatch for " + p->name);
    mo.m = cfg_.beta1 * mo.m + (1.0 - cfg_.beta1) * p->grad;
    mo.v = cfg_.beta2 * mo.v
           + (1.0 - cfg_.beta2) * p->grad.cwiseProduct(p->grad);
    p->value.array() -= lr * (mo.m.array() / c1)
                        / ((mo.v.array() / c2).sqrt() + cfg_.eps);
  }
}

double LrSchedule::lr(int epoch) const {
  return base_lr * std::pow(decay, epoch);
}

}  // namespace lcjt
