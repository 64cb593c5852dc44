//
// Project lcjtvae - Copyright 2026 The lcjtvae Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef LCJT_MODEL_TRAINER_H_
#define LCJT_MODEL_TRAINER_H_

#include <cstdint>
#include <memory>
#include <span>

#include "lcjt/model/model.h"
#include "lcjt/tensor/checkpoint.h"
#include "lcjt/tensor/optim.h"

namespace lcjt {

class Trainer {
public:
  Trainer(Model &model, const TrainingSchedule &sched, std::uint64_t seed);

  // One pass over `data` in shuffled mini-batches. Each batch: forward,
  // backward, clip to 50, Adam at the epoch's learning rate, beta advanced.
  // The returned report is the mean of the per-batch reports. Throws
  // NonFiniteLossError, leaving parameters as they were before that batch.
  LossReport train_epoch(std::span<const TrainingExample> data);

  int epoch() const { return epoch_; }
  long long beta_step() const { return step_; }
  double beta() const { return sched_.beta(step_); }
  const TrainingSchedule &schedule() const { return sched_; }
  double last_grad_norm() const { return last_norm_; }

  // Model parameters, optimizer and RNG state, plus the model config,
  // schedule and vocabulary as metadata.
  Checkpoint checkpoint() const;
  void restore(const Checkpoint &ckpt);

private:
  Model &model_;
  TrainingSchedule sched_;
  Adam adam_;
  Rng reparam_;
  Rng loader_;
  int epoch_ = 0;
  long long step_ = 0;
  double last_norm_ = 0;
};

// Teacher-forced report over all of `data` as one batch, decoding from the
// posterior means. No parameters change.
LossReport evaluate_teacher_forced(Model &model,
                                   std::span<const TrainingExample> data,
                                   double beta);

// Rebuilds a model (config, vocabulary, weights) from checkpoint metadata.
std::unique_ptr<Model> model_from_checkpoint(const Checkpoint &ckpt);
TrainingSchedule schedule_from_checkpoint(const Checkpoint &ckpt);

}  // namespace lcjt

#endif  // LCJT_MODEL_TRAINER_H_
