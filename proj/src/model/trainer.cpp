//
// Project lcjtvae - Copyright 2026 The lcjtvae Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "lcjt/model/trainer.h"

#include <cmath>
#include <numeric>

#include "lcjt/error.h"

namespace lcjt {
namespace {
std::map<std::string, std::string> prefixed(const Checkpoint &c,
                                            const std::string &prefix) {
  std::map<std::string, std::string> out;
  for (const auto &[k, v]: c.metadata) {
    if (k.rfind(prefix, 0) == 0)
      out.emplace(k.substr(prefix.size()), v);
  }
  return out;
}

bool finite(const LossReport &r) {
  return std::isfinite(r.total) && std::isfinite(r.kl)
         && std::isfinite(r.recon_topology) && std::isfinite(r.recon_label)
         && std::isfinite(r.recon_assembly);
}
}  // namespace

Trainer::Trainer(Model &model, const TrainingSchedule &sched, std::uint64_t seed)
    : model_(model), sched_(sched), reparam_(seed, "reparam"),
      loader_(seed, "loader") {
  sched_.validate();
}

LossReport Trainer::train_epoch(std::span<const TrainingExample> data) {
  if (data.empty())
    throw Error("train_epoch: no training pairs");
  std::vector<int> order(data.size());
  std::iota(order.begin(), order.end(), 0);
  loader_.shuffle(order);
  LrSchedule lrs { sched_.base_lr, sched_.lr_decay };
  const double lr = lrs.lr(epoch_);

  LossReport mean;
  int batches = 0;
  ParamStore &params = model_.params();
  for (std::size_t start = 0; start < order.size();
       start += static_cast<std::size_t>(sched_.batch_size)) {
    std::vector<TrainingExample> batch;
    for (std::size_t i = start;
         i < order.size() && i < start + static_cast<std::size_t>(sched_.batch_size); ++i)
      batch.push_back(data[order[i]]);
    const double beta = sched_.beta(step_);
    params.zero_grad();
    Tape tape;
    const std::string where = "epoch " + std::to_string(epoch_ + 1) + ", batch "
                              + std::to_string(batches);
    Model::BatchResult r;
    try {
      r = model_.batch_loss(tape, batch, beta, &reparam_);
    } catch (const NonFiniteLossError &e) {
      throw NonFiniteLossError(std::string(e.what()) + " at " + where, epoch_ + 1, batches);
    }
    if (!finite(r.report))
      throw NonFiniteLossError("non-finite loss at " + where, epoch_ + 1, batches);
    tape.backward(r.loss);
    last_norm_ = clip_global_norm(params, 50.0);
    adam_.step(params, lr);
    ++step_;
    ++batches;

    const LossReport &b = r.report;
    mean.total += b.total;
    mean.recon_topology += b.recon_topology;
    mean.recon_label += b.recon_label;
    mean.recon_assembly += b.recon_assembly;
    mean.kl += b.kl;
    mean.beta += b.beta;
    mean.wacc += b.wacc;
    mean.tacc += b.tacc;
    mean.sacc += b.sacc;
  }
  const double inv = 1.0 / batches;
  for (double *f: { &mean.total, &mean.recon_topology, &mean.recon_label,
                    &mean.recon_assembly, &mean.kl, &mean.beta, &mean.wacc,
                    &mean.tacc, &mean.sacc })
    *f *= inv;
  ++epoch_;
  return mean;
}

LossReport evaluate_teacher_forced(Model &model,
                                   std::span<const TrainingExample> data,
                                   double beta) {
  if (data.empty())
    throw Error("evaluate: no pairs");
  Tape tape;
  return model.batch_loss(tape, data, beta, nullptr).report;
}

Checkpoint Trainer::checkpoint() const {
  Checkpoint c;
  for (const Parameter *p: model_.params().all())
    c.tensors.emplace_back(p->name, p->value);
  c.adam_t = adam_.t();
  c.adam_moments = adam_.moments();
  c.epoch = epoch_;
  c.beta_step = step_;
  c.beta = beta();
  c.rng_states["reparam"] = reparam_.state();
  c.rng_states["loader"] = loader_.state();
  for (const auto &[k, v]: model_.config().to_map())
    c.metadata["model." + k] = v;
  for (const auto &[k, v]: sched_.to_map())
    c.metadata["train." + k] = v;
  c.metadata["vocab"] = model_.vocab().to_tsv();
  return c;
}

void Trainer::restore(const Checkpoint &ckpt) {
  ParamStore &params = model_.params();
  if (static_cast<int>(ckpt.tensors.size()) != params.size())
    throw Error("checkpoint: expected " + std::to_string(params.size())
                + " tensors, found " + std::to_string(ckpt.tensors.size()));
  for (const auto &[name, value]: ckpt.tensors) {
    if (!params.contains(name))
      throw Error("checkpoint: unknown tensor " + name);
    Parameter &p = params.get(name);
    if (p.value.rows() != value.rows() || p.value.cols() != value.cols())
      throw ShapeError("checkpoint: tensor " + name + " has shape "
                       + shape_string(value) + ", model expects "
                       + shape_string(p.value));
    p.value = value;
  }
  adam_.set_t(ckpt.adam_t);
  adam_.moments() = ckpt.adam_moments;
  epoch_ = ckpt.epoch;
  step_ = ckpt.beta_step;
  auto rs = ckpt.rng_states.find("reparam");
  auto ls = ckpt.rng_states.find("loader");
  if (rs == ckpt.rng_states.end() || ls == ckpt.rng_states.end())
    throw Error("checkpoint: missing RNG state");
  reparam_.set_state(rs->second);
  loader_.set_state(ls->second);
}

std::unique_ptr<Model> model_from_checkpoint(const Checkpoint &ckpt) {
  auto vit = ckpt.metadata.find("vocab");
  if (vit == ckpt.metadata.end())
    throw Error("checkpoint: no vocabulary");
  ModelConfig cfg = ModelConfig::from_map(prefixed(ckpt, "model."));
  auto model = std::make_unique<Model>(cfg, Vocabulary::from_tsv(vit->second), 0);
  ParamStore &params = model->params();
  for (const auto &[name, value]: ckpt.tensors) {
    if (!params.contains(name))
      throw Error("checkpoint: unknown tensor " + name);
    Parameter &p = params.get(name);
    if (p.value.rows() != value.rows() || p.value.cols() != value.cols())
      throw ShapeError("checkpoint: tensor " + name + " shape mismatch");
    p.value = value;
  }
  return model;
}

TrainingSchedule schedule_from_checkpoint(const Checkpoint &ckpt) {
  return TrainingSchedule::from_map(prefixed(ckpt, "train."));
}

}  // namespace lcjt
