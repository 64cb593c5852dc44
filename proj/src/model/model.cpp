//
// Project lcjtvae - Copyright 2026 The lcjtvae Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "lcjt/model/model.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

#include "lcjt/error.h"
#include "lcjt/tensor/ops.h"
#include "lcjt/tensor/optim.h"

namespace lcjt {

using namespace ops;

Model::Model(const ModelConfig &cfg, Vocabulary vocab, std::uint64_t seed)
    : cfg_(cfg), vocab_(std::move(vocab)) {
  cfg_.validate();
  if (vocab_.empty())
    throw Error("model: empty vocabulary");
  Rng rng(seed, "init");
  auto w = [&](const std::string &name, int r, int c) {
    params_.add(name, xavier_normal(r, c, rng));
  };
  auto b = [&](const std::string &name, int c) {
    params_.add(name, Mat::Zero(1, c));
  };
  const int h = cfg_.hidden;
  const int v = vocab_.size();
  const int s = cfg_.seq_embed;
  const int f = cfg_.fused;
  const int zm = cfg_.z_mol();

  w("emb", v, h);

  w("mpn.W_i", kAtomFeatureDim + kBondFeatureDim, h);
  w("mpn.W_h", h, h);
  w("mpn.W_o", kAtomFeatureDim + h, h);
  b("mpn.b_o", h);

  w("jtmpn.W_x", h, h);
  w("jtmpn.W_m", h, h);
  b("jtmpn.b_m", h);
  w("jtmpn.W_o", 2 * h, h);
  b("jtmpn.b_o", h);

  w("vae.T_mean.W", h, cfg_.z_tree);
  b("vae.T_mean.b", cfg_.z_tree);
  w("vae.T_var.W", h, cfg_.z_tree);
  b("vae.T_var.b", cfg_.z_tree);
  w("vae.G_mean.W", h, cfg_.z_graph);
  b("vae.G_mean.b", cfg_.z_graph);
  w("vae.G_var.W", h, cfg_.z_graph);
  b("vae.G_var.b", cfg_.z_graph);

  switch (cfg_.seq_encoder_mode) {
  case SeqEncoderMode::kKmer:
    w("seq.W_H1", kNumKmers, h);
    b("seq.b_H1", h);
    w("seq.W_O", h, s);
    break;
  case SeqEncoderMode::kOnehotRnn:
    w("seq.W_H1", 20 + h, h);
    b("seq.b_H1", h);
    w("seq.W_H2", 20 + h, h);
    b("seq.b_H2", h);
    w("seq.W_O", 2 * h, s);
    break;
  case SeqEncoderMode::kExternal:
    w("seq.W_O", cfg_.external_dim, s);
    break;
  }
  b("seq.b_O", s);

  if (cfg_.fusion_mode == FusionMode::kConcat) {
    w("fuse.W", zm + s, f);
    b("fuse.b", f);
  } else {
    w("attn.W_q", zm, h);
    w("attn.W_k", s, h);
    w("attn.W_v", s, h);
    w("attn.W_f", zm + h, f);
    b("attn.b_f", f);
  }

  w("dec.W_init", f, h);
  b("dec.b_init", h);
  const int in = h + 1 + f;
  for (const char *g: { "z", "r", "h" }) {
    w(std::string("dec.gru.W_") + g, in, h);
    w(std::string("dec.gru.U_") + g, h, h);
    b(std::string("dec.gru.b_") + g, h);
  }
  w("dec.topo.W", h, 1);
  b("dec.topo.b", 1);
  w("dec.label.W", h, v);
  b("dec.label.b", v);

  w("asm.W_a", kCandidateFeatureDim, h);
  w("asm.W_n", h, h);
  b("asm.b", h);
  w("asm.W_s", f, h);
}

Var Model::linear(Tape &tape, Var x, const char *w, const char *b) {
  return add(matmul(x, param(tape, w)), param(tape, b));
}

Model::MolEncoding Model::encode_molecule(Tape &tape, const PreparedMolecule &m) {
  MolEncoding out;
  const int h = cfg_.hidden;

  // Graph stream over directed bonds.
  const GraphTensors &g = m.graph;
  Var xi = matmul(tape.constant(g.edge_x), param(tape, "mpn.W_i"));
  Var adj = tape.constant(g.msg_adj);
  Var msg = relu(xi);
  for (int t = 1; t < cfg_.mp_iters; ++t)
    msg = relu(add(xi, matmul(matmul(adj, msg), param(tape, "mpn.W_h"))));
  Var atom_in = matmul(tape.constant(g.atom_in), msg);
  Var atoms = relu(add(matmul(concat_cols({ tape.constant(g.atom_x), atom_in }),
                              param(tape, "mpn.W_o")),
                       param(tape, "mpn.b_o")));
  Var gpool = mean_rows(atoms);
  out.graph_mean = linear(tape, gpool, "vae.G_mean.W", "vae.G_mean.b");
  out.graph_logvar = linear(tape, gpool, "vae.G_var.W", "vae.G_var.b");

  // Tree stream over clique-label embeddings.
  const TreeTensors &tt = m.tree_tensors;
  Var x = gather_rows(param(tape, "emb"), m.labels);
  Var agg;
  if (tt.edge_src.empty()) {
    agg = tape.constant(Mat::Zero(static_cast<int>(m.labels.size()), h));
  } else {
    Var xw = add(matmul(gather_rows(x, tt.edge_src), param(tape, "jtmpn.W_x")),
                 param(tape, "jtmpn.b_m"));
    Var tadj = tape.constant(tt.msg_adj);
    Var tm = ops::tanh(xw);
    for (int t = 1; t < cfg_.tree_iters; ++t)
      tm = ops::tanh(add(xw, matmul(matmul(tadj, tm), param(tape, "jtmpn.W_m"))));
    agg = matmul(tape.constant(tt.node_in), tm);
  }
  Var nodes = relu(add(matmul(concat_cols({ x, agg }), param(tape, "jtmpn.W_o")),
                       param(tape, "jtmpn.b_o")));
  Var tpool = mean_rows(nodes);
  out.tree_mean = linear(tape, tpool, "vae.T_mean.W", "vae.T_mean.b");
  out.tree_logvar = linear(tape, tpool, "vae.T_var.W", "vae.T_var.b");
  return out;
}

Model::SeqEncoding Model::encode_ligase(Tape &tape, const PreparedLigase &lig) {
  SeqEncoding out;
  switch (cfg_.seq_encoder_mode) {
  case SeqEncoderMode::kKmer: {
    if (lig.input.rows() != 1 || lig.input.cols() != kNumKmers)
      throw ShapeError("encode_ligase: kmer input " + shape_string(lig.input));
    Var hid = relu(linear(tape, tape.constant(lig.input), "seq.W_H1", "seq.b_H1"));
    out.z_seq = linear(tape, hid, "seq.W_O", "seq.b_O");
    out.states = out.z_seq;
    break;
  }
  case SeqEncoderMode::kOnehotRnn: {
    const int len = static_cast<int>(lig.input.rows());
    if (len == 0 || lig.input.cols() != 20)
      throw ShapeError("encode_ligase: one-hot input " + shape_string(lig.input));
    Var x = tape.constant(lig.input);
    const Mat zero = Mat::Zero(1, cfg_.hidden);
    std::vector<Var> fwd(len), bwd(len);
    Var hf = tape.constant(zero);
    for (int t = 0; t < len; ++t) {
      hf = ops::tanh(linear(tape, concat_cols({ slice_rows(x, t, 1), hf }),
                            "seq.W_H1", "seq.b_H1"));
      fwd[t] = hf;
    }
    Var hb = tape.constant(zero);
    for (int t = len - 1; t >= 0; --t) {
      hb = ops::tanh(linear(tape, concat_cols({ slice_rows(x, t, 1), hb }),
                            "seq.W_H2", "seq.b_H2"));
      bwd[t] = hb;
    }
    Var states = concat_cols({ concat_rows(fwd), concat_rows(bwd) });
    out.states = linear(tape, states, "seq.W_O", "seq.b_O");
    out.z_seq = mean_rows(out.states);
    break;
  }
  case SeqEncoderMode::kExternal:
    if (lig.input.rows() != 1 || lig.input.cols() != cfg_.external_dim)
      throw ShapeError("encode_ligase: external vector " + shape_string(lig.input)
                       + ", expected (1x" + std::to_string(cfg_.external_dim) + ")");
    out.z_seq = linear(tape, tape.constant(lig.input), "seq.W_O", "seq.b_O");
    out.states = out.z_seq;
    break;
  }
  return out;
}

Model::Fusion Model::fuse(Tape &tape, Var z_mol, const SeqEncoding &seq) {
  if (z_mol.rows() != 1 || z_mol.cols() != cfg_.z_mol())
    throw ShapeError("fuse: z_mol " + shape_string(z_mol.value()));
  if (seq.z_seq.cols() != cfg_.seq_embed)
    throw ShapeError("fuse: z_seq " + shape_string(seq.z_seq.value()));
  Fusion out;
  if (cfg_.fusion_mode == FusionMode::kConcat) {
    out.pre_activation = linear(tape, concat_cols({ z_mol, seq.z_seq }),
                                "fuse.W", "fuse.b");
  } else {
    const int heads = cfg_.attention_heads;
    const int dh = cfg_.hidden / heads;
    Var q = matmul(z_mol, param(tape, "attn.W_q"));
    Var k = matmul(seq.states, param(tape, "attn.W_k"));
    Var v = matmul(seq.states, param(tape, "attn.W_v"));
    std::vector<Var> parts;
    for (int hd = 0; hd < heads; ++hd) {
      Var qh = slice_cols(q, hd * dh, dh);
      Var kh = slice_cols(k, hd * dh, dh);
      Var vh = slice_cols(v, hd * dh, dh);
      Var scores = scale(matmul(qh, transpose(kh)), 1.0 / std::sqrt(double(dh)));
      Var weights = softmax_rows(scores);
      out.attention.push_back(weights.value());
      parts.push_back(matmul(weights, vh));
    }
    Var attn = heads == 1 ? parts[0] : concat_cols(parts);
    out.pre_activation = linear(tape, concat_cols({ z_mol, attn }),
                                "attn.W_f", "attn.b_f");
  }
  out.fused = relu(out.pre_activation);
  return out;
}

Var Model::gru(Tape &tape, Var h, Var x) {
  auto gate = [&](const char *w, const char *u, const char *b) {
    return add(add(matmul(x, param(tape, w)), matmul(h, param(tape, u))),
               param(tape, b));
  };
  Var z = sigmoid(gate("dec.gru.W_z", "dec.gru.U_z", "dec.gru.b_z"));
  Var r = sigmoid(gate("dec.gru.W_r", "dec.gru.U_r", "dec.gru.b_r"));
  Var cand = ops::tanh(add(add(matmul(x, param(tape, "dec.gru.W_h")),
                               matmul(mul(r, h), param(tape, "dec.gru.U_h"))),
                           param(tape, "dec.gru.b_h")));
  // h' = h + z * (cand - h)
  return add(h, mul(z, sub(cand, h)));
}

Var Model::step_input(Tape &tape, int label, bool down, Var z_fused) {
  const int idx[1] = { label };
  Mat dir(1, 1);
  dir(0, 0) = down ? 1.0 : 0.0;
  return concat_cols({ gather_rows(param(tape, "emb"), idx), tape.constant(dir),
                       z_fused });
}

Var Model::score_candidates(Tape &tape, const CandidateTensors &t, Var z_fused) {
  Var xa = add(matmul(tape.constant(t.x), param(tape, "asm.W_a")),
               param(tape, "asm.b"));
  Var adj = tape.constant(t.adj);
  Var hc = relu(xa);
  for (int it = 1; it < cfg_.assembly_iters; ++it)
    hc = relu(add(xa, matmul(matmul(adj, hc), param(tape, "asm.W_n"))));
  Var pooled = matmul(tape.constant(t.pool), hc);
  Var q = matmul(z_fused, param(tape, "asm.W_s"));
  return matmul(q, transpose(pooled));
}

namespace {
int argmax_row(const Mat &m, Eigen::Index r) {
  Eigen::Index best = 0;
  m.row(r).maxCoeff(&best);
  return static_cast<int>(best);
}
}  // namespace

Model::Decoded Model::decode_teacher_forced(Tape &tape, Var z_fused,
                                            const PreparedMolecule &m) {
  Decoded out;
  const int root = m.tree.root;
  Var h = ops::tanh(linear(tape, z_fused, "dec.W_init", "dec.b_init"));
  std::vector<Var> label_rows = { h };
  std::vector<int> label_targets = { m.labels[root] };
  h = gru(tape, h, step_input(tape, m.labels[root], true, z_fused));
  std::vector<Var> topo_rows;
  std::vector<double> topo_targets;

  std::function<void(int)> visit = [&](int u) {
    for (int c: m.children[u]) {
      topo_rows.push_back(h);
      topo_targets.push_back(1);
      label_rows.push_back(h);
      label_targets.push_back(m.labels[c]);
      h = gru(tape, h, step_input(tape, m.labels[c], true, z_fused));
      visit(c);
    }
    topo_rows.push_back(h);
    topo_targets.push_back(0);
    if (u != root)
      h = gru(tape, h, step_input(tape, m.labels[u], false, z_fused));
  };
  visit(root);

  Var topo_logits = linear(tape, concat_rows(topo_rows), "dec.topo.W", "dec.topo.b");
  Mat tgt(static_cast<Eigen::Index>(topo_targets.size()), 1);
  for (std::size_t i = 0; i < topo_targets.size(); ++i)
    tgt(static_cast<Eigen::Index>(i), 0) = topo_targets[i];
  out.topology = binary_cross_entropy(topo_logits, tgt);
  for (Eigen::Index i = 0; i < tgt.rows(); ++i)
    out.topo_correct += (topo_logits.value()(i, 0) > 0) == (tgt(i, 0) > 0.5);
  out.topo_total = static_cast<int>(tgt.rows());

  Var label_logits =
      linear(tape, concat_rows(label_rows), "dec.label.W", "dec.label.b");
  out.label = softmax_cross_entropy(label_logits, label_targets);
  for (std::size_t i = 0; i < label_targets.size(); ++i)
    out.label_correct +=
        argmax_row(label_logits.value(), static_cast<Eigen::Index>(i))
        == label_targets[i];
  out.label_total = static_cast<int>(label_targets.size());

  std::vector<Var> asm_losses;
  for (const AssemblyTarget &t: m.assembly) {
    Var scores = score_candidates(tape, t.tensors, z_fused);
    const int target[1] = { t.target };
    asm_losses.push_back(softmax_cross_entropy(scores, target));
    out.asm_correct += argmax_row(scores.value(), 0) == t.target;
    ++out.asm_total;
  }
  if (asm_losses.empty()) {
    out.assembly = tape.constant(Mat::Zero(1, 1));
  } else {
    out.assembly = asm_losses[0];
    for (std::size_t i = 1; i < asm_losses.size(); ++i)
      out.assembly = add(out.assembly, asm_losses[i]);
  }
  return out;
}

double kl_divergence(const Mat &mean, const Mat &logvar) {
  return 0.5 * (mean.array().square() + logvar.array().exp() - 1.0
                - logvar.array()).sum();
}

namespace {
Var kl_term(Var mean, Var logvar) {
  Var terms = sub(add(mul(mean, mean), ops::exp(logvar)), add_scalar(logvar, 1.0));
  return scale(sum(terms), 0.5);
}
}  // namespace

LatentSample reparameterize(Tape &tape, Var mean, Var logvar, Rng &rng) {
  const Mat &mu = mean.value();
  const Mat &lv = logvar.value();
  if (mu.rows() != lv.rows() || mu.cols() != lv.cols())
    throw ShapeError("reparameterize: mean " + shape_string(mu) + " vs logvar "
                     + shape_string(lv));
  if (!mu.allFinite() || !lv.allFinite())
    throw NonFiniteLossError("reparameterize: non-finite mean or logvar", -1, -1);
  Mat eps(mu.rows(), mu.cols());
  for (Eigen::Index i = 0; i < eps.size(); ++i)
    eps.data()[i] = rng.normal();
  LatentSample s;
  Var sd = ops::exp(scale(logvar, 0.5));
  s.z = add(mean, mul(sd, tape.constant(eps)));
  s.kl = kl_term(mean, logvar);
  return s;
}

Model::BatchResult Model::batch_loss(Tape &tape,
                                     std::span<const TrainingExample> batch,
                                     double beta, Rng *reparam) {
  if (batch.empty())
    throw Error("batch_loss: empty batch");
  std::vector<std::pair<const PreparedLigase *, SeqEncoding>> seq_cache;
  Var topo, label, assembly, kl;
  int lc = 0, lt = 0, tc = 0, tt = 0, ac = 0, at = 0;
  for (std::size_t i = 0; i < batch.size(); ++i) {
    const TrainingExample &ex = batch[i];
    MolEncoding enc = encode_molecule(tape, *ex.mol);
    SeqEncoding *seq = nullptr;
    for (auto &[lig, s]: seq_cache) {
      if (lig == ex.ligase)
        seq = &s;
    }
    if (seq == nullptr) {
      seq_cache.emplace_back(ex.ligase, encode_ligase(tape, *ex.ligase));
      seq = &seq_cache.back().second;
    }
    LatentSample zt, zg;
    if (reparam != nullptr) {
      zt = reparameterize(tape, enc.tree_mean, enc.tree_logvar, *reparam);
      zg = reparameterize(tape, enc.graph_mean, enc.graph_logvar, *reparam);
    } else {
      zt = { enc.tree_mean, kl_term(enc.tree_mean, enc.tree_logvar) };
      zg = { enc.graph_mean, kl_term(enc.graph_mean, enc.graph_logvar) };
    }
    Fusion fu = fuse(tape, concat_cols({ zt.z, zg.z }), *seq);
    Decoded d = decode_teacher_forced(tape, fu.fused, *ex.mol);
    Var k = add(zt.kl, zg.kl);
    if (i == 0) {
      topo = d.topology;
      label = d.label;
      assembly = d.assembly;
      kl = k;
    } else {
      topo = add(topo, d.topology);
      label = add(label, d.label);
      assembly = add(assembly, d.assembly);
      kl = add(kl, k);
    }
    lc += d.label_correct;
    lt += d.label_total;
    tc += d.topo_correct;
    tt += d.topo_total;
    ac += d.asm_correct;
    at += d.asm_total;
  }
  const double inv = 1.0 / static_cast<double>(batch.size());
  BatchResult r;
  r.loss = scale(add(add(add(topo, label), assembly), scale(kl, beta)), inv);
  LossReport &rep = r.report;
  rep.recon_topology = topo.item() * inv;
  rep.recon_label = label.item() * inv;
  rep.recon_assembly = assembly.item() * inv;
  rep.kl = kl.item() * inv;
  rep.beta = beta;
  rep.total = r.loss.item();
  rep.wacc = lt > 0 ? double(lc) / lt : 1.0;
  rep.tacc = tt > 0 ? double(tc) / tt : 1.0;
  rep.sacc = at > 0 ? double(ac) / at : 1.0;
  return r;
}

}  // namespace lcjt
