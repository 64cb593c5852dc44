//
// Project lcjtvae - Copyright 2026 The lcjtvae Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <cmath>
#include <filesystem>
#include <numbers>
#include <random>
#include <set>

#include <Eigen/LU>
#include <gtest/gtest.h>

#include "gradcheck.h"
#include "lcjt/chem/smiles.h"
#include "lcjt/chem/valence.h"
#include "lcjt/error.h"
#include "lcjt/model/trainer.h"
#include "lcjt/tensor/ops.h"
#include "test_util.h"

namespace lcjt {
namespace {

constexpr const char *kLigase = "MEAEGRPRPVLRSVNSREPSQVIFCNRSPRVVLPVWLNFDGEPQPY";

struct Corpus {
  std::vector<Molecule> mols;
  Vocabulary vocab;
  std::vector<PreparedMolecule> prepared;
};

Corpus make_corpus(const std::vector<std::string> &smiles) {
  Corpus c;
  for (const std::string &s: smiles)
    c.mols.push_back(parse_smiles(s));
  c.vocab = build_vocabulary(c.mols);
  for (const Molecule &m: c.mols)
    c.prepared.push_back(prepare_molecule(m, nullptr, c.vocab));
  return c;
}

ModelConfig tiny_config() {
  ModelConfig cfg;
  cfg.hidden = 6;
  cfg.z_tree = 2;
  cfg.z_graph = 2;
  cfg.seq_embed = 4;
  cfg.fused = 5;
  cfg.mp_iters = 2;
  cfg.tree_iters = 2;
  cfg.assembly_iters = 2;
  cfg.external_dim = 3;
  return cfg;
}

Mat row(std::initializer_list<double> v) {
  Mat m(1, static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x: v)
    m(0, i++) = x;
  return m;
}

const std::vector<std::string> kSmall = { "CCO", "c1ccccc1C(=O)O", "CC(C)Cc1ccccc1",
                                          "c1ccc2ccccc2c1", "CNC(=O)C1CCCC1" };

// Encoder

TEST(EncodeMolecule, OutputShapes) {
  Corpus c = make_corpus(kSmall);
  ModelConfig cfg;
  cfg.z_tree = 3;
  cfg.z_graph = 5;
  Model model(cfg, c.vocab, 1);
  for (const PreparedMolecule &pm: c.prepared) {
    Tape t;
    Model::MolEncoding e = model.encode_molecule(t, pm);
    EXPECT_EQ(e.tree_mean.value().cols(), 3);
    EXPECT_EQ(e.tree_logvar.value().cols(), 3);
    EXPECT_EQ(e.graph_mean.value().cols(), 5);
    EXPECT_EQ(e.graph_logvar.value().cols(), 5);
    EXPECT_EQ(e.tree_mean.value().rows(), 1);
  }
}

TEST(EncodeMolecule, AtomOrderInvariance) {
  Corpus c = make_corpus(kSmall);
  Model model(ModelConfig {}, c.vocab, 2);
  std::mt19937_64 gen(11);
  for (const Molecule &m: c.mols) {
    for (int rep = 0; rep < 3; ++rep) {
      Molecule p = test::shuffled(m, gen);
      PreparedMolecule a = prepare_molecule(m, nullptr, c.vocab);
      PreparedMolecule b = prepare_molecule(p, nullptr, c.vocab);
      Tape t;
      Model::MolEncoding ea = model.encode_molecule(t, a);
      Model::MolEncoding eb = model.encode_molecule(t, b);
      EXPECT_LE((ea.tree_mean.value() - eb.tree_mean.value()).cwiseAbs().maxCoeff(), 1e-9);
      EXPECT_LE((ea.graph_mean.value() - eb.graph_mean.value()).cwiseAbs().maxCoeff(), 1e-9);
      EXPECT_LE((ea.graph_logvar.value() - eb.graph_logvar.value()).cwiseAbs().maxCoeff(), 1e-9);
    }
  }
}

TEST(EncodeMolecule, TorsionChangesGraphMean) {
  Molecule butane = parse_smiles("CCCC");
  std::vector<Molecule> corpus = { butane };
  Vocabulary vocab = build_vocabulary(corpus);
  // Gauche butane, C1-C2-C3-C4 at 60 degrees.
  const double phi = std::numbers::pi / 3;
  Conformer conf;
  conf.coords = { { 1, 0, 0 }, { 0, 0, 0 }, { 0, 0, 1.5 },
                  { std::cos(phi), std::sin(phi), 1.5 } };
  PreparedMolecule with = prepare_molecule(butane, &conf, vocab);
  PreparedMolecule without = prepare_molecule(butane, nullptr, vocab);
  ASSERT_NE(with.graph.edge_x, without.graph.edge_x);

  Model model(ModelConfig {}, vocab, 3);
  Tape t;
  Mat a = model.encode_molecule(t, with).graph_mean.value();
  Mat b = model.encode_molecule(t, without).graph_mean.value();
  EXPECT_GT((a - b).cwiseAbs().maxCoeff(), 1e-8);
  // The tree stream never sees torsions.
  EXPECT_EQ(model.encode_molecule(t, with).tree_mean.value(),
            model.encode_molecule(t, without).tree_mean.value());
}

TEST(EncodeMolecule, UnknownLabelIsVocabularyError) {
  Corpus c = make_corpus({ "CCO" });
  EXPECT_THROW(prepare_molecule(parse_smiles("c1ccccc1"), nullptr, c.vocab),
               VocabularyError);
}

// Ligase encoders

TEST(Kmer, SingleRepeatHasOneCount) {
  Mat counts = kmer_counts("AAA");
  ASSERT_EQ(counts.cols(), kNumKmers);
  EXPECT_EQ((counts.array() != 0).count(), 1);
  EXPECT_EQ(counts(0, 0), 1);
}

TEST(Kmer, ReversedSequenceDiffers) {
  // ACD is index 0*400 + 1*20 + 2 = 22; DCA is 2*400 + 1*20 + 0 = 820.
  Mat a = kmer_counts("ACD");
  Mat b = kmer_counts("DCA");
  EXPECT_EQ(a(0, 22), 1);
  EXPECT_EQ(b(0, 820), 1);
  EXPECT_NE(a, b);
  EXPECT_NEAR(kmer_features("ACDACD").norm(), 1.0, 1e-12);
}

TEST(Kmer, UnknownResidueThrows) {
  EXPECT_THROW(kmer_counts("ACXD"), ParseError);
  EXPECT_THROW(onehot_residues("AC1"), ParseError);
}

TEST(EncodeLigase, DeterministicPerMode) {
  Corpus c = make_corpus({ "CCO" });
  for (SeqEncoderMode mode: { SeqEncoderMode::kKmer, SeqEncoderMode::kOnehotRnn }) {
    ModelConfig cfg;
    cfg.seq_encoder_mode = mode;
    Model model(cfg, c.vocab, 4);
    PreparedLigase lig = prepare_ligase({ "L", kLigase, {} }, cfg);
    Tape t;
    Mat a = model.encode_ligase(t, lig).z_seq.value();
    Mat b = model.encode_ligase(t, lig).z_seq.value();
    EXPECT_EQ(a, b);
    EXPECT_EQ(a.cols(), cfg.seq_embed);
  }
}

TEST(EncodeLigase, RnnStatesPerResidue) {
  Corpus c = make_corpus({ "CCO" });
  ModelConfig cfg;
  cfg.seq_encoder_mode = SeqEncoderMode::kOnehotRnn;
  Model model(cfg, c.vocab, 4);
  PreparedLigase lig = prepare_ligase({ "L", "ACDEFG", {} }, cfg);
  Tape t;
  Model::SeqEncoding s = model.encode_ligase(t, lig);
  ASSERT_EQ(s.states.value().rows(), 6);
  EXPECT_LE((s.states.value().colwise().mean() - s.z_seq.value()).cwiseAbs().maxCoeff(),
            1e-12);
}

TEST(EncodeLigase, ExternalDimensionChecked) {
  ModelConfig cfg;
  cfg.seq_encoder_mode = SeqEncoderMode::kExternal;
  cfg.external_dim = 3;
  EXPECT_NO_THROW(prepare_ligase({ "L", "", { 1, 2, 3 } }, cfg));
  EXPECT_THROW(prepare_ligase({ "L", "", { 1, 2 } }, cfg), ShapeError);
  ModelConfig kmer;
  EXPECT_THROW(prepare_ligase({ "L", "", {} }, kmer), Error);
}

// Fusion

TEST(Fusion, ConcatIdentityIsRelu) {
  Corpus c = make_corpus({ "CCO" });
  ModelConfig cfg;
  cfg.z_tree = 1;
  cfg.z_graph = 1;
  cfg.seq_embed = 2;
  cfg.fused = 4;
  Model model(cfg, c.vocab, 5);
  model.params().get("fuse.W").value = Mat::Identity(4, 4);
  model.params().get("fuse.b").value.setZero();
  Tape t;
  Model::SeqEncoding seq { t.constant(row({ 0.5, -2 })), {} };
  seq.states = seq.z_seq;
  Model::Fusion f = model.fuse(t, t.constant(row({ -1, 3 })), seq);
  EXPECT_EQ(f.fused.value(), row({ 0, 3, 0.5, 0 }));
  EXPECT_EQ(f.pre_activation.value(), row({ -1, 3, 0.5, -2 }));
}

TEST(Fusion, AttentionOverOneKeyReturnsValue) {
  Corpus c = make_corpus({ "CCO" });
  ModelConfig cfg;
  cfg.fusion_mode = FusionMode::kCrossAttention;
  cfg.z_tree = 2;
  cfg.z_graph = 2;
  cfg.seq_embed = 3;
  cfg.hidden = 4;
  cfg.fused = 8;
  Model model(cfg, c.vocab, 6);
  // W_f = identity exposes [z_mol | attention output] directly.
  model.params().get("attn.W_f").value = Mat::Identity(8, 8);
  Tape t;
  Mat state = row({ 0.3, -0.7, 1.1 });
  Model::SeqEncoding seq { t.constant(state), t.constant(state) };
  Mat z = row({ 0.1, 0.2, 0.3, 0.4 });
  Model::Fusion f = model.fuse(t, t.constant(z), seq);
  ASSERT_EQ(f.attention.size(), 1u);
  EXPECT_EQ(f.attention[0](0, 0), 1.0);
  Mat value = state * model.params().get("attn.W_v").value;
  Mat expected(1, 8);
  expected << z, value;
  EXPECT_LE((f.pre_activation.value() - expected).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Fusion, AttentionWeightsSumToOne) {
  Corpus c = make_corpus({ "CCO" });
  ModelConfig cfg;
  cfg.fusion_mode = FusionMode::kCrossAttention;
  cfg.seq_encoder_mode = SeqEncoderMode::kOnehotRnn;
  cfg.attention_heads = 4;
  Model model(cfg, c.vocab, 7);
  PreparedLigase lig = prepare_ligase({ "L", kLigase, {} }, cfg);
  Rng rng(3, "z");
  for (int trial = 0; trial < 5; ++trial) {
    Tape t;
    Mat z(1, cfg.z_mol());
    for (Eigen::Index i = 0; i < z.size(); ++i)
      z(0, i) = 3 * rng.normal();
    Model::Fusion f = model.fuse(t, t.constant(z), model.encode_ligase(t, lig));
    ASSERT_EQ(f.attention.size(), 4u);
    for (const Mat &w: f.attention) {
      EXPECT_EQ(w.cols(), static_cast<Eigen::Index>(std::string_view(kLigase).size()));
      EXPECT_NEAR(w.sum(), 1.0, 1e-12);
      EXPECT_GE(w.minCoeff(), 0.0);
    }
  }
}

TEST(Fusion, FullRankWeightSeparatesSequences) {
  Corpus c = make_corpus({ "CCO" });
  ModelConfig cfg;
  cfg.z_tree = 2;
  cfg.z_graph = 2;
  cfg.seq_embed = 4;
  cfg.fused = 8;
  Model model(cfg, c.vocab, 8);
  const Mat &w = model.params().get("fuse.W").value;
  ASSERT_EQ(Eigen::FullPivLU<Mat>(w).rank(), 8);
  Tape t;
  Var z = t.constant(row({ 0.2, -0.1, 0.4, 0.9 }));
  Var s1 = t.constant(row({ 1, 0, 0, 0 }));
  Var s2 = t.constant(row({ 1, 0, 0, 1e-3 }));
  Mat p1 = model.fuse(t, z, { s1, s1 }).pre_activation.value();
  Mat p2 = model.fuse(t, z, { s2, s2 }).pre_activation.value();
  EXPECT_GT((p1 - p2).cwiseAbs().maxCoeff(), 0.0);
}

TEST(Fusion, DimensionMismatchThrows) {
  Corpus c = make_corpus({ "CCO" });
  Model model(ModelConfig {}, c.vocab, 9);
  Tape t;
  Var seq = t.constant(Mat::Zero(1, 128));
  EXPECT_THROW(model.fuse(t, t.constant(Mat::Zero(1, 5)), { seq, seq }), ShapeError);
}

// Latent

TEST(Kl, ClosedFormValues) {
  EXPECT_EQ(kl_divergence(row({ 0, 0, 0 }), row({ 0, 0, 0 })), 0.0);
  EXPECT_NEAR(kl_divergence(row({ 1 }), row({ 0 })), 0.5, 1e-15);
  EXPECT_NEAR(kl_divergence(row({ 0 }), row({ std::log(4.0) })),
              0.5 * (4 - 1 - std::log(4.0)), 1e-15);
  EXPECT_NEAR(0.5 * (4 - 1 - std::log(4.0)), 0.8069, 1e-4);
}

TEST(Kl, ReparameterizeMatchesAndIsNonNegative) {
  Rng eps(1, "reparam");
  std::mt19937_64 gen(5);
  std::normal_distribution<double> nd(0, 2);
  for (int trial = 0; trial < 50; ++trial) {
    Mat mu(1, 4), lv(1, 4);
    for (int i = 0; i < 4; ++i) {
      mu(0, i) = nd(gen);
      lv(0, i) = nd(gen);
    }
    Tape t;
    LatentSample s = reparameterize(t, t.constant(mu), t.constant(lv), eps);
    EXPECT_NEAR(s.kl.item(), kl_divergence(mu, lv), 1e-12);
    EXPECT_GE(s.kl.item(), 0.0);
  }
}

TEST(Kl, ReparameterizeUsesStream) {
  Mat mu = row({ 1, -1 });
  Mat lv = row({ std::log(4.0), 0 });
  Rng a(9, "reparam");
  Rng b(9, "reparam");
  const double e0 = b.normal();
  const double e1 = b.normal();
  Tape t;
  LatentSample s = reparameterize(t, t.constant(mu), t.constant(lv), a);
  EXPECT_DOUBLE_EQ(s.z.value()(0, 0), 1 + 2 * e0);
  EXPECT_DOUBLE_EQ(s.z.value()(0, 1), -1 + e1);
  Tape t2;
  Mat bad = row({ NAN, 0 });
  EXPECT_THROW(reparameterize(t2, t2.constant(bad), t2.constant(lv), a), Error);
}

// Schedule

TEST(Schedule, BetaTrajectory) {
  TrainingSchedule s;
  EXPECT_EQ(s.beta(0), 0.0);
  EXPECT_NEAR(s.beta(250), 0.5, 1e-12);
  EXPECT_EQ(s.beta(500), 1.0);
  EXPECT_EQ(s.beta(10000), 1.0);
  double prev = 0;
  for (int i = 0; i < 700; ++i) {
    EXPECT_GE(s.beta(i), prev);
    EXPECT_LE(s.beta(i), 1.0);
    prev = s.beta(i);
  }
}

TEST(Schedule, TrainerAdvancesBetaPerBatch) {
  Corpus c = make_corpus(kSmall);
  Model model(tiny_config(), c.vocab, 10);
  PreparedLigase lig = prepare_ligase({ "L", kLigase, {} }, model.config());
  std::vector<TrainingExample> data;
  for (const PreparedMolecule &pm: c.prepared)
    data.push_back({ &pm, &lig });
  TrainingSchedule s;
  s.batch_size = 2;  // 3 batches per epoch
  Trainer tr(model, s, 1);
  LossReport r = tr.train_epoch(data);
  EXPECT_EQ(tr.beta_step(), 3);
  EXPECT_NEAR(tr.beta(), 0.006, 1e-15);
  EXPECT_NEAR(r.beta, (0 + 0.002 + 0.004) / 3, 1e-15);
}

TEST(Schedule, ConfigRoundTrip) {
  ModelConfig cfg = tiny_config();
  cfg.fusion_mode = FusionMode::kCrossAttention;
  cfg.attention_heads = 2;
  EXPECT_EQ(ModelConfig::from_map(cfg.to_map()), cfg);
  ModelConfig bad = cfg;
  bad.attention_heads = 4;  // hidden 6 not divisible
  EXPECT_THROW(bad.validate(), Error);
  std::map<std::string, std::string> kv = { { "lr", "abc" } };
  EXPECT_THROW(TrainingSchedule::from_map(kv), Error);
}

// Decoder

TEST(Decode, BenzeneSingleNode) {
  Corpus c = make_corpus({ "c1ccccc1" });
  ASSERT_EQ(c.prepared[0].tree.nodes.size(), 1u);
  Model model(ModelConfig {}, c.vocab, 11);
  Tape t;
  Var z = t.constant(Mat::Constant(1, model.config().fused, 0.1));
  Model::Decoded d = model.decode_teacher_forced(t, z, c.prepared[0]);
  EXPECT_EQ(d.label_total, 1);
  EXPECT_TRUE(d.label_correct == 0 || d.label_correct == 1);
  EXPECT_EQ(d.topo_total, 1);  // the single stop decision at the root
  EXPECT_EQ(d.asm_total, 0);
}

TEST(Decode, EthanolFiniteUntrained) {
  Corpus c = make_corpus({ "CCO" });
  Model model(ModelConfig {}, c.vocab, 12);
  PreparedLigase lig = prepare_ligase({ "L", kLigase, {} }, model.config());
  std::vector<TrainingExample> batch = { { &c.prepared[0], &lig } };
  Rng rng(1, "reparam");
  Tape t;
  LossReport r = model.batch_loss(t, batch, 0.3, &rng).report;
  for (double v: { r.total, r.recon_topology, r.recon_label, r.recon_assembly, r.kl })
    EXPECT_TRUE(std::isfinite(v));
  for (double a: { r.wacc, r.tacc, r.sacc }) {
    EXPECT_GE(a, 0.0);
    EXPECT_LE(a, 1.0);
  }
  EXPECT_GE(r.kl, 0.0);
}

TEST(Decode, DecisionCounts) {
  Corpus c = make_corpus(kSmall);
  Model model(ModelConfig {}, c.vocab, 13);
  for (const PreparedMolecule &pm: c.prepared) {
    Tape t;
    Var z = t.constant(Mat::Zero(1, model.config().fused));
    Model::Decoded d = model.decode_teacher_forced(t, z, pm);
    const int n = static_cast<int>(pm.tree.nodes.size());
    EXPECT_EQ(d.label_total, n);
    EXPECT_EQ(d.topo_total, 2 * n - 1);
    EXPECT_EQ(d.asm_total, static_cast<int>(pm.assembly.size()));
  }
}

TEST(Decode, LossAdditivity) {
  Corpus c = make_corpus(kSmall);
  Model model(ModelConfig {}, c.vocab, 14);
  PreparedLigase lig = prepare_ligase({ "L", kLigase, {} }, model.config());
  std::vector<TrainingExample> batch;
  for (const PreparedMolecule &pm: c.prepared)
    batch.push_back({ &pm, &lig });
  Rng rng(2, "reparam");
  for (double beta: { 0.0, 0.37, 1.0 }) {
    Tape t;
    LossReport r = model.batch_loss(t, batch, beta, &rng).report;
    EXPECT_NEAR(r.total, r.recon() + beta * r.kl, 1e-9);
    EXPECT_EQ(r.beta, beta);
  }
}

// Gradients

struct GradCase {
  FusionMode fusion;
  SeqEncoderMode seq;
  int heads;
};

class FullGradient : public ::testing::TestWithParam<GradCase> {};

TEST_P(FullGradient, MatchesFiniteDifferences) {
  const GradCase gc = GetParam();
  Corpus c = make_corpus({ "CC(=O)Oc1ccccc1", "Cc1cccc(C)c1", "CCC1CCNC1" });
  ModelConfig cfg = tiny_config();
  cfg.fusion_mode = gc.fusion;
  cfg.seq_encoder_mode = gc.seq;
  cfg.attention_heads = gc.heads;
  Model model(cfg, c.vocab, 15);
  // Lift biases off zero so every term carries gradient.
  Rng init(4, "biases");
  for (Parameter *p: model.params().all()) {
    if (p->value.rows() == 1) {
      for (Eigen::Index i = 0; i < p->value.size(); ++i)
        p->value.data()[i] = 0.1 * init.normal();
    }
  }
  PreparedLigase lig = prepare_ligase({ "L", "MEAEGRPRPV", { 0.5, -1.0, 2.0 } }, cfg);
  std::vector<TrainingExample> batch;
  for (const PreparedMolecule &pm: c.prepared)
    batch.push_back({ &pm, &lig });
  ASSERT_GT(c.prepared[0].assembly.size() + c.prepared[1].assembly.size(), 0u);

  auto loss = [&](Tape &t) {
    Rng rng(21, "reparam");
    return model.batch_loss(t, batch, 0.5, &rng).loss;
  };
  std::vector<std::pair<std::string, double>> blocks;
  double worst = test::check_params(loss, model.params(), 1e-5, &blocks, 200);
  for (const auto &[name, e]: blocks)
    EXPECT_LE(e, 1e-4) << name;
  EXPECT_LE(worst, 1e-4);
  EXPECT_GE(blocks.size(), 20u);
}

INSTANTIATE_TEST_SUITE_P(
    Modes, FullGradient,
    ::testing::Values(GradCase { FusionMode::kConcat, SeqEncoderMode::kKmer, 1 },
                      GradCase { FusionMode::kCrossAttention, SeqEncoderMode::kOnehotRnn, 2 },
                      GradCase { FusionMode::kConcat, SeqEncoderMode::kExternal, 1 }));

// Training

struct Fixture {
  Corpus corpus;
  PreparedLigase ligase;
  std::vector<TrainingExample> data;

  explicit Fixture(const ModelConfig &cfg) : corpus(make_corpus(kSmall)) {
    ligase = prepare_ligase({ "L", kLigase, {} }, cfg);
    for (const PreparedMolecule &pm: corpus.prepared)
      data.push_back({ &pm, &ligase });
  }
};

std::vector<LossReport> run(Trainer &tr, std::span<const TrainingExample> data, int epochs) {
  std::vector<LossReport> out;
  for (int e = 0; e < epochs; ++e)
    out.push_back(tr.train_epoch(data));
  return out;
}

void expect_identical(const std::vector<LossReport> &a, const std::vector<LossReport> &b) {
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].total, b[i].total) << i;
    EXPECT_EQ(a[i].kl, b[i].kl) << i;
    EXPECT_EQ(a[i].wacc, b[i].wacc) << i;
    EXPECT_EQ(a[i].sacc, b[i].sacc) << i;
  }
}

TEST(Train, SeededRunsAreBitIdentical) {
  ModelConfig cfg = tiny_config();
  Fixture f(cfg);
  TrainingSchedule s;
  s.batch_size = 2;
  Model m1(cfg, f.corpus.vocab, 30);
  Model m2(cfg, f.corpus.vocab, 30);
  Trainer t1(m1, s, 30);
  Trainer t2(m2, s, 30);
  expect_identical(run(t1, f.data, 3), run(t2, f.data, 3));
  Model m3(cfg, f.corpus.vocab, 31);
  Trainer t3(m3, s, 31);
  EXPECT_NE(run(t3, f.data, 1)[0].total, run(t1, f.data, 1)[0].total);
}

TEST(Train, LossDecreases) {
  ModelConfig cfg;
  Fixture f(cfg);
  TrainingSchedule s;
  s.batch_size = 1;
  s.lr_decay = 1.0;
  Model m(cfg, f.corpus.vocab, 32);
  Trainer tr(m, s, 32);
  std::vector<LossReport> r = run(tr, f.data, 40);
  EXPECT_LT(r.back().total, 0.5 * r.front().total);
  EXPECT_GT(evaluate_teacher_forced(m, f.data, tr.beta()).wacc, 0.5);
}

TEST(Train, CheckpointResumeIsBitExact) {
  ModelConfig cfg = tiny_config();
  cfg.fusion_mode = FusionMode::kCrossAttention;
  Fixture f(cfg);
  TrainingSchedule s;
  s.batch_size = 2;
  s.lr_decay = 0.95;

  Model straight(cfg, f.corpus.vocab, 40);
  Trainer ts(straight, s, 40);
  std::vector<LossReport> full = run(ts, f.data, 4);

  Model first(cfg, f.corpus.vocab, 40);
  Trainer tf(first, s, 40);
  run(tf, f.data, 2);
  const auto path = std::filesystem::temp_directory_path() / "lcjt_model_test.ckpt";
  save_checkpoint(path.string(), tf.checkpoint());

  Checkpoint loaded = load_checkpoint(path.string());
  std::filesystem::remove(path);
  std::unique_ptr<Model> resumed = model_from_checkpoint(loaded);
  EXPECT_EQ(resumed->config(), cfg);
  EXPECT_EQ(resumed->vocab().size(), f.corpus.vocab.size());
  Trainer tr(*resumed, schedule_from_checkpoint(loaded), 999);
  tr.restore(loaded);
  EXPECT_EQ(tr.epoch(), 2);
  std::vector<LossReport> tail = run(tr, f.data, 2);
  expect_identical({ full[2], full[3] }, tail);
  for (const Parameter *p: straight.params().all())
    EXPECT_EQ(p->value, resumed->params().get(p->name).value) << p->name;
}

TEST(Train, NonFiniteLossNamesBatch) {
  ModelConfig cfg = tiny_config();
  Fixture f(cfg);
  TrainingSchedule s;
  s.batch_size = 2;
  Model m(cfg, f.corpus.vocab, 41);
  m.params().get("dec.label.b").value(0, 0) = INFINITY;
  Trainer tr(m, s, 41);
  try {
    tr.train_epoch(f.data);
    FAIL() << "expected NonFiniteLossError";
  } catch (const NonFiniteLossError &e) {
    EXPECT_EQ(e.epoch(), 1);
    EXPECT_EQ(e.batch(), 0);
  }
}

// Generation

TEST(Generate, ZeroSamples) {
  Corpus c = make_corpus(kSmall);
  Model model(ModelConfig {}, c.vocab, 50);
  PreparedLigase lig = prepare_ligase({ "L", kLigase, {} }, model.config());
  Rng rng(1, "sample");
  EXPECT_TRUE(model.generate(lig, 0, rng).empty());
}

TEST(Generate, DeterministicAndValid) {
  ModelConfig cfg;
  Fixture f(cfg);
  TrainingSchedule s;
  s.batch_size = 5;
  s.lr_decay = 1.0;
  Model model(cfg, f.corpus.vocab, 51);
  Trainer tr(model, s, 51);
  run(tr, f.data, 15);

  Rng r1(7, "sample");
  Rng r2(7, "sample");
  std::vector<GeneratedSample> a = model.generate(f.ligase, 100, r1);
  std::vector<GeneratedSample> b = model.generate(f.ligase, 100, r2);
  ASSERT_EQ(a.size(), 100u);
  const std::set<std::string> statuses = { "ok", "no_valid_attachment",
                                           "kekulize_failed", "valence_failed" };
  int ok = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].smiles, b[i].smiles);
    EXPECT_EQ(a[i].status, b[i].status);
    EXPECT_TRUE(statuses.count(a[i].status)) << a[i].status;
    EXPECT_LE(a[i].nodes, cfg.max_decode_nodes);
    if (a[i].status != "ok")
      continue;
    ++ok;
    Molecule m = parse_smiles(a[i].smiles);
    EXPECT_TRUE(check_valence(m).ok) << a[i].smiles;
    EXPECT_EQ(write_canonical_smiles(m), a[i].smiles);
  }
  EXPECT_GT(ok, 0);
}

// Assembly targets

TEST(AssemblyTargets, XyleneIsomersAreDistinguished) {
  Corpus c = make_corpus({ "Cc1ccccc1C", "Cc1cccc(C)c1", "Cc1ccc(C)cc1", "Cc1ccccc1" });
  std::set<int> targets;
  for (std::size_t i = 0; i < 3; ++i) {
    const PreparedMolecule &pm = c.prepared[i];
    EXPECT_EQ(pm.assembly_skipped, 0) << pm.smiles;
    EXPECT_EQ(pm.assembly_edges, 2);
    // The first methyl has one placement; the second has ortho, meta, para.
    ASSERT_EQ(pm.assembly.size(), 1u) << pm.smiles;
    EXPECT_EQ(pm.assembly[0].num_candidates, 3) << pm.smiles;
    targets.insert(pm.assembly[0].target);
  }
  EXPECT_EQ(targets.size(), 3u);
  EXPECT_EQ(c.prepared[3].assembly_trivial, 1);
  EXPECT_TRUE(c.prepared[3].assembly.empty());
}

TEST(AssemblyTargets, FusedAndBridgedRings) {
  Corpus c = make_corpus({ "c1ccc2ccccc2c1", "c1ccc(cc1)-c1ccccc1", "C1CCc2ccccc2C1" });
  for (const PreparedMolecule &pm: c.prepared) {
    EXPECT_EQ(pm.assembly_skipped, 0) << pm.smiles;
    EXPECT_EQ(pm.assembly_overflow, 0) << pm.smiles;
  }
  // Biphenyl: the bridge bond and the second ring each attach one way.
  EXPECT_EQ(c.prepared[1].assembly_edges, 2);
}

}  // namespace
}  // namespace lcjt
