//
// Project lcjtvae - Copyright 2026 The lcjtvae Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef LCJT_MODEL_MODEL_H_
#define LCJT_MODEL_MODEL_H_

#include <cstdint>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "lcjt/geom/conformer.h"
#include "lcjt/jt/junction_tree.h"
#include "lcjt/jt/vocabulary.h"
#include "lcjt/model/assembly.h"
#include "lcjt/model/config.h"
#include "lcjt/model/features.h"
#include "lcjt/model/sequence.h"
#include "lcjt/tensor/rng.h"
#include "lcjt/tensor/tensor.h"

namespace lcjt {

// Teacher-forcing target for one tree edge.
struct AssemblyTarget {
  int parent = -1;
  int child = -1;
  int num_candidates = 0;
  int target = -1;  // index of the true attachment
  CandidateTensors tensors;
};

struct PreparedMolecule {
  std::string smiles;  // canonical
  Molecule mol;
  JunctionTree tree;
  std::vector<int> labels;                 // vocabulary index per node
  std::vector<std::vector<int>> children;  // DFS child order per node
  GraphTensors graph;
  TreeTensors tree_tensors;
  // Edges with at least two candidates and a recoverable true attachment,
  // in decoding order.
  std::vector<AssemblyTarget> assembly;
  int assembly_edges = 0;     // all tree edges
  int assembly_trivial = 0;   // exactly one candidate
  int assembly_skipped = 0;   // true attachment not among candidates
  int assembly_overflow = 0;  // candidates dropped by the cap
};

// Throws VocabularyError for labels missing from `vocab`; other failures
// (multi-fragment, single atom) surface as Error from decompose.
PreparedMolecule prepare_molecule(const Molecule &mol, const Conformer *conf,
                                  const Vocabulary &vocab);

// Children of each node ordered by their smallest atom index.
std::vector<std::vector<int>> dfs_children(const JunctionTree &tree);

struct LatentSample {
  Var z;
  Var kl;  // 1 x 1
};

// z = mean + exp(logvar / 2) * eps, eps ~ N(0, 1) drawn from `rng`;
// kl = 0.5 * sum(mean^2 + exp(logvar) - 1 - logvar). Throws
// NonFiniteLossError (epoch and batch -1) on non-finite inputs.
LatentSample reparameterize(Tape &tape, Var mean, Var logvar, Rng &rng);
double kl_divergence(const Mat &mean, const Mat &logvar);

struct TrainingExample {
  const PreparedMolecule *mol = nullptr;
  const PreparedLigase *ligase = nullptr;
};

struct GeneratedSample {
  std::string smiles;
  std::string status;  // ok, no_valid_attachment, kekulize_failed, valence_failed
  int nodes = 0;
};

class Model {
public:
  Model(const ModelConfig &cfg, Vocabulary vocab, std::uint64_t seed);

  const ModelConfig &config() const { return cfg_; }
  const Vocabulary &vocab() const { return vocab_; }
  ParamStore &params() { return params_; }
  const ParamStore &params() const { return params_; }

  struct MolEncoding {
    Var tree_mean;
    Var tree_logvar;
    Var graph_mean;
    Var graph_logvar;
  };
  MolEncoding encode_molecule(Tape &tape, const PreparedMolecule &m);

  struct SeqEncoding {
    Var z_seq;   // 1 x seq_embed
    Var states;  // L x seq_embed; a single row outside onehot_rnn mode
  };
  SeqEncoding encode_ligase(Tape &tape, const PreparedLigase &lig);

  struct Fusion {
    Var fused;
    Var pre_activation;
    std::vector<Mat> attention;  // per head, 1 x L
  };
  Fusion fuse(Tape &tape, Var z_mol, const SeqEncoding &seq);

  struct Decoded {
    Var topology;  // summed BCE
    Var label;     // summed CE
    Var assembly;  // summed CE
    int label_correct = 0;
    int label_total = 0;
    int topo_correct = 0;
    int topo_total = 0;
    int asm_correct = 0;
    int asm_total = 0;
  };
  Decoded decode_teacher_forced(Tape &tape, Var z_fused,
                                const PreparedMolecule &m);

  struct BatchResult {
    Var loss;
    LossReport report;
  };
  // Losses summed per molecule and averaged over the batch. A null `reparam`
  // decodes from the posterior means (evaluation).
  BatchResult batch_loss(Tape &tape, std::span<const TrainingExample> batch,
                         double beta, Rng *reparam);

  GeneratedSample generate_one(const PreparedLigase &lig, Rng &rng);
  std::vector<GeneratedSample> generate(const PreparedLigase &lig, int n,
                                        Rng &rng);

  // Scores of stacked candidates against z_fused, 1 x C.
  Var score_candidates(Tape &tape, const CandidateTensors &t, Var z_fused);

private:
  Var param(Tape &tape, const char *name) { return tape.param(params_.get(name)); }
  Var linear(Tape &tape, Var x, const char *w, const char *b);
  Var gru(Tape &tape, Var h, Var x);
  Var step_input(Tape &tape, int label, bool down, Var z_fused);
  const LabelGraph &label_graph_of(int label);

  ModelConfig cfg_;
  Vocabulary vocab_;
  ParamStore params_;
  std::map<int, std::unique_ptr<LabelGraph>> label_cache_;
};

}  // namespace lcjt

#endif  // LCJT_MODEL_MODEL_H_
