//
// Project lcjtvae - Copyright 2026 The lcjtvae Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <algorithm>
#include <numeric>

#include "lcjt/chem/sanitize.h"
#include "lcjt/chem/smiles.h"
#include "lcjt/chem/valence.h"
#include "lcjt/error.h"
#include "lcjt/model/model.h"
#include "lcjt/tensor/ops.h"

namespace lcjt {
namespace {
constexpr int kLabelTries = 5;

struct Growing {
  Molecule mol;
  std::vector<bool> donor;
};

struct Node {
  int label;
  PlacedClique placed;
  int parent;
  std::vector<int> children;
};

std::vector<int> ranked(const Mat &row) {
  std::vector<int> idx(static_cast<std::size_t>(row.cols()));
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(),
                   [&](int a, int b) { return row(0, a) > row(0, b); });
  return idx;
}

// Applies a candidate to the growing molecule; returns the placement or an
// empty atom list when a merged atom would exceed its valence.
std::vector<int> apply(Growing &g, const AttachContext &ctx,
                       const AttachCandidate &cand, const LabelGraph &label) {
  Growing next = g;
  std::vector<int> atoms(label.mol.num_atoms());
  for (int i = 0; i < label.mol.num_atoms(); ++i) {
    if (cand.map[i] >= 0) {
      const int gi = ctx.global[cand.map[i]];
      atoms[i] = gi;
      Atom &a = next.mol.atom(gi);
      a.aromatic = a.aromatic || label.mol.atom(i).aromatic;
      next.donor[gi] = next.donor[gi] || label.donor[i];
    } else {
      Atom a = label.mol.atom(i);
      a.implicit_h = 0;
      atoms[i] = next.mol.add_atom(a);
      next.donor.push_back(label.donor[i]);
    }
  }
  for (const Bond &b: label.mol.bonds()) {
    if (next.mol.find_bond(atoms[b.a], atoms[b.b]) < 0)
      next.mol.add_bond(atoms[b.a], atoms[b.b], b.order);
  }
  for (int i = 0; i < label.mol.num_atoms(); ++i) {
    if (cand.map[i] >= 0 && !load_ok(next.mol, next.donor, atoms[i]))
      return {};
  }
  g = std::move(next);
  return atoms;
}
}  // namespace

const LabelGraph &Model::label_graph_of(int label) {
  auto it = label_cache_.find(label);
  if (it == label_cache_.end()) {
    it = label_cache_
             .emplace(label, std::make_unique<LabelGraph>(
                                 lcjt::label_graph(vocab_.label(label))))
             .first;
  }
  return *it->second;
}

GeneratedSample Model::generate_one(const PreparedLigase &lig, Rng &rng) {
  using namespace ops;
  GeneratedSample out;
  Tape tape;
  Mat z(1, cfg_.z_mol());
  for (Eigen::Index i = 0; i < z.size(); ++i)
    z.data()[i] = rng.normal();
  SeqEncoding seq = encode_ligase(tape, lig);
  Var zf = fuse(tape, tape.constant(z), seq).fused;
  Var h = ops::tanh(linear(tape, zf, "dec.W_init", "dec.b_init"));

  Growing g;
  std::vector<Node> nodes;
  {
    Var logits = linear(tape, h, "dec.label.W", "dec.label.b");
    const int root_label = ranked(logits.value())[0];
    const LabelGraph &lg = label_graph_of(root_label);
    Node root { root_label, { &lg, {} }, -1, {} };
    for (int i = 0; i < lg.mol.num_atoms(); ++i) {
      Atom a = lg.mol.atom(i);
      a.implicit_h = 0;
      root.placed.atoms.push_back(g.mol.add_atom(a));
      g.donor.push_back(lg.donor[i]);
    }
    for (const Bond &b: lg.mol.bonds())
      g.mol.add_bond(root.placed.atoms[b.a], root.placed.atoms[b.b], b.order);
    nodes.push_back(std::move(root));
    h = gru(tape, h, step_input(tape, root_label, true, zf));
  }

  int u = 0;
  while (true) {
    Var topo = linear(tape, h, "dec.topo.W", "dec.topo.b");
    const bool expand = topo.item() > 0
                        && static_cast<int>(nodes.size()) < cfg_.max_decode_nodes;
    if (!expand) {
      if (u == 0)
        break;
      h = gru(tape, h, step_input(tape, nodes[u].label, false, zf));
      u = nodes[u].parent;
      continue;
    }

    std::vector<PlacedClique> context = { nodes[u].placed };
    if (nodes[u].parent >= 0)
      context.push_back(nodes[nodes[u].parent].placed);
    for (int c: nodes[u].children)
      context.push_back(nodes[c].placed);
    AttachContext ctx = build_context(context);

    Var logits = linear(tape, h, "dec.label.W", "dec.label.b");
    std::vector<int> order = ranked(logits.value());
    int chosen = -1;
    std::vector<int> atoms;
    for (int k = 0; k < kLabelTries && k < static_cast<int>(order.size()); ++k) {
      const LabelGraph &lg = label_graph_of(order[k]);
      std::vector<AttachCandidate> cands = enumerate_attachments(ctx, lg);
      if (cands.empty())
        continue;
      std::vector<int> by_score = { 0 };
      if (cands.size() > 1) {
        CandidateTensors t = candidate_tensors(ctx, cands);
        by_score = ranked(score_candidates(tape, t, zf).value());
      }
      for (int ci: by_score) {
        atoms = apply(g, ctx, cands[ci], lg);
        if (!atoms.empty())
          break;
      }
      if (!atoms.empty()) {
        chosen = order[k];
        break;
      }
    }
    if (chosen < 0) {
      out.status = "no_valid_attachment";
      out.nodes = static_cast<int>(nodes.size());
      return out;
    }
    const int id = static_cast<int>(nodes.size());
    nodes.push_back({ chosen, { &label_graph_of(chosen), std::move(atoms) }, u, {} });
    nodes[u].children.push_back(id);
    h = gru(tape, h, step_input(tape, chosen, true, zf));
    u = id;
  }
  out.nodes = static_cast<int>(nodes.size());

  Molecule mol = g.mol;
  std::vector<HydrogenMode> modes(mol.num_atoms(), HydrogenMode::kInfer);
  for (int i = 0; i < mol.num_atoms(); ++i) {
    mol.atom(i).implicit_h = 0;
    if (g.donor[i] && mol.atom(i).aromatic)
      modes[i] = HydrogenMode::kDonor;
  }
  try {
    sanitize(mol, modes);
  } catch (const KekulizeError &) {
    out.status = "kekulize_failed";
    return out;
  } catch (const Error &) {
    out.status = "valence_failed";
    return out;
  }
  if (!check_valence(mol).ok) {
    out.status = "valence_failed";
    return out;
  }
  std::string smiles = write_canonical_smiles(mol);
  try {
    Molecule again = parse_smiles(smiles);
    if (!check_valence(again).ok) {
      out.status = "valence_failed";
      return out;
    }
  } catch (const KekulizeError &) {
    out.status = "kekulize_failed";
    return out;
  } catch (const Error &) {
    out.status = "valence_failed";
    return out;
  }
  out.smiles = std::move(smiles);
  out.status = "ok";
  return out;
}

std::vector<GeneratedSample> Model::generate(const PreparedLigase &lig, int n,
                                             Rng &rng) {
  std::vector<GeneratedSample> out;
  out.reserve(n > 0 ? n : 0);
  for (int i = 0; i < n; ++i)
    out.push_back(generate_one(lig, rng));
  return out;
}

}  // namespace lcjt
