//
// Project lcjtvae - Copyright 2026 The lcjtvae Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <algorithm>
#include <functional>

#include "lcjt/chem/smiles.h"
#include "lcjt/error.h"
#include "lcjt/model/model.h"

namespace lcjt {

std::vector<std::vector<int>> dfs_children(const JunctionTree &tree) {
  const int n = static_cast<int>(tree.nodes.size());
  std::vector<std::vector<int>> adj = tree.adjacency();
  std::vector<std::vector<int>> children(n);
  std::vector<bool> seen(n, false);
  std::vector<int> stack = { tree.root };
  seen[tree.root] = true;
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    for (int v: adj[u]) {
      if (seen[v])
        continue;
      seen[v] = true;
      children[u].push_back(v);
      stack.push_back(v);
    }
  }
  for (auto &c: children) {
    std::sort(c.begin(), c.end(), [&](int a, int b) {
      return tree.nodes[a].atoms.front() < tree.nodes[b].atoms.front();
    });
  }
  return children;
}

PreparedMolecule prepare_molecule(const Molecule &mol, const Conformer *conf,
                                  const Vocabulary &vocab) {
  PreparedMolecule p;
  p.mol = mol;
  p.smiles = write_canonical_smiles(mol);
  p.tree = decompose(mol);
  const int n = static_cast<int>(p.tree.nodes.size());
  for (const Clique &c: p.tree.nodes) {
    int id = vocab.index_of(c.label);
    if (id < 0)
      throw VocabularyError("vocabulary miss: clique label '" + c.label
                            + "' in " + p.smiles);
    p.labels.push_back(id);
  }
  p.children = dfs_children(p.tree);
  p.graph = graph_tensors(mol, bond_torsion_features(mol, conf));
  p.tree_tensors = tree_tensors(p.tree);

  // Clique fragments placed at their real atoms.
  std::vector<LabelGraph> frags(n);
  std::vector<PlacedClique> placed(n);
  for (int i = 0; i < n; ++i) {
    std::vector<int> old_to_new;
    frags[i] = fragment_graph(mol, p.tree.nodes[i], &old_to_new);
    placed[i].label = &frags[i];
    placed[i].atoms.assign(frags[i].mol.num_atoms(), -1);
    for (int a: p.tree.nodes[i].atoms)
      placed[i].atoms[old_to_new[a]] = a;
  }
  std::vector<int> parent(n, -1);
  for (int u = 0; u < n; ++u) {
    for (int c: p.children[u])
      parent[c] = u;
  }

  std::function<void(int)> visit = [&](int u) {
    std::vector<PlacedClique> context = { placed[u] };
    if (parent[u] >= 0)
      context.push_back(placed[parent[u]]);
    for (int c: p.children[u]) {
      ++p.assembly_edges;
      AttachContext ctx = build_context(context);
      LabelGraph child = label_graph(p.tree.nodes[c].label);
      int overflow = 0;
      std::vector<AttachCandidate> cands =
          enumerate_attachments(ctx, child, 100, &overflow);
      p.assembly_overflow += overflow;

      std::vector<PlacedClique> with_child = context;
      with_child.push_back(placed[c]);
      AttachContext truth = build_context(with_child);
      std::vector<int> roles(truth.graph.num_atoms(), 0);
      const std::vector<int> &catoms = p.tree.nodes[c].atoms;
      for (int l = 0; l < truth.graph.num_atoms(); ++l) {
        const bool in_child = std::binary_search(catoms.begin(), catoms.end(),
                                                 truth.global[l]);
        const bool in_ctx = l < ctx.graph.num_atoms();
        roles[l] = in_child ? (in_ctx ? 1 : 2) : 0;
      }
      const std::string key = attachment_key(truth.graph, roles);
      int target = -1;
      for (std::size_t k = 0; k < cands.size(); ++k) {
        if (cands[k].key == key) {
          target = static_cast<int>(k);
          break;
        }
      }
      if (target < 0) {
        ++p.assembly_skipped;
      } else if (cands.size() == 1) {
        ++p.assembly_trivial;
      } else {
        AssemblyTarget t;
        t.parent = u;
        t.child = c;
        t.num_candidates = static_cast<int>(cands.size());
        t.target = target;
        t.tensors = candidate_tensors(ctx, cands);
        p.assembly.push_back(std::move(t));
      }
      context.push_back(placed[c]);
    }
    for (int c: p.children[u])
      visit(c);
  };
  visit(p.tree.root);
  return p;
}

}  // namespace lcjt
