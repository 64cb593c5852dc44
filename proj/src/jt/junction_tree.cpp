//
// Project lcjtvae - Copyright 2026 The lcjtvae Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "lcjt/jt/junction_tree.h"

#include <algorithm>
#include <numeric>
#include <tuple>

#include "lcjt/chem/fragment.h"
#include "lcjt/chem/smiles.h"
#include "lcjt/error.h"

namespace lcjt {
namespace {
constexpr int kSingletonWeight = 100;

class DisjointSet {
public:
  explicit DisjointSet(int n): parent_(n) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }

  int find(int x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b)
      return false;
    parent_[std::max(a, b)] = std::min(a, b);
    return true;
  }

private:
  std::vector<int> parent_;
};

std::vector<int> intersect(const std::vector<int> &a, const std::vector<int> &b) {
  std::vector<int> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::back_inserter(out));
  return out;
}

std::vector<std::vector<int>> merged_rings(const Molecule &mol) {
  std::vector<std::vector<int>> rings;
  for (auto r: mol.rings()) {
    std::sort(r.begin(), r.end());
    rings.push_back(std::move(r));
  }
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < rings.size() && !changed; ++i) {
      for (std::size_t j = i + 1; j < rings.size(); ++j) {
        if (intersect(rings[i], rings[j]).size() <= 2)
          continue;
        std::vector<int> u;
        std::set_union(rings[i].begin(), rings[i].end(), rings[j].begin(),
                       rings[j].end(), std::back_inserter(u));
        rings[i] = std::move(u);
        rings.erase(rings.begin() + static_cast<std::ptrdiff_t>(j));
        changed = true;
        break;
      }
    }
  }
  return rings;
}
}  // namespace

std::vector<std::vector<int>> JunctionTree::adjacency() const {
  std::vector<std::vector<int>> adj(nodes.size());
  for (auto [u, v]: edges) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  for (auto &a: adj)
    std::sort(a.begin(), a.end());
  return adj;
}

std::string clique_label(const Molecule &mol, std::span<const int> atoms) {
  return write_canonical_smiles(extract_fragment(mol, atoms));
}

JunctionTree decompose(const Molecule &mol) {
  if (mol.num_atoms() < 2)
    throw Error("decompose: need at least two atoms");
  if (mol.num_components() != 1)
    throw Error("decompose: multi-fragment molecule");

  std::vector<Clique> cliques;
  for (const Bond &b: mol.bonds()) {
    if (!b.in_ring)
      cliques.push_back({ { std::min(b.a, b.b), std::max(b.a, b.b) }, {}, false });
  }
  for (auto &r: merged_rings(mol))
    cliques.push_back({ std::move(r), {}, true });

  std::vector<int> membership(mol.num_atoms(), 0);
  for (const Clique &c: cliques) {
    for (int a: c.atoms)
      ++membership[a];
  }
  for (int a = 0; a < mol.num_atoms(); ++a) {
    if (membership[a] >= 3)
      cliques.push_back({ { a }, {}, false });
  }

  std::sort(cliques.begin(), cliques.end(),
            [](const Clique &x, const Clique &y) { return x.atoms < y.atoms; });
  for (Clique &c: cliques)
    c.label = clique_label(mol, c.atoms);

  const int n = static_cast<int>(cliques.size());
  std::vector<std::tuple<int, int, int>> candidates;  // (-weight, u, v)
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      auto shared = intersect(cliques[u].atoms, cliques[v].atoms);
      if (shared.empty())
        continue;
      int w = static_cast<int>(shared.size());
      if (cliques[u].atoms.size() == 1 || cliques[v].atoms.size() == 1)
        w = kSingletonWeight;
      candidates.emplace_back(-w, u, v);
    }
  }
  std::sort(candidates.begin(), candidates.end());

  JunctionTree tree;
  DisjointSet ds(n);
  for (auto [w, u, v]: candidates) {
    if (ds.unite(u, v))
      tree.edges.emplace_back(u, v);
  }
  std::sort(tree.edges.begin(), tree.edges.end());
  tree.nodes = std::move(cliques);
  for (int i = 0; i < n; ++i) {
    if (tree.nodes[i].atoms.front() == 0) {
      tree.root = i;
      break;
    }
  }
  return tree;
}

CoverReport verify_cover(const Molecule &mol, const JunctionTree &tree) {
  auto fail = [](std::string msg) { return CoverReport { false, std::move(msg) }; };
  const int n = static_cast<int>(tree.nodes.size());
  if (n == 0)
    return fail("coverage: tree has no nodes");

  std::vector<int> membership(mol.num_atoms(), 0);
  for (int i = 0; i < n; ++i) {
    const Clique &c = tree.nodes[i];
    if (c.atoms.empty())
      return fail("clique " + std::to_string(i) + " is empty");
    if (!std::is_sorted(c.atoms.begin(), c.atoms.end())
        || std::adjacent_find(c.atoms.begin(), c.atoms.end()) != c.atoms.end())
      return fail("clique " + std::to_string(i) + " atoms not sorted/unique");
    for (int a: c.atoms) {
      if (a < 0 || a >= mol.num_atoms())
        return fail("clique " + std::to_string(i) + " references atom "
                    + std::to_string(a) + " out of range");
      ++membership[a];
    }
  }
  for (int i = 0; i < n; ++i) {
    const Clique &c = tree.nodes[i];
    if (c.atoms.size() == 1 && membership[c.atoms[0]] < 4)
      return fail("clique " + std::to_string(i)
                  + " is a singleton outside an intersection");
    if (c.label != clique_label(mol, c.atoms))
      return fail("clique " + std::to_string(i) + " label mismatch");
  }
  for (int a = 0; a < mol.num_atoms(); ++a) {
    if (membership[a] == 0)
      return fail("coverage: atom " + std::to_string(a) + " in no clique");
  }

  for (int bi = 0; bi < mol.num_bonds(); ++bi) {
    const Bond &b = mol.bond(bi);
    int holders = 0;
    for (const Clique &c: tree.nodes) {
      holders += std::binary_search(c.atoms.begin(), c.atoms.end(), b.a)
                 && std::binary_search(c.atoms.begin(), c.atoms.end(), b.b);
    }
    if (holders == 0)
      return fail("coverage: bond " + std::to_string(bi) + " in no clique");
    if (!b.in_ring && holders != 1)
      return fail("coverage: acyclic bond " + std::to_string(bi) + " in "
                  + std::to_string(holders) + " cliques");
  }

  const int components = mol.num_components();
  if (static_cast<int>(tree.edges.size()) != n - components)
    return fail("tree: " + std::to_string(tree.edges.size()) + " edges for "
                + std::to_string(n) + " nodes");
  DisjointSet ds(n);
  for (auto [u, v]: tree.edges) {
    if (u < 0 || v < 0 || u >= n || v >= n || u == v)
      return fail("tree: bad edge (" + std::to_string(u) + ","
                  + std::to_string(v) + ")");
    if (!ds.unite(u, v))
      return fail("tree: cycle through edge (" + std::to_string(u) + ","
                  + std::to_string(v) + ")");
    if (intersect(tree.nodes[u].atoms, tree.nodes[v].atoms).empty())
      return fail("tree: edge (" + std::to_string(u) + "," + std::to_string(v)
                  + ") shares no atom");
  }
  if (tree.root < 0 || tree.root >= n)
    return fail("tree: root out of range");
  return {};
}

}  // namespace lcjt
