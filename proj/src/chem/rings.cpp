//
// Project lcjtvae - Copyright 2026 The lcjtvae Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "lcjt/chem/rings.h"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <queue>
#include <set>

namespace lcjt {
namespace {
using EdgeSet = std::vector<std::uint64_t>;

struct Candidate {
  std::vector<int> atoms;  // cyclic order
  std::vector<int> sorted;
  EdgeSet edges;
};

// Rotate to start at the minimum atom, direction toward the smaller neighbor.
std::vector<int> normalize_cycle(std::vector<int> cycle) {
  auto it = std::min_element(cycle.begin(), cycle.end());
  std::rotate(cycle.begin(), it, cycle.end());
  if (cycle.size() > 2 && cycle.back() < cycle[1])
    std::reverse(cycle.begin() + 1, cycle.end());
  return cycle;
}

bool eliminate(std::vector<EdgeSet> &basis, std::vector<int> &pivots,
               EdgeSet row) {
  for (std::size_t i = 0; i < basis.size(); ++i) {
    int p = pivots[i];
    if ((row[p / 64] >> (p % 64)) & 1U) {
      for (std::size_t w = 0; w < row.size(); ++w)
        row[w] ^= basis[i][w];
    }
  }
  for (std::size_t w = 0; w < row.size(); ++w) {
    if (row[w] != 0) {
      int bit = static_cast<int>(w * 64) + __builtin_ctzll(row[w]);
      // Keep the basis fully reduced on the new pivot.
      for (auto &b: basis) {
        if ((b[bit / 64] >> (bit % 64)) & 1U) {
          for (std::size_t k = 0; k < b.size(); ++k)
            b[k] ^= row[k];
        }
      }
      basis.push_back(std::move(row));
      pivots.push_back(bit);
      return true;
    }
  }
  return false;
}
}  // namespace

std::vector<std::vector<int>> perceive_rings(const Molecule &mol) {
  const int n = mol.num_atoms();
  const int m = mol.num_bonds();
  const int target = m - n + mol.num_components();
  if (target <= 0)
    return {};

  const std::size_t words = (m + 63) / 64;
  std::vector<bool> cyclic = cyclic_bonds(mol);

  std::vector<Candidate> candidates;
  std::set<EdgeSet> seen;

  std::vector<int> parent(n), parent_bond(n), dist(n);
  for (int root = 0; root < n; ++root) {
    std::fill(dist.begin(), dist.end(), -1);
    std::queue<int> q;
    dist[root] = 0;
    parent[root] = -1;
    parent_bond[root] = -1;
    q.push(root);
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      for (const Neighbor &nb: mol.neighbors(u)) {
        if (!cyclic[nb.bond] || dist[nb.atom] >= 0)
          continue;
        dist[nb.atom] = dist[u] + 1;
        parent[nb.atom] = u;
        parent_bond[nb.atom] = nb.bond;
        q.push(nb.atom);
      }
    }

    auto path_to_root = [&](int v) {
      std::vector<int> path;
      for (; v >= 0; v = parent[v])
        path.push_back(v);
      return path;
    };

    for (int e = 0; e < m; ++e) {
      if (!cyclic[e])
        continue;
      const Bond &bond = mol.bond(e);
      int x = bond.a, y = bond.b;
      if (dist[x] < 0 || dist[y] < 0)
        continue;
      if (parent_bond[x] == e || parent_bond[y] == e)
        continue;
      std::vector<int> px = path_to_root(x), py = path_to_root(y);
      // Paths must meet only at the root.
      std::vector<int> sx(px.begin(), px.end() - 1), sy(py.begin(),
                                                        py.end() - 1);
      std::sort(sx.begin(), sx.end());
      std::sort(sy.begin(), sy.end());
      std::vector<int> common;
      std::set_intersection(sx.begin(), sx.end(), sy.begin(), sy.end(),
                            std::back_inserter(common));
      if (!common.empty())
        continue;

      std::vector<int> cycle(px.rbegin(), px.rend());  // root .. x
      for (int v: py) {
        if (v == root)
          break;
        cycle.push_back(v);
      }
      // cycle: root .. x, y .. (child of root)
      EdgeSet edges(words, 0);
      for (std::size_t i = 0; i < cycle.size(); ++i) {
        int a = cycle[i], b = cycle[(i + 1) % cycle.size()];
        int bid = mol.find_bond(a, b);
        edges[bid / 64] |= std::uint64_t { 1 } << (bid % 64);
      }
      if (!seen.insert(edges).second)
        continue;

      Candidate c;
      c.atoms = normalize_cycle(std::move(cycle));
      c.sorted = c.atoms;
      std::sort(c.sorted.begin(), c.sorted.end());
      c.edges = std::move(edges);
      candidates.push_back(std::move(c));
    }
  }

  std::sort(candidates.begin(), candidates.end(),
            [](const Candidate &l, const Candidate &r) {
              if (l.atoms.size() != r.atoms.size())
                return l.atoms.size() < r.atoms.size();
              if (l.sorted != r.sorted)
                return l.sorted < r.sorted;
              return l.atoms < r.atoms;
            });

  std::vector<EdgeSet> basis;
  std::vector<int> pivots;
  std::vector<std::vector<int>> rings;
  for (Candidate &c: candidates) {
    if (static_cast<int>(rings.size()) == target)
      break;
    if (eliminate(basis, pivots, c.edges))
      rings.push_back(std::move(c.atoms));
  }
  return rings;
}

void annotate_rings(Molecule &mol) {
  std::vector<std::vector<int>> rings = perceive_rings(mol);
  for (int i = 0; i < mol.num_bonds(); ++i)
    mol.bond(i).in_ring = false;
  for (const auto &ring: rings) {
    for (int b: ring_bonds(mol, ring))
      mol.bond(b).in_ring = true;
  }
  mol.set_rings(std::move(rings));
}

std::vector<int> ring_bonds(const Molecule &mol, const std::vector<int> &ring) {
  std::vector<int> out;
  out.reserve(ring.size());
  for (std::size_t i = 0; i < ring.size(); ++i)
    out.push_back(mol.find_bond(ring[i], ring[(i + 1) % ring.size()]));
  return out;
}

std::vector<bool> cyclic_bonds(const Molecule &mol) {
  // Tarjan bridge finding, iterative.
  const int n = mol.num_atoms();
  std::vector<int> disc(n, -1), low(n, 0);
  std::vector<bool> cyclic(mol.num_bonds(), true);
  int time = 0;

  struct Frame {
    int atom;
    int via_bond;
    std::size_t next;
  };

  for (int s = 0; s < n; ++s) {
    if (disc[s] >= 0)
      continue;
    std::vector<Frame> stack { { s, -1, 0 } };
    disc[s] = low[s] = time++;
    while (!stack.empty()) {
      Frame &f = stack.back();
      auto nbs = mol.neighbors(f.atom);
      if (f.next < nbs.size()) {
        const Neighbor nb = nbs[f.next++];
        if (nb.bond == f.via_bond)
          continue;
        if (disc[nb.atom] < 0) {
          disc[nb.atom] = low[nb.atom] = time++;
          stack.push_back({ nb.atom, nb.bond, 0 });
        } else {
          low[f.atom] = std::min(low[f.atom], disc[nb.atom]);
        }
      } else {
        Frame done = f;
        stack.pop_back();
        if (!stack.empty()) {
          int p = stack.back().atom;
          low[p] = std::min(low[p], low[done.atom]);
          if (low[done.atom] > disc[p])
            cyclic[done.via_bond] = false;
        }
      }
    }
  }
  return cyclic;
}

}  // namespace lcjt
