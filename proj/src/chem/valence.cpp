//
// Project lcjtvae - Copyright 2026 The lcjtvae Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "lcjt/chem/valence.h"

#include <algorithm>
#include <optional>
#include <sstream>

#include "lcjt/error.h"

namespace lcjt {
namespace {
std::optional<int> lowest_at_least(const std::vector<int> &allowed, int n) {
  for (int v: allowed) {
    if (v >= n)
      return v;
  }
  return std::nullopt;
}

class Matcher {
public:
  Matcher(const Molecule &mol, const std::vector<bool> &wants)
      : mol_(mol), wants_(wants), mate_(mol.num_atoms(), -1) { }

  bool solve() {
    if (++steps_ > kMaxSteps)
      return false;

    int best = -1, best_count = 0;
    for (int u = 0; u < mol_.num_atoms(); ++u) {
      if (!wants_[u] || mate_[u] >= 0)
        continue;
      int count = static_cast<int>(options(u).size());
      if (best < 0 || count < best_count) {
        best = u;
        best_count = count;
        if (count <= 1)
          break;
      }
    }
    if (best < 0)
      return true;
    if (best_count == 0)
      return false;

    for (int v: options(best)) {
      mate_[best] = v;
      mate_[v] = best;
      if (solve())
        return true;
      mate_[best] = mate_[v] = -1;
    }
    return false;
  }

  int mate(int u) const { return mate_[u]; }

private:
  static constexpr long kMaxSteps = 1000000;

  std::vector<int> options(int u) const {
    std::vector<int> out;
    for (const Neighbor &nb: mol_.neighbors(u)) {
      if (mol_.bond(nb.bond).order != BondOrder::kAromatic)
        continue;
      if (wants_[nb.atom] && mate_[nb.atom] < 0)
        out.push_back(nb.atom);
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  const Molecule &mol_;
  const std::vector<bool> &wants_;
  std::vector<int> mate_;
  long steps_ = 0;
};

std::vector<bool> pi_demand(const Molecule &mol) {
  std::vector<bool> wants(mol.num_atoms(), false);
  for (int i = 0; i < mol.num_atoms(); ++i) {
    const Atom &a = mol.atom(i);
    if (!a.aromatic)
      continue;
    int t = sigma_order_sum(mol, i) + a.implicit_h;
    auto v = lowest_at_least(allowed_valences(a.element, a.formal_charge), t);
    wants[i] = v && *v - t >= 1;
  }
  return wants;
}
}  // namespace

std::string ValenceReport::describe() const {
  std::ostringstream os;
  for (const ValenceIssue &issue: issues) {
    os << "atom " << issue.atom << ": valence " << issue.total
       << " not in {";
    for (std::size_t i = 0; i < issue.allowed.size(); ++i)
      os << (i ? "," : "") << issue.allowed[i];
    os << "}; ";
  }
  return os.str();
}

int sigma_order_sum(const Molecule &mol, int atom) {
  int sum = 0;
  for (const Neighbor &nb: mol.neighbors(atom)) {
    BondOrder o = mol.bond(nb.bond).order;
    sum += o == BondOrder::kAromatic ? 1 : static_cast<int>(o);
  }
  return sum;
}

bool kekulize(Molecule &mol, const std::vector<bool> &wants_pi) {
  Matcher matcher(mol, wants_pi);
  if (!matcher.solve())
    return false;
  for (int i = 0; i < mol.num_bonds(); ++i) {
    Bond &b = mol.bond(i);
    if (b.order != BondOrder::kAromatic)
      continue;
    b.kekule_order = matcher.mate(b.a) == b.b ? 2 : 1;
  }
  return true;
}

void assign_hydrogens(Molecule &mol, std::span<const HydrogenMode> modes) {
  std::vector<bool> wants(mol.num_atoms(), false);
  for (int i = 0; i < mol.num_atoms(); ++i) {
    Atom &a = mol.atom(i);
    const HydrogenMode mode = modes[i];
    const std::vector<int> allowed =
        allowed_valences(a.element, a.formal_charge);
    const int s = sigma_order_sum(mol, i);

    if (mode == HydrogenMode::kFixed) {
      if (a.aromatic) {
        const int t = s + a.implicit_h;
        auto v = lowest_at_least(allowed, t);
        if (!v)
          throw ValenceError("valence exceeded", i);
        wants[i] = *v - t >= 1;
      }
      continue;
    }

    auto v = lowest_at_least(allowed, s);
    if (!v)
      throw ValenceError("valence exceeded", i);
    int free = *v - s;
    if (a.aromatic && mode == HydrogenMode::kInfer && free >= 1) {
      wants[i] = true;
      --free;
    }
    a.implicit_h = free;
  }

  if (!kekulize(mol, wants))
    throw KekulizeError("cannot assign a Kekule structure to aromatic atoms");
}

ValenceReport check_valence(const Molecule &mol) {
  ValenceReport report;

  const Molecule *view = &mol;
  Molecule copy;
  bool needs_kekule = std::any_of(
      mol.bonds().begin(), mol.bonds().end(), [](const Bond &b) {
        return b.order == BondOrder::kAromatic && b.kekule_order == 0;
      });
  if (needs_kekule) {
    copy = mol;
    if (!kekulize(copy, pi_demand(copy))) {
      report.ok = false;
      for (int i = 0; i < mol.num_atoms(); ++i) {
        if (mol.atom(i).aromatic)
          report.issues.push_back({ i, -1, {} });
      }
      return report;
    }
    view = &copy;
  }

  for (int i = 0; i < view->num_atoms(); ++i) {
    const Atom &a = view->atom(i);
    int total = view->bond_order_sum(i) + a.implicit_h;
    std::vector<int> allowed = allowed_valences(a.element, a.formal_charge);
    if (a.implicit_h < 0
        || std::find(allowed.begin(), allowed.end(), total) == allowed.end()) {
      report.ok = false;
      report.issues.push_back({ i, total, std::move(allowed) });
    }
  }
  return report;
}

}  // namespace lcjt
