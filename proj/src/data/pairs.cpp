//
// Project lcjtvae - Copyright 2026 The lcjtvae Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "lcjt/data/pairs.h"

#include <algorithm>
#include <optional>

#include "lcjt/chem/smiles.h"
#include "lcjt/error.h"
#include "lcjt/jt/junction_tree.h"

namespace lcjt {

PairingResult build_training_pairs(const std::vector<CompoundRecord> &records,
                                   const std::vector<LigaseContext> &ligases,
                                   const PairingPolicy &policy) {
  std::vector<const LigaseContext *> selected;
  if (policy.ligases.empty()) {
    for (const LigaseContext &l: ligases)
      selected.push_back(&l);
  } else {
    for (const std::string &id: policy.ligases) {
      auto it = std::find_if(ligases.begin(), ligases.end(),
                             [&](const LigaseContext &l) { return l.id == id; });
      if (it == ligases.end())
        throw Error("pairing: unknown ligase '" + id + "'");
      selected.push_back(&*it);
    }
  }

  // Parse and decompose each compound at most once.
  std::vector<std::optional<Molecule>> mols(records.size());
  std::vector<std::string> errors(records.size());
  std::vector<bool> done(records.size(), false);
  auto check = [&](std::size_t i) {
    if (done[i])
      return;
    done[i] = true;
    try {
      Molecule m = parse_smiles(records[i].smiles);
      if (m.num_components() != 1)
        throw Error("multi-fragment SMILES");
      decompose(m);
      mols[i] = std::move(m);
    } catch (const Error &e) {
      errors[i] = e.what();
    }
  };

  PairingResult out;
  for (const LigaseContext *lig: selected) {
    for (std::size_t i = 0; i < records.size(); ++i) {
      const CompoundRecord &r = records[i];
      auto it = r.dock.find(lig->id);
      if (it == r.dock.end())
        continue;
      const AffinityClass cls = classify_affinity(it->second);
      if (cls == AffinityClass::kNone || (cls == AffinityClass::kLow && !policy.include_low))
        continue;
      check(i);
      if (!mols[i]) {
        out.excluded.push_back({ r.line, r.id, lig->id, errors[i] });
        continue;
      }
      out.pairs.push_back({ r, *mols[i], *lig, cls });
    }
  }
  return out;
}

}  // namespace lcjt
