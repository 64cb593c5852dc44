//
// Project lcjtvae - Copyright 2026 The lcjtvae Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef LCJT_DATA_PAIRS_H_
#define LCJT_DATA_PAIRS_H_

#include <string>
#include <vector>

#include "lcjt/chem/molecule.h"
#include "lcjt/data/compounds.h"
#include "lcjt/data/screening.h"
#include "lcjt/model/sequence.h"

namespace lcjt {

struct PairingPolicy {
  bool include_low = false;
  // Ligases to pair; empty means every supplied context.
  std::vector<std::string> ligases;
};

struct TrainingPair {
  CompoundRecord compound;
  Molecule molecule;
  LigaseContext ligase;
  AffinityClass affinity = AffinityClass::kHigh;
};

struct PairExclusion {
  int line = 0;
  std::string id;
  std::string ligase;
  std::string reason;
};

struct PairingResult {
  std::vector<TrainingPair> pairs;  // ligase order, then record order
  std::vector<PairExclusion> excluded;
};

// Pairs each ligase with its High (and optionally Low) compounds. Compounds
// that fail to parse or decompose are excluded with the reason. Throws Error
// when the policy names a ligase without a context.
PairingResult build_training_pairs(const std::vector<CompoundRecord> &records,
                                   const std::vector<LigaseContext> &ligases,
                                   const PairingPolicy &policy = {});

}  // namespace lcjt

#endif  // LCJT_DATA_PAIRS_H_
