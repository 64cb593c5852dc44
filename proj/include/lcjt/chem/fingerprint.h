//
// Project lcjtvae - Copyright 2026 The lcjtvae Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef LCJT_CHEM_FINGERPRINT_H_
#define LCJT_CHEM_FINGERPRINT_H_

#include <cstdint>
#include <vector>

#include "lcjt/chem/molecule.h"
#include "lcjt/hash.h"

namespace lcjt {

class Fingerprint {
public:
  Fingerprint() = default;
  Fingerprint(int nbits, int radius);

  int nbits() const { return nbits_; }
  int radius() const { return radius_; }

  bool test(int bit) const { return (words_[bit / 64] >> (bit % 64)) & 1U; }
  void set(int bit) { words_[bit / 64] |= std::uint64_t { 1 } << (bit % 64); }
  int popcount() const;

  // Packed bits, nbits/8 bytes. Bit i lives in byte i/8 at position i%8
  // (least significant bit first).
  std::vector<std::uint8_t> to_bytes() const;
  static Fingerprint from_bytes(const std::vector<std::uint8_t> &bytes,
                                int radius);

  const std::vector<std::uint64_t> &words() const { return words_; }

  bool operator==(const Fingerprint &other) const = default;

private:
  int nbits_ = 0;
  int radius_ = 0;
  std::vector<std::uint64_t> words_;
};

// Hashed circular (Morgan-type) fingerprint. Each atom seeds an identifier
// from (atomic number, heavy degree, hydrogens, charge, aromatic, in ring);
// round r rehashes the identifier with the sorted (bond order, neighbor id)
// pairs of round r-1. Every identifier of every round 0..radius sets bit
// id mod nbits. `nbits` must be a power of two.
Fingerprint circular_fingerprint(const Molecule &mol, int radius = 2,
                                 int nbits = 2048);

// |a & b| / |a | b|; two empty fingerprints compare as 1.
double tanimoto(const Fingerprint &a, const Fingerprint &b);

}  // namespace lcjt

#endif  // LCJT_CHEM_FINGERPRINT_H_
