//
// Project lcjtvae - Copyright 2026 The lcjtvae Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "lcjt/chem/fingerprint.h"

#include <algorithm>
#include <bit>
#include <utility>

#include "lcjt/error.h"

namespace lcjt {
namespace {
constexpr std::uint64_t kSeed = 0x6C636A7476616531ULL;  // "lcjtvae1"

std::uint64_t combine(std::uint64_t h, std::uint64_t v) {
  return mix64(h ^ mix64(v));
}
}  // namespace

Fingerprint::Fingerprint(int nbits, int radius)
    : nbits_(nbits), radius_(radius), words_((nbits + 63) / 64, 0) { }

int Fingerprint::popcount() const {
  int n = 0;
  for (auto w: words_)
    n += std::popcount(w);
  return n;
}

std::vector<std::uint8_t> Fingerprint::to_bytes() const {
  std::vector<std::uint8_t> out((nbits_ + 7) / 8, 0);
  for (int i = 0; i < nbits_; ++i) {
    if (test(i))
      out[i / 8] |= static_cast<std::uint8_t>(1U << (i % 8));
  }
  return out;
}

Fingerprint Fingerprint::from_bytes(const std::vector<std::uint8_t> &bytes,
                                    int radius) {
  Fingerprint fp(static_cast<int>(bytes.size()) * 8, radius);
  for (int i = 0; i < fp.nbits_; ++i) {
    if ((bytes[i / 8] >> (i % 8)) & 1U)
      fp.set(i);
  }
  return fp;
}

Fingerprint circular_fingerprint(const Molecule &mol, int radius, int nbits) {
  if (nbits <= 0 || (nbits & (nbits - 1)) != 0)
    throw Error("fingerprint length must be a power of two");
  if (radius < 0)
    throw Error("fingerprint radius must be non-negative");

  Fingerprint fp(nbits, radius);
  const int n = mol.num_atoms();
  std::vector<bool> in_ring(n, false);
  for (const auto &ring: mol.rings()) {
    for (int a: ring)
      in_ring[a] = true;
  }

  std::vector<std::uint64_t> ids(n);
  for (int i = 0; i < n; ++i) {
    const Atom &a = mol.atom(i);
    std::uint64_t h = kSeed;
    h = combine(h, static_cast<std::uint64_t>(atomic_number(a.element)));
    h = combine(h, static_cast<std::uint64_t>(mol.heavy_degree(i)));
    h = combine(h, static_cast<std::uint64_t>(a.implicit_h));
    h = combine(h, static_cast<std::uint64_t>(a.formal_charge + 16));
    h = combine(h, a.aromatic ? 1U : 0U);
    h = combine(h, in_ring[i] ? 1U : 0U);
    ids[i] = h;
    fp.set(static_cast<int>(h & static_cast<std::uint64_t>(nbits - 1)));
  }

  for (int r = 1; r <= radius; ++r) {
    std::vector<std::uint64_t> next(n);
    for (int i = 0; i < n; ++i) {
      std::vector<std::pair<std::uint64_t, std::uint64_t>> env;
      for (const Neighbor &nb: mol.neighbors(i))
        env.emplace_back(static_cast<std::uint64_t>(mol.bond(nb.bond).order),
                         ids[nb.atom]);
      std::sort(env.begin(), env.end());
      std::uint64_t h = combine(kSeed + static_cast<std::uint64_t>(r), ids[i]);
      for (auto [order, id]: env)
        h = combine(combine(h, order), id);
      next[i] = h;
      fp.set(static_cast<int>(h & static_cast<std::uint64_t>(nbits - 1)));
    }
    ids = std::move(next);
  }
  return fp;
}

double tanimoto(const Fingerprint &a, const Fingerprint &b) {
  if (a.nbits() != b.nbits())
    throw Error("tanimoto: fingerprint lengths differ");
  int both = 0, either = 0;
  for (std::size_t w = 0; w < a.words().size(); ++w) {
    both += std::popcount(a.words()[w] & b.words()[w]);
    either += std::popcount(a.words()[w] | b.words()[w]);
  }
  if (either == 0)
    return 1.0;
  return static_cast<double>(both) / either;
}

}  // namespace lcjt
