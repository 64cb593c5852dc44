//
// Project lcjtvae - Copyright 2026 The lcjtvae Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef LCJT_TENSOR_RNG_H_
#define LCJT_TENSOR_RNG_H_

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace lcjt {

// Seed of the named substream: mix64(seed ^ fnv1a64(name)).
std::uint64_t substream_seed(std::uint64_t seed, std::string_view name);

// mt19937_64 with portable uniform/normal transforms (the standard
// distributions are implementation-defined).
class Rng {
public:
  Rng(std::uint64_t seed, std::string_view stream);

  std::uint64_t next_u64() { return engine_(); }
  // [0, 1) with 53 random bits.
  double uniform();
  // Box-Muller; the second variate of each pair is cached.
  double normal();
  // [0, n)
  int uniform_int(int n);

  template <class T>
  void shuffle(std::vector<T> &v) {
    for (int i = static_cast<int>(v.size()) - 1; i > 0; --i)
      std::swap(v[i], v[uniform_int(i + 1)]);
  }

  std::string state() const;
  void set_state(std::string_view text);

  bool operator==(const Rng &other) const;

private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0;
};

}  // namespace lcjt

#endif  // LCJT_TENSOR_RNG_H_
