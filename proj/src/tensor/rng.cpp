//
// Project lcjtvae - Copyright 2026 The lcjtvae Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "lcjt/tensor/rng.h"

#include <bit>
#include <cmath>
#include <numbers>
#include <sstream>

#include "lcjt/error.h"
#include "lcjt/hash.h"

namespace lcjt {

std::uint64_t substream_seed(std::uint64_t seed, std::string_view name) {
  return mix64(seed ^ fnv1a64(name));
}

Rng::Rng(std::uint64_t seed, std::string_view stream)
    : engine_(substream_seed(seed, stream)) { }

double Rng::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1 = 1.0 - uniform();  // (0, 1]
  double u2 = uniform();
  double r = std::sqrt(-2.0 * std::log(u1));
  double th = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(th);
  has_spare_ = true;
  return r * std::cos(th);
}

int Rng::uniform_int(int n) {
  if (n <= 0)
    throw Error("uniform_int: empty range");
  // Rejection sampling keeps the draw unbiased.
  const std::uint64_t range = static_cast<std::uint64_t>(n);
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % range;
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return static_cast<int>(x % range);
}

std::string Rng::state() const {
  std::ostringstream os;
  os << engine_ << ' ' << (has_spare_ ? 1 : 0) << ' '
     << std::bit_cast<std::uint64_t>(spare_);
  return os.str();
}

void Rng::set_state(std::string_view text) {
  std::istringstream is { std::string(text) };
  int spare_flag = 0;
  std::uint64_t bits = 0;
  is >> engine_ >> spare_flag >> bits;
  if (!is)
    throw Error("rng: malformed state");
  has_spare_ = spare_flag != 0;
  spare_ = std::bit_cast<double>(bits);
}

bool Rng::operator==(const Rng &other) const {
  return engine_ == other.engine_ && has_spare_ == other.has_spare_
         && std::bit_cast<std::uint64_t>(spare_)
                == std::bit_cast<std::uint64_t>(other.spare_);
}

}  // namespace lcjt
