//
// Project lcjtvae - Copyright 2026 The lcjtvae Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef LCJT_CHEM_ELEMENT_H_
#define LCJT_CHEM_ELEMENT_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace lcjt {

// Supported element set: organic subset plus halogens and hydrogen.
enum class Element : std::uint8_t { kH, kB, kC, kN, kO, kF, kP, kS, kCl, kBr, kI };

constexpr int kNumElements = 11;

constexpr int element_index(Element e) { return static_cast<int>(e); }

std::string_view element_symbol(Element e);
std::optional<Element> element_from_symbol(std::string_view symbol);

int atomic_number(Element e);

// IUPAC standard atomic weight (abridged, conventional values).
double atomic_weight(Element e);

// Valence states of the neutral element: C {4}, N {3}, O {2}, S {2,4,6},
// P {3,5}, halogens {1}, B {3}, H {1}.
std::span<const int> neutral_valences(Element e);

// Total valences (bond order sum + hydrogens) admissible for the element at
// the given formal charge, ascending. Groups 15-17 shift by +charge (N+ -> 4,
// O- -> 1), carbon and hydrogen lose |charge|, boron shifts by -charge.
std::vector<int> allowed_valences(Element e, int charge);

// Elements that may be written in lowercase (aromatic) form.
bool aromatic_capable(Element e);

bool is_halogen(Element e);

}  // namespace lcjt

#endif  // LCJT_CHEM_ELEMENT_H_
