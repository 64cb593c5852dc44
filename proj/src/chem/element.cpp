//
// Project lcjtvae - Copyright 2026 The lcjtvae Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "lcjt/chem/element.h"

#include <array>
#include <cstdlib>

namespace lcjt {
namespace {
struct ElementData {
  std::string_view symbol;
  int atomic_number;
  double weight;
};

constexpr std::array<ElementData, kNumElements> kElements { {
  {  "H",  1,   1.008 },
  {  "B",  5,  10.81 },
  {  "C",  6,  12.011 },
  {  "N",  7,  14.007 },
  {  "O",  8,  15.999 },
  {  "F",  9,  18.998 },
  {  "P", 15,  30.974 },
  {  "S", 16,  32.06 },
  { "Cl", 17,  35.45 },
  { "Br", 35,  79.904 },
  {  "I", 53, 126.904 },
} };

constexpr int kOne[] = { 1 };
constexpr int kThree[] = { 3 };
constexpr int kFour[] = { 4 };
constexpr int kTwo[] = { 2 };
constexpr int kPhosphorus[] = { 3, 5 };
constexpr int kSulfur[] = { 2, 4, 6 };
}  // namespace

std::string_view element_symbol(Element e) {
  return kElements[element_index(e)].symbol;
}

std::optional<Element> element_from_symbol(std::string_view symbol) {
  for (int i = 0; i < kNumElements; ++i) {
    if (kElements[i].symbol == symbol)
      return static_cast<Element>(i);
  }
  return std::nullopt;
}

int atomic_number(Element e) {
  return kElements[element_index(e)].atomic_number;
}

double atomic_weight(Element e) {
  return kElements[element_index(e)].weight;
}

std::span<const int> neutral_valences(Element e) {
  switch (e) {
  case Element::kH:
  case Element::kF:
  case Element::kCl:
  case Element::kBr:
  case Element::kI:
    return kOne;
  case Element::kB:
  case Element::kN:
    return kThree;
  case Element::kC:
    return kFour;
  case Element::kO:
    return kTwo;
  case Element::kP:
    return kPhosphorus;
  case Element::kS:
    return kSulfur;
  }
  return {};
}

std::vector<int> allowed_valences(Element e, int charge) {
  std::vector<int> out;
  for (int v: neutral_valences(e)) {
    int shifted;
    switch (e) {
    case Element::kC:
    case Element::kH:
      shifted = v - std::abs(charge);
      break;
    case Element::kB:
      shifted = v - charge;
      break;
    default:
      shifted = v + charge;
      break;
    }
    if (shifted >= 0)
      out.push_back(shifted);
  }
  return out;
}

bool aromatic_capable(Element e) {
  switch (e) {
  case Element::kB:
  case Element::kC:
  case Element::kN:
  case Element::kO:
  case Element::kP:
  case Element::kS:
    return true;
  default:
    return false;
  }
}

bool is_halogen(Element e) {
  return e == Element::kF || e == Element::kCl || e == Element::kBr
         || e == Element::kI;
}

}  // namespace lcjt
