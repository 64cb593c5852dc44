//
// Project lcjtvae - Copyright 2026 The lcjtvae Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef LCJT_APP_SVG_H_
#define LCJT_APP_SVG_H_

#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace lcjt {

using SvgAttrs = std::vector<std::pair<std::string, std::string>>;

std::string xml_escape(std::string_view s);

// Minimal SVG writer; elements are emitted in insertion order.
class SvgDocument {
public:
  SvgDocument(double width, double height);

  void element(std::string_view tag, const SvgAttrs &attrs, std::string_view text = {});
  std::string str() const;

private:
  double width_;
  double height_;
  std::string body_;
};

// Coordinates with two decimals.
std::string svg_num(double v);

// Elements carrying data-* attributes, as (tag, {name without "data-" ->
// unescaped value}) in document order.
struct SvgDataElement {
  std::string tag;
  std::map<std::string, std::string> data;
};
std::vector<SvgDataElement> svg_data_elements(std::string_view svg);

}  // namespace lcjt

#endif  // LCJT_APP_SVG_H_
