//
// Project lcjtvae - Copyright 2026 The lcjtvae Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "lcjt/app/svg.h"

#include "lcjt/data/csv.h"

namespace lcjt {

std::string xml_escape(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c: s) {
    switch (c) {
    case '&':
      out += "&amp;";
      break;
    case '<':
      out += "&lt;";
      break;
    case '>':
      out += "&gt;";
      break;
    case '"':
      out += "&quot;";
      break;
    default:
      out += c;
    }
  }
  return out;
}

namespace {
std::string xml_unescape(std::string_view s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] != '&') {
      out += s[i];
      continue;
    }
    const auto semi = s.find(';', i);
    const std::string_view ent = s.substr(i, semi - i + 1);
    if (ent == "&amp;")
      out += '&';
    else if (ent == "&lt;")
      out += '<';
    else if (ent == "&gt;")
      out += '>';
    else if (ent == "&quot;")
      out += '"';
    else
      out += ent;
    i = semi;
  }
  return out;
}
}  // namespace

SvgDocument::SvgDocument(double width, double height) : width_(width), height_(height) { }

void SvgDocument::element(std::string_view tag, const SvgAttrs &attrs, std::string_view text) {
  body_ += "  <";
  body_ += tag;
  for (const auto &[k, v]: attrs)
    body_ += " " + k + "=\"" + xml_escape(v) + "\"";
  if (text.empty()) {
    body_ += "/>\n";
  } else {
    body_ += ">" + xml_escape(text) + "</" + std::string(tag) + ">\n";
  }
}

std::string SvgDocument::str() const {
  return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + svg_num(width_)
         + "\" height=\"" + svg_num(height_) + "\" viewBox=\"0 0 " + svg_num(width_) + " "
         + svg_num(height_) + "\" font-family=\"sans-serif\" font-size=\"11\">\n" + body_
         + "</svg>\n";
}

std::string svg_num(double v) { return format_fixed(v, 2); }

std::vector<SvgDataElement> svg_data_elements(std::string_view svg) {
  std::vector<SvgDataElement> out;
  std::size_t pos = 0;
  while ((pos = svg.find('<', pos)) != std::string_view::npos) {
    const auto end = svg.find('>', pos);
    if (end == std::string_view::npos)
      break;
    std::string_view tag = svg.substr(pos + 1, end - pos - 1);
    pos = end + 1;
    if (tag.empty() || tag[0] == '/' || tag[0] == '?' || tag[0] == '!')
      continue;
    SvgDataElement el;
    const auto name_end = tag.find_first_of(" \t\n/");
    el.tag = std::string(tag.substr(0, name_end));
    std::size_t p = 0;
    while ((p = tag.find(" data-", p)) != std::string_view::npos) {
      const auto eq = tag.find("=\"", p);
      const auto close = tag.find('"', eq + 2);
      if (eq == std::string_view::npos || close == std::string_view::npos)
        break;
      el.data[std::string(tag.substr(p + 6, eq - p - 6))]
          = xml_unescape(tag.substr(eq + 2, close - eq - 2));
      p = close + 1;
    }
    if (!el.data.empty())
      out.push_back(std::move(el));
  }
  return out;
}

}  // namespace lcjt
