//
// Project lcjtvae - Copyright 2026 The lcjtvae Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <charconv>
#include <string>

#include "lcjt/chem/sanitize.h"
#include "lcjt/error.h"
#include "lcjt/geom/conformer.h"

namespace lcjt {
namespace {
std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t'))
    s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t'))
    s.remove_suffix(1);
  return s;
}

std::string_view field(std::string_view line, std::size_t pos, std::size_t len) {
  if (pos >= line.size())
    return {};
  return trim(line.substr(pos, len));
}

template <class T>
bool to_number(std::string_view s, T &out) {
  if (s.empty())
    return false;
  if (s.front() == '+')
    s.remove_prefix(1);
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

int int_field(std::string_view line, std::size_t pos, std::size_t len,
              int line_no, const char *what) {
  int v = 0;
  if (!to_number(field(line, pos, len), v))
    throw ParseError(std::string("sdf: bad ") + what, line_no);
  return v;
}

int charge_from_code(int code) {
  switch (code) {
  case 1:
    return 3;
  case 2:
    return 2;
  case 3:
    return 1;
  case 5:
    return -1;
  case 6:
    return -2;
  case 7:
    return -3;
  default:
    return 0;
  }
}

class SdfReader {
public:
  explicit SdfReader(std::string_view text) {
    while (!text.empty()) {
      auto eol = text.find('\n');
      std::string_view line = text.substr(0, eol);
      if (!line.empty() && line.back() == '\r')
        line.remove_suffix(1);
      lines_.push_back(line);
      if (eol == std::string_view::npos)
        break;
      text.remove_prefix(eol + 1);
    }
  }

  std::vector<SdfRecord> read() {
    std::vector<SdfRecord> out;
    while (true) {
      while (pos_ < lines_.size() && trim(lines_[pos_]).empty())
        ++pos_;
      if (pos_ >= lines_.size())
        break;
      out.push_back(read_record());
    }
    return out;
  }

private:
  bool at_end() const { return pos_ >= lines_.size(); }
  int line_no() const { return static_cast<int>(pos_) + 1; }

  std::string_view next(const char *what) {
    if (at_end())
      throw ParseError(std::string("sdf: unexpected end of input in ") + what,
                       line_no());
    return lines_[pos_++];
  }

  SdfRecord read_record();

  std::vector<std::string_view> lines_;
  std::size_t pos_ = 0;
};

SdfRecord SdfReader::read_record() {
  SdfRecord rec;
  rec.name = std::string(trim(next("header")));
  next("header");
  next("header");

  const int counts_line = line_no();
  std::string_view counts = next("counts line");
  const int natoms = int_field(counts, 0, 3, counts_line, "atom count");
  const int nbonds = int_field(counts, 3, 3, counts_line, "bond count");
  std::string_view version = field(counts, 33, 6);
  if (!version.empty() && version != "V2000")
    throw ParseError("sdf: unsupported version tag " + std::string(version),
                     counts_line);
  if (natoms < 0 || nbonds < 0)
    throw ParseError("sdf: negative counts", counts_line);

  std::size_t block_end = pos_;
  while (block_end < lines_.size() && !lines_[block_end].starts_with("M  ")
         && !lines_[block_end].starts_with("$$$$"))
    ++block_end;
  if (block_end - pos_ != static_cast<std::size_t>(natoms + nbonds))
    throw ParseError("sdf: counts-line mismatch, declared "
                         + std::to_string(natoms) + " atoms and "
                         + std::to_string(nbonds) + " bonds but found "
                         + std::to_string(block_end - pos_) + " block lines",
                     counts_line);

  auto block_line = [&](const char *what) {
    if (at_end() || lines_[pos_].starts_with("M  ")
        || lines_[pos_].starts_with("$$$$"))
      throw ParseError(std::string("sdf: counts-line mismatch, ") + what
                           + " block shorter than declared",
                       line_no());
    return next(what);
  };

  Molecule full;
  Conformer coords;
  for (int i = 0; i < natoms; ++i) {
    const int ln = line_no();
    std::string_view line = block_line("atom");
    Eigen::Vector3d r;
    for (int c = 0; c < 3; ++c) {
      if (!to_number(field(line, 10 * c, 10), r[c]))
        throw ParseError("sdf: non-numeric coordinate", ln);
    }
    std::string_view sym = field(line, 31, 3);
    auto element = element_from_symbol(sym);
    if (!element)
      throw ParseError("sdf: unsupported element '" + std::string(sym) + "'",
                       ln);
    Atom atom;
    atom.element = *element;
    std::string_view code = field(line, 36, 3);
    int ccode = 0;
    if (!code.empty() && !to_number(code, ccode))
      throw ParseError("sdf: bad charge code", ln);
    atom.formal_charge = charge_from_code(ccode);
    full.add_atom(atom);
    coords.coords.push_back(r);
  }
  for (int i = 0; i < nbonds; ++i) {
    const int ln = line_no();
    std::string_view line = block_line("bond");
    int a = int_field(line, 0, 3, ln, "bond atom");
    int b = int_field(line, 3, 3, ln, "bond atom");
    int type = int_field(line, 6, 3, ln, "bond type");
    if (a < 1 || b < 1 || a > natoms || b > natoms)
      throw ParseError("sdf: bond references missing atom", ln);
    if (type < 1 || type > 4)
      throw ParseError("sdf: unsupported bond type " + std::to_string(type),
                       ln);
    try {
      full.add_bond(a - 1, b - 1, static_cast<BondOrder>(type));
    } catch (const Error &e) {
      throw ParseError(std::string("sdf: ") + e.what(), ln);
    }
    if (type == 4) {
      full.atom(a - 1).aromatic = true;
      full.atom(b - 1).aromatic = true;
    }
  }

  bool charges_reset = false;
  while (true) {
    const int ln = line_no();
    std::string_view line = next("properties block");
    if (line.starts_with("M  END"))
      break;
    if (line.starts_with("$$$$"))
      throw ParseError("sdf: record ended before M  END", ln);
    if (!line.starts_with("M  CHG"))
      continue;
    if (!charges_reset) {
      for (int i = 0; i < full.num_atoms(); ++i)
        full.atom(i).formal_charge = 0;
      charges_reset = true;
    }
    int n = int_field(line, 6, 3, ln, "M  CHG count");
    for (int k = 0; k < n; ++k) {
      int atom = int_field(line, 9 + 8 * k, 4, ln, "M  CHG atom");
      int charge = int_field(line, 13 + 8 * k, 4, ln, "M  CHG value");
      if (atom < 1 || atom > natoms)
        throw ParseError("sdf: M  CHG references missing atom", ln);
      full.atom(atom - 1).formal_charge = charge;
    }
  }
  while (!at_end() && !lines_[pos_].starts_with("$$$$"))
    ++pos_;
  if (!at_end())
    ++pos_;

  // Fold terminal hydrogens into their heavy neighbour.
  std::vector<int> keep;
  std::vector<int> h_count(natoms, 0);
  bool explicit_h = false;
  for (int i = 0; i < natoms; ++i) {
    const Atom &a = full.atom(i);
    if (a.element == Element::kH && full.degree(i) == 1 && a.formal_charge == 0
        && full.atom(full.neighbors(i)[0].atom).element != Element::kH) {
      ++h_count[full.neighbors(i)[0].atom];
      explicit_h = true;
      continue;
    }
    keep.push_back(i);
  }
  rec.molecule = induced_subgraph(full, keep);
  for (std::size_t k = 0; k < keep.size(); ++k) {
    rec.molecule.atom(static_cast<int>(k)).implicit_h = h_count[keep[k]];
    rec.conformer.coords.push_back(coords.coords[keep[k]]);
  }
  std::vector<HydrogenMode> modes(rec.molecule.num_atoms(),
                                  explicit_h ? HydrogenMode::kFixed
                                             : HydrogenMode::kInfer);
  try {
    sanitize(rec.molecule, modes);
  } catch (const ParseError &e) {
    throw ParseError(std::string("sdf: ") + e.what(), counts_line);
  } catch (const ValenceError &e) {
    throw ParseError(std::string("sdf: ") + e.what(), counts_line);
  }
  rec.molecule.set_source_text(rec.name);
  return rec;
}
}  // namespace

std::vector<SdfRecord> parse_sdf_v2000(std::string_view text) {
  return SdfReader(text).read();
}

}  // namespace lcjt
