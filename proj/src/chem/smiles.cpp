//
// Project lcjtvae - Copyright 2026 The lcjtvae Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "lcjt/chem/smiles.h"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <tuple>

#include "lcjt/chem/sanitize.h"
#include "lcjt/error.h"

namespace lcjt {
namespace {
enum class BondSymbol { kNone, kSingle, kDouble, kTriple, kAromatic };

class SmilesReader {
public:
  explicit SmilesReader(std::string_view text): text_(text) { }

  Molecule read(const SmilesOptions &opts);

private:
  struct RingOpen {
    int atom;
    BondSymbol bond;
    int pos;
  };

  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }
  [[noreturn]] void fail(const std::string &what) const {
    throw ParseError("SMILES: " + what, static_cast<int>(pos_));
  }

  int read_organic_atom();
  int read_bracket_atom();
  void connect(int a, int b, BondSymbol sym);

  std::string_view text_;
  std::size_t pos_ = 0;
  Molecule mol_;
  std::vector<HydrogenMode> modes_;
  std::map<int, RingOpen> open_rings_;
};

BondOrder resolve_bond(BondSymbol sym, bool both_aromatic) {
  switch (sym) {
  case BondSymbol::kSingle:
    return BondOrder::kSingle;
  case BondSymbol::kDouble:
    return BondOrder::kDouble;
  case BondSymbol::kTriple:
    return BondOrder::kTriple;
  case BondSymbol::kAromatic:
    return BondOrder::kAromatic;
  case BondSymbol::kNone:
    break;
  }
  return both_aromatic ? BondOrder::kAromatic : BondOrder::kSingle;
}

void SmilesReader::connect(int a, int b, BondSymbol sym) {
  BondOrder order =
      resolve_bond(sym, mol_.atom(a).aromatic && mol_.atom(b).aromatic);
  if (mol_.find_bond(a, b) >= 0)
    fail("duplicate bond");
  mol_.add_bond(a, b, order);
}

int SmilesReader::read_organic_atom() {
  Atom atom;
  char c = text_[pos_];
  std::string symbol(1, c);
  if (c == 'C' && pos_ + 1 < text_.size() && text_[pos_ + 1] == 'l') {
    symbol = "Cl";
  } else if (c == 'B' && pos_ + 1 < text_.size() && text_[pos_ + 1] == 'r') {
    symbol = "Br";
  }

  if (std::islower(static_cast<unsigned char>(c))) {
    if (std::string_view("bcnops").find(c) == std::string_view::npos)
      fail(std::string("unknown element '") + c + "'");
    atom.aromatic = true;
    symbol[0] = static_cast<char>(std::toupper(c));
  } else if (std::string_view("BCNOPSFI").find(c) == std::string_view::npos) {
    fail(std::string("unknown element '") + c + "'");
  }

  auto element = element_from_symbol(symbol);
  if (!element)
    fail("unknown element '" + symbol + "'");
  atom.element = *element;
  pos_ += symbol.size();
  modes_.push_back(HydrogenMode::kInfer);
  return mol_.add_atom(atom);
}

int SmilesReader::read_bracket_atom() {
  ++pos_;  // '['
  while (std::isdigit(static_cast<unsigned char>(peek())))
    ++pos_;  // isotope

  Atom atom;
  if (at_end())
    fail("unterminated bracket atom");
  std::string symbol;
  char c = peek();
  if (std::isupper(static_cast<unsigned char>(c))) {
    symbol.push_back(c);
    ++pos_;
    char d = peek();
    if (std::islower(static_cast<unsigned char>(d))) {
      std::string two = symbol + d;
      if (element_from_symbol(two)) {
        symbol = two;
        ++pos_;
      } else if (std::string_view("bcnops").find(d) == std::string_view::npos
                 && d != 'H') {
        // Two-letter element outside the supported set (e.g. "Se", "Na").
        fail("unsupported element '" + two + "'");
      }
    }
  } else if (std::islower(static_cast<unsigned char>(c))) {
    if (std::string_view("bcnops").find(c) == std::string_view::npos)
      fail(std::string("unsupported aromatic element '") + c + "'");
    symbol.push_back(static_cast<char>(std::toupper(c)));
    atom.aromatic = true;
    ++pos_;
    if (std::islower(static_cast<unsigned char>(peek())))
      fail("unsupported aromatic element");
  } else {
    fail("expected element symbol");
  }

  auto element = element_from_symbol(symbol);
  if (!element)
    fail("unknown element '" + symbol + "'");
  atom.element = *element;

  // Chirality (discarded).
  while (peek() == '@')
    ++pos_;
  if (pos_ + 1 < text_.size() && std::isupper(static_cast<unsigned char>(peek()))
      && peek() != 'H') {
    std::string_view tag = text_.substr(pos_, 2);
    if (tag == "TH" || tag == "AL" || tag == "SP" || tag == "TB"
        || tag == "OH") {
      pos_ += 2;
      while (std::isdigit(static_cast<unsigned char>(peek())))
        ++pos_;
    }
  }

  if (peek() == 'H') {
    ++pos_;
    int h = 1;
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      h = peek() - '0';
      ++pos_;
    }
    atom.implicit_h = h;
  }

  if (peek() == '+' || peek() == '-') {
    char sign = peek();
    int magnitude = 0;
    while (peek() == sign) {
      ++magnitude;
      ++pos_;
    }
    if (magnitude == 1 && std::isdigit(static_cast<unsigned char>(peek()))) {
      magnitude = 0;
      while (std::isdigit(static_cast<unsigned char>(peek()))) {
        magnitude = magnitude * 10 + (peek() - '0');
        ++pos_;
      }
    }
    if (magnitude > 8)
      fail("bad charge");
    atom.formal_charge = sign == '+' ? magnitude : -magnitude;
  }

  if (peek() == ':') {
    ++pos_;
    if (!std::isdigit(static_cast<unsigned char>(peek())))
      fail("bad atom class");
    while (std::isdigit(static_cast<unsigned char>(peek())))
      ++pos_;
  }

  if (peek() != ']')
    fail("bad bracket atom");
  ++pos_;
  modes_.push_back(HydrogenMode::kFixed);
  return mol_.add_atom(atom);
}

Molecule SmilesReader::read(const SmilesOptions &opts) {
  if (text_.empty())
    fail("empty input");

  std::vector<int> branch_stack;
  int prev = -1;
  BondSymbol pending = BondSymbol::kNone;
  bool pending_set = false;
  bool after_dot = false;

  auto take_bond = [&](BondSymbol s) {
    if (pending_set)
      fail("consecutive bond symbols");
    pending = s;
    pending_set = true;
  };

  while (!at_end()) {
    char c = peek();
    if (c == '-' || c == '/' || c == '\\') {
      ++pos_;
      take_bond(BondSymbol::kSingle);
    } else if (c == '=') {
      ++pos_;
      take_bond(BondSymbol::kDouble);
    } else if (c == '#') {
      ++pos_;
      take_bond(BondSymbol::kTriple);
    } else if (c == ':') {
      ++pos_;
      take_bond(BondSymbol::kAromatic);
    } else if (c == '(') {
      if (prev < 0)
        fail("branch without a preceding atom");
      if (pending_set)
        fail("bond symbol before branch");
      branch_stack.push_back(prev);
      ++pos_;
      if (peek() == ')')
        fail("empty branch");
    } else if (c == ')') {
      if (branch_stack.empty())
        fail("unbalanced ')'");
      if (pending_set)
        fail("dangling bond symbol");
      prev = branch_stack.back();
      branch_stack.pop_back();
      ++pos_;
    } else if (c == '.') {
      if (pending_set || prev < 0)
        fail("misplaced '.'");
      prev = -1;
      after_dot = true;
      ++pos_;
    } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '%') {
      if (prev < 0)
        fail("ring closure without an atom");
      int number;
      const std::size_t start = pos_;
      if (c == '%') {
        if (pos_ + 2 >= text_.size()
            || !std::isdigit(static_cast<unsigned char>(text_[pos_ + 1]))
            || !std::isdigit(static_cast<unsigned char>(text_[pos_ + 2])))
          fail("bad ring closure number");
        number = (text_[pos_ + 1] - '0') * 10 + (text_[pos_ + 2] - '0');
        pos_ += 3;
      } else {
        number = c - '0';
        ++pos_;
      }
      auto it = open_rings_.find(number);
      if (it == open_rings_.end()) {
        open_rings_[number] = {
          prev, pending_set ? pending : BondSymbol::kNone,
          static_cast<int>(start) };
      } else {
        RingOpen open = it->second;
        open_rings_.erase(it);
        BondSymbol sym = pending_set ? pending : BondSymbol::kNone;
        if (sym != BondSymbol::kNone && open.bond != BondSymbol::kNone
            && sym != open.bond)
          fail("conflicting ring closure bond symbols");
        if (sym == BondSymbol::kNone)
          sym = open.bond;
        if (open.atom == prev)
          fail("ring closure to the same atom");
        connect(open.atom, prev, sym);
      }
      pending_set = false;
      pending = BondSymbol::kNone;
    } else if (c == '[' || std::isalpha(static_cast<unsigned char>(c))) {
      int atom = c == '[' ? read_bracket_atom() : read_organic_atom();
      if (prev >= 0) {
        connect(prev, atom, pending);
      } else if (pending_set) {
        fail("bond symbol without a preceding atom");
      } else if (mol_.num_atoms() > 1 && !after_dot) {
        fail("atom without a connection");
      }
      pending_set = false;
      pending = BondSymbol::kNone;
      after_dot = false;
      prev = atom;
    } else if (c == '*') {
      fail("wildcard atoms are not supported");
    } else {
      fail(std::string("unexpected character '") + c + "'");
    }
  }

  if (!branch_stack.empty())
    fail("unbalanced '('");
  if (pending_set)
    fail("dangling bond symbol");
  if (after_dot)
    fail("trailing '.'");
  if (!open_rings_.empty()) {
    pos_ = open_rings_.begin()->second.pos;
    fail("unclosed ring " + std::to_string(open_rings_.begin()->first));
  }

  sanitize(mol_, modes_, opts.perceive_aromaticity);
  mol_.set_source_text(std::string(text_));
  return std::move(mol_);
}

// --- canonical ranking -------------------------------------------------------

int bond_code(const Bond &b) {
  return static_cast<int>(b.order);
}

std::vector<int> dense_ranks(const std::vector<std::vector<long>> &keys) {
  const int n = static_cast<int>(keys.size());
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return keys[a] < keys[b]; });
  std::vector<int> rank(n, 0);
  int r = 0;
  for (int i = 0; i < n; ++i) {
    if (i > 0 && keys[order[i]] != keys[order[i - 1]])
      ++r;
    rank[order[i]] = r;
  }
  return rank;
}

int count_classes(const std::vector<int> &rank) {
  if (rank.empty())
    return 0;
  return *std::max_element(rank.begin(), rank.end()) + 1;
}

std::vector<int> refine(const Molecule &mol, std::vector<int> rank) {
  int classes = count_classes(rank);
  while (true) {
    std::vector<std::vector<long>> keys(mol.num_atoms());
    for (int i = 0; i < mol.num_atoms(); ++i) {
      std::vector<long> nbr;
      for (const Neighbor &nb: mol.neighbors(i))
        nbr.push_back(static_cast<long>(rank[nb.atom]) * 8
                      + bond_code(mol.bond(nb.bond)));
      std::sort(nbr.begin(), nbr.end());
      keys[i].push_back(rank[i]);
      keys[i].insert(keys[i].end(), nbr.begin(), nbr.end());
    }
    std::vector<int> next = dense_ranks(keys);
    int next_classes = count_classes(next);
    rank = std::move(next);
    if (next_classes == classes)
      return rank;
    classes = next_classes;
  }
}

// --- writer ------------------------------------------------------------------

bool organic_symbol_allowed(Element e) {
  return e != Element::kH;
}

std::string atom_token(const Molecule &mol, int i) {
  const Atom &a = mol.atom(i);
  std::string symbol(element_symbol(a.element));
  if (a.aromatic)
    symbol[0] = static_cast<char>(std::tolower(symbol[0]));

  if (a.formal_charge == 0 && organic_symbol_allowed(a.element)) {
    OrganicHydrogens inferred = infer_organic_hydrogens(mol, i);
    bool pi_matches = !a.aromatic || inferred.wants_pi == needs_pi_bond(mol, i);
    if (inferred.implicit_h == a.implicit_h && pi_matches)
      return symbol;
  }

  std::string out = "[" + symbol;
  if (a.implicit_h > 0) {
    out += "H";
    if (a.implicit_h > 1)
      out += std::to_string(a.implicit_h);
  }
  if (a.formal_charge != 0) {
    out += a.formal_charge > 0 ? "+" : "-";
    int mag = std::abs(a.formal_charge);
    if (mag > 1)
      out += std::to_string(mag);
  }
  out += "]";
  return out;
}

std::string bond_token(const Molecule &mol, const Bond &b) {
  bool both_aromatic = mol.atom(b.a).aromatic && mol.atom(b.b).aromatic;
  switch (b.order) {
  case BondOrder::kSingle:
    return both_aromatic ? "-" : "";
  case BondOrder::kDouble:
    return "=";
  case BondOrder::kTriple:
    return "#";
  case BondOrder::kAromatic:
    return both_aromatic ? "" : ":";
  }
  return "";
}

class SmilesWriter {
public:
  SmilesWriter(const Molecule &mol, std::span<const int> ranks)
      : mol_(mol), ranks_(ranks), visit_(mol.num_atoms(), -1),
        children_(mol.num_atoms()), closures_(mol.num_atoms()),
        ring_digit_(mol.num_bonds(), -1) { }

  std::string write() {
    std::vector<int> starts;
    std::vector<int> comp;
    int ncomp = mol_.connected_components(comp);
    std::vector<int> best(ncomp, -1);
    for (int i = 0; i < mol_.num_atoms(); ++i) {
      int &b = best[comp[i]];
      if (b < 0 || ranks_[i] < ranks_[b])
        b = i;
    }
    std::sort(best.begin(), best.end(),
              [&](int a, int b) { return ranks_[a] < ranks_[b]; });

    for (int s: best)
      plan(s);
    for (std::size_t k = 0; k < best.size(); ++k) {
      if (k > 0)
        out_ << '.';
      emit(best[k], -1);
    }
    return out_.str();
  }

private:
  std::vector<Neighbor> sorted_neighbors(int u) const {
    auto nbs = mol_.neighbors(u);
    std::vector<Neighbor> out(nbs.begin(), nbs.end());
    std::sort(out.begin(), out.end(), [&](const Neighbor &x, const Neighbor &y) {
      return ranks_[x.atom] < ranks_[y.atom];
    });
    return out;
  }

  void plan(int start) {
    struct Frame {
      int atom;
      int via_bond;
      std::vector<Neighbor> nbs;
      std::size_t next;
    };
    std::vector<Frame> stack;
    std::vector<bool> bond_seen(mol_.num_bonds(), false);
    visit_[start] = counter_++;
    stack.push_back({ start, -1, sorted_neighbors(start), 0 });
    while (!stack.empty()) {
      Frame &f = stack.back();
      if (f.next == f.nbs.size()) {
        stack.pop_back();
        continue;
      }
      Neighbor nb = f.nbs[f.next++];
      if (nb.bond == f.via_bond || bond_seen[nb.bond])
        continue;
      bond_seen[nb.bond] = true;
      if (visit_[nb.atom] >= 0) {
        closures_[f.atom].push_back(nb);
        closures_[nb.atom].push_back({ f.atom, nb.bond });
        continue;
      }
      visit_[nb.atom] = counter_++;
      children_[f.atom].push_back(nb);
      stack.push_back({ nb.atom, nb.bond, sorted_neighbors(nb.atom), 0 });
    }
  }

  int take_digit() {
    for (int d = 1;; ++d) {
      if (std::find(used_digits_.begin(), used_digits_.end(), d)
          == used_digits_.end()) {
        used_digits_.push_back(d);
        return d;
      }
    }
  }

  void release_digit(int d) {
    used_digits_.erase(
        std::find(used_digits_.begin(), used_digits_.end(), d));
  }

  void emit(int start, int via_bond) {
    struct Frame {
      int atom;
      std::size_t next_child;
    };
    // Iterative emission: each frame writes its atom on entry, then its
    // children, parenthesizing all but the last.
    std::vector<Frame> stack;
    auto enter = [&](int atom, int bond) {
      if (bond >= 0)
        out_ << bond_token(mol_, mol_.bond(bond));
      out_ << atom_token(mol_, atom);
      std::vector<Neighbor> rings = closures_[atom];
      std::sort(rings.begin(), rings.end(),
                [&](const Neighbor &x, const Neighbor &y) {
                  return visit_[x.atom] < visit_[y.atom];
                });
      for (const Neighbor &nb: rings) {
        int &digit = ring_digit_[nb.bond];
        if (digit < 0) {
          digit = take_digit();
          out_ << bond_token(mol_, mol_.bond(nb.bond));
          write_digit(digit);
        } else {
          write_digit(digit);
          release_digit(digit);
        }
      }
      stack.push_back({ atom, 0 });
    };

    enter(start, via_bond);
    while (!stack.empty()) {
      Frame &f = stack.back();
      const auto &kids = children_[f.atom];
      if (f.next_child == kids.size()) {
        stack.pop_back();
        if (!stack.empty()) {
          Frame &parent = stack.back();
          if (parent.next_child < children_[parent.atom].size())
            out_ << ')';
        }
        continue;
      }
      const Neighbor nb = kids[f.next_child++];
      if (f.next_child < kids.size())
        out_ << '(';
      enter(nb.atom, nb.bond);
    }
  }

  void write_digit(int d) {
    if (d < 10)
      out_ << d;
    else
      out_ << '%' << d;
  }

  const Molecule &mol_;
  std::span<const int> ranks_;
  std::vector<int> visit_;
  int counter_ = 0;
  std::vector<std::vector<Neighbor>> children_;
  std::vector<std::vector<Neighbor>> closures_;
  std::vector<int> ring_digit_;
  std::vector<int> used_digits_;
  std::ostringstream out_;
};
}  // namespace

Molecule parse_smiles(std::string_view text, const SmilesOptions &opts) {
  for (char c: text) {
    if (static_cast<unsigned char>(c) > 127)
      throw ParseError("SMILES: non-ASCII input");
  }
  SmilesReader reader(text);
  return reader.read(opts);
}

std::vector<int> canonical_ranks(const Molecule &mol) {
  const int n = mol.num_atoms();
  std::vector<int> ring_count(n, 0);
  for (const auto &ring: mol.rings()) {
    for (int a: ring)
      ++ring_count[a];
  }

  std::vector<std::vector<long>> keys(n);
  for (int i = 0; i < n; ++i) {
    const Atom &a = mol.atom(i);
    keys[i] = { mol.degree(i),
                atomic_number(a.element),
                a.aromatic ? 1 : 0,
                a.formal_charge,
                a.implicit_h,
                ring_count[i] };
  }
  std::vector<int> rank = refine(mol, dense_ranks(keys));

  while (count_classes(rank) < n) {
    // Break the tie in the lowest tied class at its lowest-index member.
    std::vector<int> size(n, 0);
    for (int r: rank)
      ++size[r];
    int tied = -1;
    for (int r = 0; r < n; ++r) {
      if (size[r] > 1) {
        tied = r;
        break;
      }
    }
    int pick = -1;
    for (int i = 0; i < n; ++i) {
      if (rank[i] == tied) {
        pick = i;
        break;
      }
    }
    std::vector<std::vector<long>> split(n);
    for (int i = 0; i < n; ++i)
      split[i] = { 2L * rank[i] - (i == pick ? 1 : 0) };
    rank = refine(mol, dense_ranks(split));
  }
  return rank;
}

std::string write_smiles(const Molecule &mol, std::span<const int> ranks) {
  if (mol.empty())
    return "";
  SmilesWriter writer(mol, ranks);
  return writer.write();
}

std::string write_canonical_smiles(const Molecule &mol) {
  std::vector<int> ranks = canonical_ranks(mol);
  return write_smiles(mol, ranks);
}

std::vector<std::string> read_smiles_lines(std::string_view text) {
  std::vector<std::string> out;
  std::istringstream in { std::string(text) };
  std::string line;
  while (std::getline(in, line)) {
    // '#' is also the triple-bond symbol, so only a leading '#' starts a
    // comment.
    std::istringstream tokens(line);
    std::string smi;
    if (tokens >> smi && smi.front() != '#')
      out.push_back(smi);
  }
  return out;
}

}  // namespace lcjt
