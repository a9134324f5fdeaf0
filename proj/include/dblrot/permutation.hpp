#pragma once

#include <array>
#include <cstdint>
#include <istream>
#include <sstream>
#include <string>
#include <vector>

#include "dblrot/dynamics.hpp"
#include "dblrot/itm3.hpp"

namespace dblrot {

enum class Letter : std::uint8_t { A = 0, B = 1, C = 2, D = 3 };

inline constexpr int kLetters = 4;
inline constexpr int kWord = 5;

inline char letter_char(Letter l) { return static_cast<char>('A' + static_cast<int>(l)); }
inline int idx(Letter l) { return static_cast<int>(l); }
inline Letter letter_at(int i) { return static_cast<Letter>(i); }

/// A letter of w1, possibly the gap marker.
struct Symbol {
  Letter letter = Letter::A;
  bool gap = false;

  friend bool operator==(const Symbol& a, const Symbol& b) {
    return a.letter == b.letter && a.gap == b.gap;
  }
  friend bool operator!=(const Symbol& a, const Symbol& b) { return !(a == b); }
};

using Word0 = std::array<Letter, kWord>;
using Word1 = std::array<Symbol, kWord>;

inline std::string symbol_text(const Symbol& s) {
  std::string out(1, letter_char(s.letter));
  if (s.gap) out += '_';
  return out;
}

/// The 5-cell two-word representation with one repeated letter in w0 and a
/// gap symbol (carrying that same letter) in w1. Positions are 0-based.
struct ITMPermutation {
  Word0 w0{};
  Word1 w1{};
  std::array<Scalar, kLetters> len;

  const Scalar& length_of(Letter l) const { return len[idx(l)]; }

  Letter repeated() const {
    std::array<int, kLetters> cnt{};
    for (auto l : w0) ++cnt[idx(l)];
    for (int i = 0; i < kLetters; ++i) {
      if (cnt[i] == 2) return letter_at(i);
    }
    throw Error(ErrorKind::InvalidArgument, "w0 has no repeated letter");
  }

  int gap_index() const {
    for (int i = 0; i < kWord; ++i) {
      if (w1[i].gap) return i;
    }
    throw Error(ErrorKind::InvalidArgument, "w1 has no gap symbol");
  }

  /// Position in w1 of the non-gap occurrence of l.
  int position_in_w1(Letter l) const {
    for (int i = 0; i < kWord; ++i) {
      if (!w1[i].gap && w1[i].letter == l) return i;
    }
    throw Error(ErrorKind::InvalidArgument, std::string("letter ") + letter_char(l) + " not in w1");
  }

  Scalar total() const {
    Scalar s = 0;
    for (auto l : w0) s += len[idx(l)];
    return s;
  }

  void validate_words() const {
    std::array<int, kLetters> c0{}, c1{};
    int gaps = 0;
    for (auto l : w0) ++c0[idx(l)];
    for (const auto& s : w1) {
      if (s.gap) {
        ++gaps;
      } else {
        ++c1[idx(s.letter)];
      }
    }
    int twice = 0;
    for (int i = 0; i < kLetters; ++i) {
      if (c0[i] == 2) {
        ++twice;
      } else if (c0[i] != 1) {
        throw Error(ErrorKind::InvalidArgument, "w0 must use every letter, one of them twice");
      }
      if (c1[i] != 1) throw Error(ErrorKind::InvalidArgument, "w1 must use every letter once");
    }
    if (twice != 1 || gaps != 1) {
      throw Error(ErrorKind::InvalidArgument, "need exactly one repeated letter and one gap");
    }
    if (w1[gap_index()].letter != repeated()) {
      throw Error(ErrorKind::InvalidArgument, "gap letter differs from the repeated letter");
    }
  }

  void validate() const {
    validate_words();
    for (const auto& l : len) {
      if (l <= 0) throw Error(ErrorKind::InvalidArgument, "letter lengths must be positive");
    }
  }

  friend bool operator==(const ITMPermutation& a, const ITMPermutation& b) {
    return a.w0 == b.w0 && a.w1 == b.w1 && a.len == b.len;
  }
  friend bool operator!=(const ITMPermutation& a, const ITMPermutation& b) { return !(a == b); }
};

/// Builds words from text such as "A D B C D" and "C D B D_ A".
inline Word0 parse_word0(const std::string& text) {
  std::istringstream in(text);
  Word0 w{};
  std::string tok;
  int n = 0;
  while (in >> tok) {
    if (n >= kWord || tok.size() != 1 || tok[0] < 'A' || tok[0] > 'D') {
      throw Error(ErrorKind::Parse, "bad top word '" + text + "'");
    }
    w[n++] = letter_at(tok[0] - 'A');
  }
  if (n != kWord) throw Error(ErrorKind::Parse, "top word needs 5 letters: '" + text + "'");
  return w;
}

inline Word1 parse_word1(const std::string& text) {
  std::istringstream in(text);
  Word1 w{};
  std::string tok;
  int n = 0;
  while (in >> tok) {
    const bool gap = tok.size() == 2 && tok[1] == '_';
    if (n >= kWord || (tok.size() != 1 && !gap) || tok[0] < 'A' || tok[0] > 'D') {
      throw Error(ErrorKind::Parse, "bad bottom word '" + text + "'");
    }
    w[n++] = Symbol{letter_at(tok[0] - 'A'), gap};
  }
  if (n != kWord) throw Error(ErrorKind::Parse, "bottom word needs 5 symbols: '" + text + "'");
  return w;
}

inline ITMPermutation make_perm(const std::string& top, const std::string& bottom,
                                std::array<Scalar, kLetters> lengths) {
  ITMPermutation p{parse_word0(top), parse_word1(bottom), std::move(lengths)};
  p.validate();
  return p;
}

inline std::string words_text(const Word0& w0, const Word1& w1) {
  std::string out;
  for (int i = 0; i < kWord; ++i) {
    if (i) out += ' ';
    out += letter_char(w0[i]);
  }
  out += " / ";
  for (int i = 0; i < kWord; ++i) {
    if (i) out += ' ';
    out += symbol_text(w1[i]);
  }
  return out;
}

/// Two word lines followed by one "X=p/q" line per letter.
inline std::string to_text(const ITMPermutation& p) {
  std::string out;
  for (int i = 0; i < kWord; ++i) out += std::string(i ? " " : "") + letter_char(p.w0[i]);
  out += '\n';
  for (int i = 0; i < kWord; ++i) out += (i ? " " : "") + symbol_text(p.w1[i]);
  out += '\n';
  for (int i = 0; i < kLetters; ++i) {
    out += std::string(1, letter_char(letter_at(i))) + "=" + to_string(p.len[i]) + "\n";
  }
  return out;
}

inline ITMPermutation parse_perm(std::istream& in) {
  std::string top, bottom, line;
  std::array<Scalar, kLetters> len;
  std::array<bool, kLetters> seen{};
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (top.empty()) {
      top = line;
    } else if (bottom.empty()) {
      bottom = line;
    } else {
      const auto eq = line.find('=');
      if (eq != 1 || line[0] < 'A' || line[0] > 'D') {
        throw Error(ErrorKind::Parse, "expected X=p/q, got '" + line + "'");
      }
      const int i = line[0] - 'A';
      len[i] = parse_scalar(line.substr(2));
      seen[i] = true;
    }
  }
  for (bool s : seen) {
    if (!s) throw Error(ErrorKind::Parse, "lengths for A, B, C and D are required");
  }
  return make_perm(top, bottom, std::move(len));
}

inline ITMPermutation parse_perm(const std::string& text) {
  std::istringstream in(text);
  return parse_perm(in);
}

/// The map cell by cell: cell k of w0 is sent onto the non-gap occurrence of
/// its letter in w1.
inline PiecewiseTranslation perm_to_piecewise(const ITMPermutation& p) {
  std::array<Scalar, kWord> img_start;
  Scalar run = 0;
  for (int i = 0; i < kWord; ++i) {
    img_start[i] = run;
    run += p.length_of(p.w1[i].letter);
  }
  std::vector<Branch> bs;
  bs.reserve(kWord);
  run = 0;
  for (int k = 0; k < kWord; ++k) {
    const Scalar& l = p.length_of(p.w0[k]);
    bs.push_back(Branch{Interval(run, run + l), img_start[p.position_in_w1(p.w0[k])] - run});
    run += l;
  }
  return PiecewiseTranslation(Interval(Scalar(0), run), std::move(bs));
}

inline Scalar eval_perm(const ITMPermutation& p, const Scalar& x) {
  Scalar run = 0;
  for (int k = 0; k < kWord; ++k) {
    const Scalar& l = p.length_of(p.w0[k]);
    if (run <= x && x < run + l) {
      Scalar before = 0;
      const int s = p.position_in_w1(p.w0[k]);
      for (int i = 0; i < s; ++i) before += p.length_of(p.w1[i].letter);
      return x + before - run;
    }
    run += l;
  }
  throw Error(ErrorKind::OutOfSupport, to_string(x) + " outside [0, " + to_string(run) + ")");
}

/// Both words reversed; geometrically conjugation by x -> L - x.
inline ITMPermutation flip(const ITMPermutation& p) {
  ITMPermutation q = p;
  for (int i = 0; i < kWord; ++i) {
    q.w0[i] = p.w0[kWord - 1 - i];
    q.w1[i] = p.w1[kWord - 1 - i];
  }
  return q;
}

/// Cuts the two overlapping branches of a 3-ITM into the overlap part and
/// the rest. Labels: the first free cell of domain interval k gets letter
/// k; the overlap letter is that of an interval lying wholly in the overlap,
/// D otherwise; a second free cell of one interval is D.
inline ITMPermutation split(const PiecewiseTranslation& m0) {
  const PiecewiseTranslation m = m0.translated(-m0.support().lo);
  if (m.branch_count() != 3) {
    throw Error(ErrorKind::NotThreeBranches,
                "split needs 3 branches, got " + std::to_string(m.branch_count()));
  }
  if (m.has_extremal_gap()) throw Error(ErrorKind::InvalidArgument, "map has extremal gaps");
  const IntervalSet over = m.overlaps();
  if (over.empty()) throw Error(ErrorKind::NoOverlap, "injective map (interval exchange)");
  const IntervalSet gaps = m.gaps();
  if (over.size() != 1 || gaps.size() != 1) {
    throw Error(ErrorKind::NonGeneric, "expected one overlap and one gap");
  }
  if (singularity_in_gap(m)) throw Error(ErrorKind::SingularityInGap, "reduce to a rotation first");
  const Interval o = over.pieces().front();

  struct Cell {
    Interval dom;
    Scalar shift;
    bool overlap;
    int owner;
  };
  std::vector<Cell> cells;
  int covering = 0, whole = -1, whole_count = 0;
  for (int k = 0; k < 3; ++k) {
    const auto& b = m.branches()[k];
    const Interval img = b.image();
    if (!img.intersects(o)) {
      cells.push_back({b.domain, b.shift, false, k});
      continue;
    }
    if (!img.contains(o)) throw Error(ErrorKind::NonGeneric, "overlap not inside one image");
    ++covering;
    if (img == o) {
      whole = k;
      ++whole_count;
    }
    const Interval pre = o.shifted(-b.shift);
    if (b.domain.lo < pre.lo) cells.push_back({Interval(b.domain.lo, pre.lo), b.shift, false, k});
    cells.push_back({pre, b.shift, true, k});
    if (pre.hi < b.domain.hi) cells.push_back({Interval(pre.hi, b.domain.hi), b.shift, false, k});
  }
  if (covering != 2 || whole_count > 1 || cells.size() != 5) {
    throw Error(ErrorKind::NonGeneric, "overlap is not cut out by exactly two branches");
  }

  const Letter rep = whole >= 0 ? letter_at(whole) : Letter::D;
  ITMPermutation p;
  std::array<bool, 3> named{};
  struct Placed {
    Scalar lo;
    Symbol sym;
  };
  std::vector<Placed> bottom;
  for (int i = 0; i < kWord; ++i) {
    const Cell& c = cells[i];
    Letter l;
    if (c.overlap) {
      l = rep;
    } else if (!named[c.owner]) {
      l = letter_at(c.owner);
      named[c.owner] = true;
    } else {
      l = Letter::D;
    }
    p.w0[i] = l;
    p.len[idx(l)] = c.dom.length();
    if (!c.overlap) bottom.push_back({c.dom.lo + c.shift, Symbol{l, false}});
  }
  bottom.push_back({o.lo, Symbol{rep, false}});
  bottom.push_back({gaps.pieces().front().lo, Symbol{rep, true}});
  std::sort(bottom.begin(), bottom.end(),
            [](const Placed& a, const Placed& b) { return a.lo < b.lo; });
  for (int i = 0; i < kWord; ++i) p.w1[i] = bottom[i].sym;
  p.validate();
  if (perm_to_piecewise(p) != m) {
    throw Error(ErrorKind::InvalidMap, "split does not reproduce the map");
  }
  return p;
}

inline ITMPermutation split(const ITM3& m) { return split(m.to_piecewise()); }

}  // namespace dblrot
