#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "dblrot/permutation.hpp"

namespace dblrot {

enum class Side { Right, Left };
enum class StepKind { Continue, StopRotation, StopTie };

inline const char* to_string(Side s) { return s == Side::Right ? "right" : "left"; }
inline const char* to_string(StepKind k) {
  switch (k) {
    case StepKind::Continue: return "continue";
    case StepKind::StopRotation: return "stop-rotation";
    case StepKind::StopTie: return "stop-tie";
  }
  return "?";
}

struct StepOutcome {
  StepKind kind = StepKind::StopTie;
  Side side = Side::Right;
  std::optional<ITMPermutation> next;  // set for Continue
  Letter winner = Letter::A;
  Letter loser = Letter::A;
  bool loser_is_gap = false;
  std::string reason;

  bool is_continue() const { return kind == StepKind::Continue; }
};

/// Word part of a right step: what happens when the top (or bottom) symbol at
/// the right end wins. Lengths are not consulted.
struct WordStep {
  StepKind kind = StepKind::Continue;
  Word0 w0{};
  Word1 w1{};
  Letter winner = Letter::A;
  Letter loser = Letter::A;
  bool loser_is_gap = false;
};

/// s: a -> a b applied to the first n letters of w0.
inline Word0 substitute0(const Word0& w, int n, Letter a, Letter b) {
  Word0 out{};
  int k = 0;
  for (int i = 0; i < n; ++i) {
    out[k++] = w[i];
    if (w[i] == a) out[k++] = b;
  }
  if (k != kWord) throw Error(ErrorKind::ShapeUnsupported, "substitution changes word length");
  return out;
}

/// s applied to the first n symbols of w1; `ins` is what follows a.
inline Word1 substitute1(const Word1& w, int n, Letter a, Symbol ins, int fill_to) {
  Word1 out{};
  int k = 0;
  for (int i = 0; i < n; ++i) {
    out[k++] = w[i];
    if (!w[i].gap && w[i].letter == a) out[k++] = ins;
  }
  if (k != fill_to) throw Error(ErrorKind::ShapeUnsupported, "substitution changes word length");
  return out;
}

/// The combinatorial right step. Requires the gap in one of the last two
/// positions of w1; throws ShapeUnsupported for a bottom winner that is the
/// repeated letter, a case the step rules do not describe.
inline WordStep right_step_words(const Word0& w0, const Word1& w1, bool top_wins) {
  int g = -1;
  std::array<int, kLetters> cnt{};
  for (auto l : w0) ++cnt[idx(l)];
  for (int i = 0; i < kWord; ++i) {
    if (w1[i].gap) g = i;
  }
  if (g < kWord - 2) {
    throw Error(ErrorKind::GapPositionUnsupported,
                "gap at position " + std::to_string(g + 1) + " of " + words_text(w0, w1));
  }
  const Symbol top{w0[kWord - 1], false};
  const Symbol bot = w1[kWord - 1];
  WordStep st;
  if (top_wins) {
    const Letter a = top.letter;
    st.winner = a;
    st.loser = bot.letter;
    st.loser_is_gap = bot.gap;
    if (cnt[idx(a)] == 1) {
      st.w0 = w0;
      st.w1 = substitute1(w1, kWord - 1, a, bot, kWord);
    } else {
      // a is repeated; its gap sits just before the loser at the right end.
      if (g != kWord - 2) {
        throw Error(ErrorKind::ShapeUnsupported, "repeated winner without its gap at position 4");
      }
      st.w0 = substitute0(w0, kWord - 1, a, bot.letter);
      Word1 w = substitute1(w1, kWord - 2, a, Symbol{bot.letter, false}, kWord - 1);
      w[kWord - 1] = Symbol{bot.letter, true};
      st.w1 = w;
    }
  } else {
    st.winner = bot.letter;
    st.loser = top.letter;
    if (bot.gap) {
      st.kind = StepKind::StopRotation;
      return st;
    }
    const Letter a = bot.letter;
    if (cnt[idx(a)] != 1) {
      throw Error(ErrorKind::ShapeUnsupported,
                  "bottom winner is the repeated letter in " + words_text(w0, w1));
    }
    st.w1 = w1;
    st.w0 = substitute0(w0, kWord - 1, a, top.letter);
  }
  return st;
}

/// Right Rauzy step on a permutation whose gap is in the last two positions.
inline StepOutcome right_rauzy_step(const ITMPermutation& p) {
  const Letter top = p.w0[kWord - 1];
  const Symbol bot = p.w1[kWord - 1];
  const Scalar& lt = p.length_of(top);
  const Scalar& lb = p.length_of(bot.letter);
  StepOutcome out;
  out.side = Side::Right;
  if (lt == lb) {
    if (p.gap_index() < kWord - 2) {
      throw Error(ErrorKind::GapPositionUnsupported,
                  "gap at position " + std::to_string(p.gap_index() + 1) + " of " +
                      words_text(p.w0, p.w1));
    }
    out.kind = StepKind::StopTie;
    out.winner = top;
    out.loser = bot.letter;
    out.loser_is_gap = bot.gap;
    out.reason = "equal rightmost lengths";
    return out;
  }
  const WordStep ws = right_step_words(p.w0, p.w1, lt > lb);
  out.kind = ws.kind;
  out.winner = ws.winner;
  out.loser = ws.loser;
  out.loser_is_gap = ws.loser_is_gap;
  if (ws.kind == StepKind::StopRotation) {
    out.reason = "gap wins: a singularity lies in the gap";
    return out;
  }
  ITMPermutation q{ws.w0, ws.w1, p.len};
  q.len[idx(ws.winner)] -= p.length_of(ws.loser);
  q.validate();
  out.next = std::move(q);
  return out;
}

/// One step of the R-induction: right step when the gap is in the last two
/// positions of w1, the flipped right step when it is in the first two.
inline StepOutcome r_step(const ITMPermutation& p) {
  const int g = p.gap_index();
  if (g >= kWord - 2) return right_rauzy_step(p);
  if (g <= 1) {
    StepOutcome o = right_rauzy_step(flip(p));
    o.side = Side::Left;
    if (o.next) o.next = flip(*o.next);
    return o;
  }
  throw Error(ErrorKind::GapPositionUnsupported,
              "gap at position 3 of " + words_text(p.w0, p.w1));
}

/// Checks a Continue outcome against the first return of the geometric map
/// to [0, L') (right) or [L - L', L) (left). Throws OracleMismatch with a
/// witness point on disagreement.
inline bool oracle_check_step(const ITMPermutation& p, const StepOutcome& o,
                              int transit_cap = 1 << 12) {
  if (!o.is_continue() || !o.next) {
    throw Error(ErrorKind::InvalidArgument, "oracle check needs a Continue outcome");
  }
  const PiecewiseTranslation before = perm_to_piecewise(p);
  const Scalar L = before.support().hi;
  const Scalar Ln = o.next->total();
  if (!(0 < Ln && Ln < L)) {
    throw Error(ErrorKind::OracleMismatch, "induced length " + to_string(Ln) + " not in (0, L)");
  }
  const Scalar off = o.side == Side::Right ? Scalar(0) : Scalar(L - Ln);
  const PiecewiseTranslation geo =
      first_return(before, Interval(off, off + Ln), transit_cap).map().translated(-off);
  const PiecewiseTranslation comb = perm_to_piecewise(*o.next);
  if (geo == comb) return true;
  std::vector<Scalar> probes;
  for (const auto* m : {&geo, &comb}) {
    for (const auto& b : m->branches()) {
      probes.push_back(b.domain.lo);
      probes.push_back(b.domain.midpoint());
    }
  }
  for (const auto& x : probes) {
    if (!geo.support().contains(x) || !comb.support().contains(x) ||
        geo.evaluate(x) != comb.evaluate(x)) {
      throw Error(ErrorKind::OracleMismatch, "witness x=" + to_string(x));
    }
  }
  throw Error(ErrorKind::OracleMismatch, "maps differ on " + to_string(Ln));
}

// ---------------------------------------------------------------------------
// Paths

struct InductionPath {
  ITMPermutation start;
  std::vector<StepOutcome> steps;
  /// Number of Continue steps.
  int depth = 0;
  /// Set when the combinatorics and projective lengths came back to an
  /// earlier state: the path then continues forever.
  std::optional<int> period_start;
  std::optional<int> period;

  bool stopped() const { return !steps.empty() && !steps.back().is_continue(); }
  const ITMPermutation& last() const {
    for (auto it = steps.rbegin(); it != steps.rend(); ++it) {
      if (it->next) return *it->next;
    }
    return start;
  }
};

/// Small integer code of the two words.
inline std::uint32_t word_code(const Word0& w0, const Word1& w1) {
  std::uint32_t k = 0;
  for (auto l : w0) k = k * 4 + static_cast<std::uint32_t>(idx(l));
  for (const auto& s : w1) k = k * 8 + static_cast<std::uint32_t>(idx(s.letter)) * 2 + s.gap;
  return k;
}

inline bool projectively_equal(const ITMPermutation& a, const ITMPermutation& b) {
  const Scalar la = a.total(), lb = b.total();
  for (int i = 0; i < kLetters; ++i) {
    if (a.len[i] * lb != b.len[i] * la) return false;
  }
  return true;
}

/// Watches a sequence of states for a repeat of (words, projective lengths).
class PeriodDetector {
 public:
  /// Returns the index of the earlier equal state, if any.
  std::optional<int> observe(const ITMPermutation& p) {
    auto& seen = by_words_[word_code(p.w0, p.w1)];
    for (int i : seen) {
      if (projectively_equal(states_[i], p)) return i;
    }
    seen.push_back(static_cast<int>(states_.size()));
    states_.push_back(p);
    return std::nullopt;
  }

 private:
  std::map<std::uint32_t, std::vector<int>> by_words_;
  std::vector<ITMPermutation> states_;
};

/// Applies r_step until a stop, a detected period, or `depth` Continue steps.
inline InductionPath iterate(const ITMPermutation& p, int depth) {
  if (depth < 0) throw Error(ErrorKind::InvalidArgument, "negative depth");
  InductionPath path{p, {}, 0, std::nullopt, std::nullopt};
  PeriodDetector det;
  det.observe(p);
  ITMPermutation cur = p;
  while (path.depth < depth) {
    StepOutcome o = r_step(cur);
    const bool cont = o.is_continue();
    if (cont) cur = *o.next;
    path.steps.push_back(std::move(o));
    if (!cont) break;
    ++path.depth;
    if (auto prev = det.observe(cur)) {
      path.period_start = *prev;
      path.period = path.depth - *prev;
      break;
    }
  }
  return path;
}

/// What iterate would report, without the step log.
struct DepthReport {
  int depth = 0;
  std::optional<StepKind> stop;
  std::optional<int> period;
  /// The state the run ended in (the state that stopped, if it stopped).
  ITMPermutation last;
};

/// Runs the R-induction like iterate(p, depth) but keeps only the current
/// state. When the lengths share a denominator small enough, they are
/// carried as 64-bit numerators; the steps only subtract, so this is exact.
inline DepthReport induction_depth(const ITMPermutation& p, int depth) {
  if (depth < 0) throw Error(ErrorKind::InvalidArgument, "negative depth");
  mpz_class den = 1;
  for (const auto& x : p.len) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den_mpz_t());
  const Scalar scaled_total = p.total() * Scalar(den);
  if (scaled_total >= Scalar(mpz_class(1) << 62)) {
    const InductionPath path = iterate(p, depth);
    DepthReport r{path.depth, std::nullopt, path.period, path.last()};
    if (path.stopped()) r.stop = path.steps.back().kind;
    return r;
  }
  p.validate();
  std::array<std::int64_t, kLetters> len{};
  for (int i = 0; i < kLetters; ++i) {
    const Scalar v = p.len[i] * Scalar(den);
    len[i] = v.get_num().get_si();
  }
  Word0 w0 = p.w0;
  Word1 w1 = p.w1;
  struct Seen {
    std::uint32_t code;
    std::array<std::int64_t, kLetters> len;
    std::int64_t total;
  };
  std::vector<Seen> seen;
  auto total = [&] { return len[0] + len[1] + len[2] + len[3]; };
  seen.push_back({word_code(w0, w1), len, total()});
  DepthReport r;
  auto finish = [&]() -> DepthReport& {
    r.last.w0 = w0;
    r.last.w1 = w1;
    for (int i = 0; i < kLetters; ++i) r.last.len[i] = Scalar(mpz_class(len[i]), den);
    for (auto& x : r.last.len) x.canonicalize();
    return r;
  };
  while (r.depth < depth) {
    int g = 0;
    for (int i = 0; i < kWord; ++i) {
      if (w1[i].gap) g = i;
    }
    const bool left = g <= 1;
    if (left) {
      std::reverse(w0.begin(), w0.end());
      std::reverse(w1.begin(), w1.end());
    } else if (g == 2) {
      throw Error(ErrorKind::GapPositionUnsupported,
                  "gap at position 3 of " + words_text(w0, w1));
    }
    const std::int64_t lt = len[idx(w0[kWord - 1])];
    const std::int64_t lb = len[idx(w1[kWord - 1].letter)];
    if (lt == lb || (lt < lb && w1[kWord - 1].gap)) {
      r.stop = lt == lb ? StepKind::StopTie : StepKind::StopRotation;
      if (left) {
        std::reverse(w0.begin(), w0.end());
        std::reverse(w1.begin(), w1.end());
      }
      return finish();
    }
    const WordStep ws = right_step_words(w0, w1, lt > lb);
    w0 = ws.w0;
    w1 = ws.w1;
    len[idx(ws.winner)] -= len[idx(ws.loser)];
    if (left) {
      std::reverse(w0.begin(), w0.end());
      std::reverse(w1.begin(), w1.end());
    }
    ++r.depth;
    const std::uint32_t code = word_code(w0, w1);
    const std::int64_t t = total();
    for (std::size_t i = 0; i < seen.size(); ++i) {
      const Seen& e = seen[i];
      if (e.code != code) continue;
      bool same = true;
      for (int k = 0; k < kLetters && same; ++k) {
        same = static_cast<__int128>(e.len[k]) * t == static_cast<__int128>(len[k]) * e.total;
      }
      if (same) {
        r.period = r.depth - static_cast<int>(i);
        return finish();
      }
    }
    seen.push_back({code, len, t});
  }
  return finish();
}

/// One line per step: index, side, kind, winner, loser (with "_" if it is the
/// gap), then the lengths after the step.
inline void write_path_log(std::ostream& os, const InductionPath& path) {
  os << "# dblrot path v1\n";
  os << "start " << words_text(path.start.w0, path.start.w1);
  for (int i = 0; i < kLetters; ++i) {
    os << ' ' << letter_char(letter_at(i)) << '=' << to_string(path.start.len[i]);
  }
  os << '\n';
  int n = 0;
  for (const auto& s : path.steps) {
    os << "step " << ++n << ' ' << to_string(s.side) << ' ' << to_string(s.kind)
       << " winner=" << letter_char(s.winner) << " loser=" << letter_char(s.loser)
       << (s.loser_is_gap ? "_" : "");
    if (s.next) {
      os << " words=" << words_text(s.next->w0, s.next->w1);
      for (int i = 0; i < kLetters; ++i) {
        os << ' ' << letter_char(letter_at(i)) << '=' << to_string(s.next->len[i]);
      }
    }
    os << '\n';
  }
  if (path.period) os << "period start=" << *path.period_start << " length=" << *path.period << '\n';
}

// ---------------------------------------------------------------------------
// Z-induction

enum class ZWinner { Top, Bottom };
enum class ZReading {
  /// Top length = last domain interval, bottom length = the image ending at L.
  Geometric,
  /// [0, l3 - l1) and [0, l1 + l2) with l1, l2, l3 in domain order.
  Literal
};

struct ZOutcome {
  ZWinner winner = ZWinner::Top;
  bool flipped = false;
  /// The inducing interval in the coordinates of the input.
  Interval base;
  /// First return to `base`, in the coordinates of the input.
  PiecewiseTranslation map;
};

/// Right Z-step on a 3-branch map on [0, L) whose overlap lies left of the gap;
/// otherwise conjugated by the flip.
inline ZOutcome z_step(const PiecewiseTranslation& m, ZReading reading = ZReading::Geometric,
                       int transit_cap = 1 << 12) {
  if (m.branch_count() != 3) throw Error(ErrorKind::NotThreeBranches, "z_step needs 3 branches");
  if (m.has_extremal_gap()) throw Error(ErrorKind::InvalidArgument, "map has extremal gaps");
  if (singularity_in_gap(m)) throw Error(ErrorKind::SingularityInGap, "reduce to a rotation first");
  const IntervalSet over = m.overlaps();
  const IntervalSet gaps = m.gaps();
  if (over.empty() || gaps.empty()) throw Error(ErrorKind::NoOverlap, "no overlap to induce on");
  const bool flipped = gaps.hull().hi <= over.hull().lo;
  const PiecewiseTranslation t = flipped ? m.reflected() : m;
  const Scalar lo = t.support().lo;
  const Scalar L = t.support().length();

  const auto& br = t.branches();
  const Scalar top = br[2].domain.length();
  Scalar bot = 0;
  for (const auto& b : br) {
    if (b.image().hi == t.support().hi) bot = b.domain.length();
  }
  Scalar cut_top = L - bot, cut_bot = L - top;
  Scalar l1 = br[0].domain.length(), l2 = br[1].domain.length(), l3 = top;
  if (reading == ZReading::Literal) {
    bot = l1;
    cut_top = l3 - l1;
    cut_bot = l1 + l2;
  }
  if (top == bot) throw Error(ErrorKind::TieDegenerate, "compared lengths are equal");
  Interval base(lo, lo + (top > bot ? cut_top : cut_bot));
  const ZWinner winner = top > bot ? ZWinner::Top : ZWinner::Bottom;
  PiecewiseTranslation ind = first_return(t, base, transit_cap).map();
  if (winner == ZWinner::Top) {
    const Interval h = ind.image().hull();
    if (h.hi < base.hi) {
      base = Interval(base.lo, h.hi);
      ind = ind.restricted(base);
    }
  }
  if (!flipped) return ZOutcome{winner, false, base, std::move(ind)};
  // Back to the input's coordinates: reflect the induced map about the
  // midpoint of the new interval, placed at the right end.
  const Scalar len = base.length();
  return ZOutcome{winner, true, Interval(m.support().hi - len, m.support().hi),
                  ind.translated(m.support().hi - len - base.lo).reflected()};
}

enum class AccelStatus { Success, BothTie, Failure };

struct AccelReport {
  AccelStatus status = AccelStatus::Failure;
  int n = 0;
  std::string detail;
  /// On a failure where R stopped on an extremal gap: the R-map and the
  /// Z-step's map coincide once both have their extremal gaps trimmed.
  bool trim_matches_z = false;
  bool ok() const { return status != AccelStatus::Failure; }
};

/// Runs R-steps from split(m) and looks for the first n at which the R base
/// and map coincide with the Z-step's.
inline AccelReport check_acceleration(const PiecewiseTranslation& m, int cap = 64,
                                      ZReading reading = ZReading::Geometric) {
  if (singularity_in_gap(m)) throw Error(ErrorKind::SingularityInGap, "precondition violated");
  std::optional<ZOutcome> z;
  try {
    z = z_step(m, reading);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::TieDegenerate) throw;
  }
  const Scalar lo0 = m.support().lo;
  ITMPermutation p = split(m);
  Scalar off = lo0;
  AccelReport rep;
  for (int n = 1; n <= cap; ++n) {
    StepOutcome o;
    try {
      o = r_step(p);
    } catch (const Error& e) {
      rep.detail = "R-step " + std::to_string(n) + ": " + e.what();
      return rep;
    }
    if (!o.is_continue()) {
      if (!z) {
        rep.status = AccelStatus::BothTie;
        rep.n = n;
        rep.detail = std::string("R stopped: ") + to_string(o.kind);
      } else {
        rep.n = n;
        rep.detail = "R stopped at step " + std::to_string(n) + " before matching Z";
        const PiecewiseTranslation at = perm_to_piecewise(p).translated(off);
        if (at.has_extremal_gap()) {
          rep.trim_matches_z = trim_extremal_gaps(at, cap) == trim_extremal_gaps(z->map, cap);
          rep.detail += rep.trim_matches_z ? "; equal to Z after trimming extremal gaps"
                                           : "; differs from Z even after trimming";
        }
      }
      return rep;
    }
    const Scalar L = p.total();
    const ITMPermutation& q = *o.next;
    if (o.side == Side::Left) off += L - q.total();
    p = q;
    if (z && z->base == Interval(off, off + p.total()) &&
        perm_to_piecewise(p).translated(off) == z->map) {
      rep.status = AccelStatus::Success;
      rep.n = n;
      return rep;
    }
  }
  rep.detail = "no match within " + std::to_string(cap) + " steps";
  return rep;
}

}  // namespace dblrot
