#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "dblrot/piecewise.hpp"

namespace dblrot {

/// Iteration budgets shared by the attractor, first-return and trimming loops.
struct Budgets {
  int max_steps = 1 << 12;
  std::size_t max_pieces = 1 << 14;
  int transit_cap = 1 << 12;
};

// ---------------------------------------------------------------------------
// Attractor classification

struct ClassificationReport {
  enum class Status { Finite, Undetermined };
  Status status = Status::Undetermined;
  /// Finite: least N with T^{N+1} I = T^N I. Undetermined: iterations done.
  int n = 0;
  /// Finite: the attractor. Undetermined: the last computed T^n I.
  IntervalSet set;

  bool finite() const { return status == Status::Finite; }
};

/// Iterates S <- T(S) from the support. The sequence is nested, so it either
/// stabilizes exactly or runs out of budget; it is never declared infinite.
inline ClassificationReport attractor_classify(const PiecewiseTranslation& t, int max_steps,
                                               std::size_t max_pieces) {
  if (max_steps <= 0 || max_pieces == 0) {
    throw Error(ErrorKind::InvalidArgument, "attractor budgets must be positive");
  }
  IntervalSet s(t.support());
  for (int n = 0; n < max_steps; ++n) {
    IntervalSet next = t.image(s);
    if (next == s) return {ClassificationReport::Status::Finite, n, std::move(s)};
    if (next.size() > max_pieces) {
      return {ClassificationReport::Status::Undetermined, n + 1, std::move(next)};
    }
    s = std::move(next);
  }
  return {ClassificationReport::Status::Undetermined, max_steps, std::move(s)};
}

// ---------------------------------------------------------------------------
// First return maps

struct ReturnPiece {
  Interval domain;
  Scalar shift;
  int time = 0;
  std::vector<std::size_t> itinerary;  // branch indices of the original map
};

/// First return of a map to a finite union of intervals. Pieces are maximal
/// runs of constant itinerary, sorted by position.
struct ReturnMap {
  IntervalSet base;
  std::vector<ReturnPiece> pieces;

  const ReturnPiece& piece_at(const Scalar& x) const {
    for (const auto& p : pieces) {
      if (p.domain.contains(x)) return p;
    }
    throw Error(ErrorKind::OutOfSupport, to_string(x) + " outside the return base");
  }

  Scalar evaluate(const Scalar& x) const { return x + piece_at(x).shift; }
  int return_time(const Scalar& x) const { return piece_at(x).time; }

  /// The return map as a translation of its base; the base must be an interval.
  PiecewiseTranslation map() const {
    if (base.size() != 1) {
      throw Error(ErrorKind::InvalidArgument, "return base is not an interval; use collapsed()");
    }
    std::vector<Branch> bs;
    bs.reserve(pieces.size());
    for (const auto& p : pieces) bs.push_back(Branch{p.domain, p.shift});
    return PiecewiseTranslation(base.hull(), std::move(bs));
  }

  /// The return map with the components of the base glued end to end onto
  /// [0, |base|). This is what inducing on a union of intervals means.
  PiecewiseTranslation collapsed() const {
    const auto& comps = base.pieces();
    std::vector<Scalar> offset(comps.size());
    Scalar run = 0;
    for (std::size_t i = 0; i < comps.size(); ++i) {
      offset[i] = run - comps[i].lo;
      run += comps[i].length();
    }
    auto comp_of = [&](const Scalar& x) {
      auto it = std::upper_bound(comps.begin(), comps.end(), x,
                                 [](const Scalar& v, const Interval& c) { return v < c.lo; });
      return static_cast<std::size_t>(std::prev(it) - comps.begin());
    };
    std::vector<Branch> bs;
    bs.reserve(pieces.size());
    for (const auto& p : pieces) {
      const std::size_t from = comp_of(p.domain.lo);
      const std::size_t to = comp_of(p.domain.lo + p.shift);
      bs.push_back(Branch{p.domain.shifted(offset[from]), p.shift + offset[to] - offset[from]});
    }
    return PiecewiseTranslation(Interval(Scalar(0), run), std::move(bs));
  }
};

/// Partitions `base` by pulling branch boundaries back along itineraries.
/// Throws NonReturning when a piece has not come back after `transit_cap` steps.
inline ReturnMap first_return(const PiecewiseTranslation& t, const IntervalSet& base,
                              int transit_cap) {
  if (base.empty()) throw Error(ErrorKind::InvalidArgument, "empty return base");
  if (!base.subset_of(IntervalSet(t.support()))) {
    throw Error(ErrorKind::InvalidArgument, "return base leaves the support");
  }
  struct Pending {
    Interval dom;
    Scalar acc;
    int time;
    std::vector<std::size_t> itin;
    std::size_t branch;  // branch holding dom + acc
  };
  const auto& br = t.branches();
  std::vector<Pending> work;
  auto push_split = [&](const Interval& pos, const Scalar& acc, int time,
                        const std::vector<std::size_t>& itin) {
    for (std::size_t k = 0; k < br.size(); ++k) {
      const auto& d = br[k].domain;
      if (!d.intersects(pos)) continue;
      Interval part(std::max(d.lo, pos.lo), std::min(d.hi, pos.hi));
      work.push_back(Pending{part.shifted(-acc), acc, time, itin, k});
    }
  };
  for (const auto& comp : base.pieces()) push_split(comp, Scalar(0), 0, {});

  ReturnMap out{base, {}};
  while (!work.empty()) {
    Pending cur = std::move(work.back());
    work.pop_back();
    const Scalar acc = cur.acc + br[cur.branch].shift;
    const int time = cur.time + 1;
    auto itin = std::move(cur.itin);
    itin.push_back(cur.branch);
    const Interval pos = cur.dom.shifted(acc);
    const IntervalSet here(pos);
    const auto inside = here.intersect(base);
    for (const auto& in : inside.pieces()) {
      out.pieces.push_back(ReturnPiece{in.shifted(-acc), acc, time, itin});
    }
    const auto outside = here.minus(base);
    if (!outside.empty() && time >= transit_cap) {
      throw Error(ErrorKind::NonReturning,
                  "piece starting at " + to_string(outside.pieces().front().lo - acc) +
                      " has not returned after " + std::to_string(transit_cap) + " steps");
    }
    for (const auto& o : outside.pieces()) push_split(o, acc, time, itin);
  }
  std::sort(out.pieces.begin(), out.pieces.end(),
            [](const ReturnPiece& a, const ReturnPiece& b) { return a.domain.lo < b.domain.lo; });
  return out;
}

inline ReturnMap first_return(const PiecewiseTranslation& t, const Interval& base,
                              int transit_cap) {
  return first_return(t, IntervalSet(base), transit_cap);
}

// ---------------------------------------------------------------------------
// Normalization

inline mpz_class ceil_div(const Scalar& num, const Scalar& den) {
  const Scalar q = num / den;
  mpz_class out;
  mpz_cdiv_q(out.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return out;
}

/// Restricts to the hull of the image until the image touches both ends of
/// the support. Nothing maps into an extremal gap, so each restriction is a
/// first return.
///
/// While the same branches sit at both ends, the hull endpoints follow
/// lo' = min(lo + s_first, C_lo) and hi' = max(hi + s_last, C_hi) with
/// constant C's, so a run of such rounds is done in one restriction. `cap`
/// bounds the number of restrictions.
inline PiecewiseTranslation trim_extremal_gaps(PiecewiseTranslation t, int cap) {
  for (int round = 0;; ++round) {
    const Interval h = t.image().hull();
    if (h == t.support()) return t;
    if (round >= cap) {
      throw Error(ErrorKind::BudgetExceeded,
                  "extremal gaps persist after " + std::to_string(cap) + " rounds");
    }
    const auto& bs = t.branches();
    if (bs.size() < 2) {
      t = t.restricted(h);
      continue;
    }
    const Branch& f = bs.front();
    const Branch& l = bs.back();
    const Scalar lo = t.support().lo, hi = t.support().hi;
    std::optional<Scalar> c_lo, c_hi;
    for (std::size_t i = 0; i < bs.size(); ++i) {
      if (i > 0) {
        const Scalar v = bs[i].domain.lo + bs[i].shift;
        if (!c_lo || v < *c_lo) c_lo = v;
      }
      if (i + 1 < bs.size()) {
        const Scalar v = bs[i].domain.hi + bs[i].shift;
        if (!c_hi || v > *c_hi) c_hi = v;
      }
    }
    // Rounds until both ends are fixed, and the last round index at which the
    // end branches are still f and l.
    mpz_class fix = 0;
    if (f.shift > 0 && lo < *c_lo) fix = std::max(fix, ceil_div(*c_lo - lo, f.shift));
    if (l.shift < 0 && hi > *c_hi) fix = std::max(fix, ceil_div(hi - *c_hi, -l.shift));
    std::optional<mpz_class> last_valid;
    auto bound = [&](const mpz_class& k) {
      if (!last_valid || k < *last_valid) last_valid = k;
    };
    if (f.shift > 0 && *c_lo >= f.domain.hi) bound(ceil_div(f.domain.hi - lo, f.shift) - 1);
    if (l.shift < 0 && *c_hi <= l.domain.lo) bound(ceil_div(hi - l.domain.lo, -l.shift) - 1);
    mpz_class n = fix;
    if (last_valid && *last_valid + 1 < n) n = *last_valid + 1;
    if (n <= 1) {
      t = t.restricted(h);
      continue;
    }
    const Scalar nk(n);
    const Scalar new_lo = std::min(Scalar(lo + nk * f.shift), std::max(lo, *c_lo));
    const Scalar new_hi = std::max(Scalar(hi + nk * l.shift), std::min(hi, *c_hi));
    t = t.restricted(Interval(new_lo, new_hi));
  }
}

struct RotationReport {
  /// The induced rotation, on [0, length).
  PiecewiseTranslation map;
  Scalar angle;
  /// Where the first inducing stage happened, in the input's coordinates.
  IntervalSet stage_one_base;
};

/// True when some interior branch boundary lies strictly inside an image gap.
inline bool singularity_in_gap(const PiecewiseTranslation& t) {
  const auto gaps = t.gaps();
  for (const auto& s : t.singularities()) {
    for (const auto& g : gaps.pieces()) {
      if (g.lo < s && s < g.hi) return true;
    }
  }
  return false;
}

/// For a 3-branch map without extremal gaps whose singularity falls in the
/// image gap: induce on I∩TI∩T²I (glued), then on the image until the map is
/// a bijection. A bijection left with 3 branches is an exchange of type
/// (3 2 1); one right Rauzy step turns it into a rotation. Returns nothing
/// when no singularity is in the gap.
inline std::optional<RotationReport> reduce_if_singularity_in_gap(const PiecewiseTranslation& t,
                                                                  int cap = 4096) {
  if (t.branch_count() != 3) {
    throw Error(ErrorKind::NotThreeBranches,
                "expected 3 branches, got " + std::to_string(t.branch_count()));
  }
  if (t.has_extremal_gap()) throw Error(ErrorKind::InvalidArgument, "map has extremal gaps");
  if (!singularity_in_gap(t)) return std::nullopt;

  const IntervalSet omega2 = t.image(t.image());
  PiecewiseTranslation m = first_return(t, omega2, 2).collapsed();
  for (int round = 0; !m.is_bijection(); ++round) {
    if (round >= cap) {
      throw Error(ErrorKind::ReductionFailed,
                  "image inducing did not converge in " + std::to_string(cap) + " rounds");
    }
    m = first_return(m, m.image(), 1).collapsed();
  }
  for (int round = 0; m.branch_count() > 2; ++round) {
    if (round >= 64) {
      throw Error(ErrorKind::ReductionFailed,
                  "bijection with " + std::to_string(m.branch_count()) + " branches");
    }
    const Branch& last = m.branches().back();
    Scalar last_image = 0;
    for (const auto& b : m.branches()) last_image = std::max(last_image, b.image().lo);
    const Scalar x = std::max(last.domain.lo, last_image);
    m = first_return(m, Interval(Scalar(0), x), 1 << 12).map();
  }
  Scalar angle = m.branches().front().shift;
  return RotationReport{std::move(m), std::move(angle), omega2};
}

}  // namespace dblrot
