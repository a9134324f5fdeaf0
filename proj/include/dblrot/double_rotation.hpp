#pragma once

#include <algorithm>
#include <array>
#include <vector>

#include "dblrot/dynamics.hpp"
#include "dblrot/itm3.hpp"

namespace dblrot {

/// y -> y + alpha (mod 1) on [0, c), y -> y + beta (mod 1) on [c, 1).
struct DoubleRotation {
  Scalar alpha;
  Scalar beta;
  Scalar c;

  void validate() const {
    if (alpha < 0 || alpha >= 1 || beta < 0 || beta >= 1) {
      throw Error(ErrorKind::InvalidArgument, "alpha and beta must lie in [0, 1)");
    }
    if (c < 0 || c > 1) throw Error(ErrorKind::InvalidArgument, "c must lie in [0, 1]");
  }

  bool is_rotation() const { return alpha == beta || c == 0 || c == 1; }

  Scalar operator()(const Scalar& y) const { return frac(y + (y < c ? alpha : beta)); }
};

/// The circle map cut open at p: x -> T(x + p) - p, all mod 1, on [0, 1).
/// p = 0 is the double rotation itself.
inline PiecewiseTranslation circle_cut(const DoubleRotation& d, const Scalar& p) {
  d.validate();
  std::vector<Scalar> cuts{Scalar(0),        frac(-p),        frac(d.c - p),
                           frac(1 - d.alpha - p), frac(1 - d.beta - p), frac(-d.alpha),
                           frac(-d.beta)};
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  cuts.push_back(Scalar(1));
  std::vector<Branch> bs;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const Scalar& x = cuts[i];
    bs.push_back(Branch{Interval(x, cuts[i + 1]), frac(d(frac(x + p)) - p) - x});
  }
  return PiecewiseTranslation(Interval(Scalar(0), Scalar(1)), std::move(bs));
}

/// The double rotation as an interval map with at most 4 branches.
inline PiecewiseTranslation dr_to_piecewise(const DoubleRotation& d) {
  return circle_cut(d, Scalar(0));
}

/// Where an ITM3 came from: the circle was cut at `cut`, the resulting
/// interval map was restricted to `base`, translated to start at 0 and,
/// if `reflected`, conjugated by the reflection of [0, |base|).
struct Itm3Frame {
  Scalar cut;
  Interval base;
  bool reflected = false;
};

struct Itm3Conversion {
  ITM3 itm;
  Itm3Frame frame;
};

/// Cut points tried in order: the two discontinuities, then the endpoints
/// of the two image arcs.
inline std::vector<Scalar> itm3_cut_candidates(const DoubleRotation& d) {
  std::vector<Scalar> out;
  for (const Scalar& p : {Scalar(0), d.c, d.alpha, frac(d.c + d.alpha), frac(d.c + d.beta),
                          d.beta}) {
    if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(p);
  }
  return out;
}

/// Presents a non-rotation double rotation as an irreducible 3-ITM without
/// extremal gaps: cut the circle, trim extremal gaps (a first return) and
/// read off the combinatorics.
inline Itm3Conversion dr_to_itm3(const DoubleRotation& d, int cap = 64) {
  d.validate();
  if (d.is_rotation()) throw Error(ErrorKind::DegenerateRotation, "alpha = beta or c in {0, 1}");
  std::string tried;
  for (const auto& p : itm3_cut_candidates(d)) {
    PiecewiseTranslation m = circle_cut(d, p);
    try {
      m = trim_extremal_gaps(std::move(m), cap);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::BudgetExceeded) throw;
      tried += " cut " + to_string(p) + ": trim cap;";
      continue;
    }
    if (m.branch_count() <= 2) {
      throw Error(ErrorKind::DegenerateRotation,
                  "first return to " + to_string(m.support().lo) + ".." +
                      to_string(m.support().hi) + " is a rotation");
    }
    if (m.branch_count() > 3) {
      tried += " cut " + to_string(p) + ": " + std::to_string(m.branch_count()) + " branches;";
      continue;
    }
    const Interval base = m.support();
    const PiecewiseTranslation at0 = m.translated(-base.lo);
    auto itm = ITM3::match(at0);
    bool reflected = false;
    if (itm && itm->forbidden()) {
      itm = ITM3::match(at0.reflected());
      reflected = true;
    }
    if (!itm) {
      tried += " cut " + to_string(p) + ": no 3-ITM reading;";
      continue;
    }
    if (!itm->irreducible()) {
      throw Error(ErrorKind::DegenerateRotation, "reducible 3-ITM splits into rotations");
    }
    return {*itm, Itm3Frame{p, base, reflected}};
  }
  throw Error(ErrorKind::NotReducibleTo3ITM, "no cut gives 3 branches:" + tried);
}

/// The map an Itm3Conversion claims to equal, rebuilt by first return.
inline PiecewiseTranslation frame_first_return(const DoubleRotation& d, const Itm3Frame& f,
                                               int transit_cap = 1 << 12) {
  PiecewiseTranslation m =
      first_return(circle_cut(d, f.cut), f.base, transit_cap).map().translated(-f.base.lo);
  return f.reflected ? m.reflected() : m;
}

}  // namespace dblrot
