#pragma once

#include <algorithm>
#include <ostream>
#include <utility>
#include <vector>

#include "dblrot/rational.hpp"

namespace dblrot {

/// Half-open interval [lo, hi) with lo < hi.
struct Interval {
  Scalar lo;
  Scalar hi;

  Interval() = default;
  Interval(Scalar l, Scalar h) : lo(std::move(l)), hi(std::move(h)) {
    if (!(lo < hi)) {
      throw Error(ErrorKind::InvalidArgument,
                  "empty interval [" + to_string(lo) + ", " + to_string(hi) + ")");
    }
  }

  Scalar length() const { return hi - lo; }
  bool contains(const Scalar& x) const { return lo <= x && x < hi; }
  bool contains(const Interval& o) const { return lo <= o.lo && o.hi <= hi; }
  bool intersects(const Interval& o) const { return lo < o.hi && o.lo < hi; }
  Interval shifted(const Scalar& s) const { return Interval(lo + s, hi + s); }
  Scalar midpoint() const { return (lo + hi) / 2; }

  friend bool operator==(const Interval& a, const Interval& b) {
    return a.lo == b.lo && a.hi == b.hi;
  }
  friend bool operator!=(const Interval& a, const Interval& b) { return !(a == b); }
};

inline std::ostream& operator<<(std::ostream& os, const Interval& iv) {
  return os << "[" << to_string(iv.lo) << ", " << to_string(iv.hi) << ")";
}

/// Finite union of half-open intervals, kept sorted, disjoint and maximal
/// (touching pieces are fused), so equality of sets is equality of vectors.
class IntervalSet {
 public:
  IntervalSet() = default;
  explicit IntervalSet(Interval iv) { pieces_.push_back(std::move(iv)); }

  /// Normalizes an arbitrary (possibly overlapping, unsorted) collection.
  static IntervalSet from_pieces(std::vector<Interval> raw) {
    IntervalSet out;
    if (raw.empty()) return out;
    std::sort(raw.begin(), raw.end(), [](const Interval& a, const Interval& b) {
      return a.lo < b.lo;
    });
    out.pieces_.reserve(raw.size());
    for (auto& iv : raw) {
      if (!out.pieces_.empty() && iv.lo <= out.pieces_.back().hi) {
        if (out.pieces_.back().hi < iv.hi) out.pieces_.back().hi = iv.hi;
      } else {
        out.pieces_.push_back(std::move(iv));
      }
    }
    return out;
  }

  const std::vector<Interval>& pieces() const { return pieces_; }
  std::size_t size() const { return pieces_.size(); }
  bool empty() const { return pieces_.empty(); }

  Scalar total_length() const {
    Scalar s = 0;
    for (const auto& p : pieces_) s += p.length();
    return s;
  }

  bool contains(const Scalar& x) const {
    auto it = std::upper_bound(pieces_.begin(), pieces_.end(), x,
                               [](const Scalar& v, const Interval& p) { return v < p.lo; });
    if (it == pieces_.begin()) return false;
    return std::prev(it)->contains(x);
  }

  /// Smallest interval containing the set. Precondition: non-empty.
  Interval hull() const {
    if (empty()) throw Error(ErrorKind::InvalidArgument, "hull of empty set");
    return Interval(pieces_.front().lo, pieces_.back().hi);
  }

  IntervalSet intersect(const Interval& iv) const {
    IntervalSet out;
    for (const auto& p : pieces_) {
      if (p.hi <= iv.lo) continue;
      if (p.lo >= iv.hi) break;
      out.pieces_.emplace_back(std::max(p.lo, iv.lo), std::min(p.hi, iv.hi));
    }
    return out;
  }

  IntervalSet intersect(const IntervalSet& o) const {
    IntervalSet out;
    std::size_t i = 0, j = 0;
    while (i < pieces_.size() && j < o.pieces_.size()) {
      const auto& a = pieces_[i];
      const auto& b = o.pieces_[j];
      const Scalar& lo = std::max(a.lo, b.lo);
      const Scalar& hi = std::min(a.hi, b.hi);
      if (lo < hi) out.pieces_.emplace_back(lo, hi);
      if (a.hi < b.hi) ++i; else ++j;
    }
    return out;
  }

  IntervalSet unite(const IntervalSet& o) const {
    std::vector<Interval> all = pieces_;
    all.insert(all.end(), o.pieces_.begin(), o.pieces_.end());
    return from_pieces(std::move(all));
  }

  /// Complement of this set inside `within`.
  IntervalSet complement_in(const Interval& within) const {
    IntervalSet out;
    Scalar cursor = within.lo;
    for (const auto& p : pieces_) {
      if (p.hi <= within.lo) continue;
      if (p.lo >= within.hi) break;
      if (cursor < p.lo) out.pieces_.emplace_back(cursor, std::min(p.lo, within.hi));
      if (cursor < p.hi) cursor = p.hi;
    }
    if (cursor < within.hi) out.pieces_.emplace_back(cursor, within.hi);
    return out;
  }

  IntervalSet minus(const IntervalSet& o) const {
    if (empty()) return {};
    return intersect(o.complement_in(hull()));
  }

  bool subset_of(const IntervalSet& o) const { return minus(o).empty(); }

  IntervalSet shifted(const Scalar& s) const {
    IntervalSet out;
    out.pieces_.reserve(pieces_.size());
    for (const auto& p : pieces_) out.pieces_.push_back(p.shifted(s));
    return out;
  }

  friend bool operator==(const IntervalSet& a, const IntervalSet& b) {
    return a.pieces_ == b.pieces_;
  }
  friend bool operator!=(const IntervalSet& a, const IntervalSet& b) { return !(a == b); }

 private:
  std::vector<Interval> pieces_;
};

inline std::ostream& operator<<(std::ostream& os, const IntervalSet& s) {
  if (s.empty()) return os << "{}";
  bool first = true;
  for (const auto& p : s.pieces()) {
    if (!first) os << " u ";
    os << p;
    first = false;
  }
  return os;
}

}  // namespace dblrot
