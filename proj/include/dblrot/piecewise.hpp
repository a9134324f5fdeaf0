#pragma once

#include <algorithm>
#include <optional>
#include <ostream>
#include <vector>

#include "dblrot/interval.hpp"

namespace dblrot {

struct Branch {
  Interval domain;
  Scalar shift;

  Interval image() const { return domain.shifted(shift); }

  friend bool operator==(const Branch& a, const Branch& b) {
    return a.domain == b.domain && a.shift == b.shift;
  }
};

/// A map of an interval into itself that rigidly translates each of finitely
/// many half-open pieces. Construction sorts the branches, checks that they
/// tile the support and map into it, and fuses neighbours with equal shift,
/// so two maps are equal as functions iff they compare equal.
class PiecewiseTranslation {
 public:
  PiecewiseTranslation(Interval support, std::vector<Branch> branches)
      : support_(std::move(support)), branches_(std::move(branches)) {
    normalize();
  }

  static PiecewiseTranslation identity(const Interval& support) {
    return PiecewiseTranslation(support, {Branch{support, 0}});
  }

  /// Rotation of [lo, hi) by `angle` (taken modulo the length).
  static PiecewiseTranslation rotation(const Interval& support, const Scalar& angle) {
    const Scalar len = support.length();
    Scalar a = frac(angle / len) * len;
    if (a == 0) return identity(support);
    const Scalar cut = support.hi - a;
    return PiecewiseTranslation(support, {Branch{Interval(support.lo, cut), a},
                                          Branch{Interval(cut, support.hi), a - len}});
  }

  const Interval& support() const { return support_; }
  const std::vector<Branch>& branches() const { return branches_; }
  std::size_t branch_count() const { return branches_.size(); }

  std::size_t branch_index(const Scalar& x) const {
    if (!support_.contains(x)) {
      throw Error(ErrorKind::OutOfSupport,
                  to_string(x) + " outside [" + to_string(support_.lo) + ", " +
                      to_string(support_.hi) + ")");
    }
    auto it = std::upper_bound(branches_.begin(), branches_.end(), x,
                               [](const Scalar& v, const Branch& b) { return v < b.domain.lo; });
    return static_cast<std::size_t>(std::prev(it) - branches_.begin());
  }

  Scalar evaluate(const Scalar& x) const { return x + branches_[branch_index(x)].shift; }

  /// T(S) for S inside the support.
  IntervalSet image(const IntervalSet& s) const {
    std::vector<Interval> parts;
    std::size_t b = 0;
    for (const auto& p : s.pieces()) {
      while (b < branches_.size() && branches_[b].domain.hi <= p.lo) ++b;
      for (std::size_t k = b; k < branches_.size() && branches_[k].domain.lo < p.hi; ++k) {
        const auto& br = branches_[k];
        const Scalar& lo = std::max(p.lo, br.domain.lo);
        const Scalar& hi = std::min(p.hi, br.domain.hi);
        if (lo < hi) parts.emplace_back(lo + br.shift, hi + br.shift);
      }
    }
    return IntervalSet::from_pieces(std::move(parts));
  }

  IntervalSet image() const { return image(IntervalSet(support_)); }

  /// Support minus image.
  IntervalSet gaps() const { return image().complement_in(support_); }

  /// Points covered by at least two branch images.
  IntervalSet overlaps() const {
    std::vector<Interval> parts;
    for (std::size_t i = 0; i < branches_.size(); ++i) {
      for (std::size_t j = i + 1; j < branches_.size(); ++j) {
        const auto a = branches_[i].image(), b = branches_[j].image();
        if (a.intersects(b)) parts.emplace_back(std::max(a.lo, b.lo), std::min(a.hi, b.hi));
      }
    }
    return IntervalSet::from_pieces(std::move(parts));
  }

  /// Interior branch boundaries.
  std::vector<Scalar> singularities() const {
    std::vector<Scalar> out;
    for (std::size_t i = 1; i < branches_.size(); ++i) out.push_back(branches_[i].domain.lo);
    return out;
  }

  bool has_extremal_gap() const {
    const auto img = image();
    return img.hull() != support_;
  }

  bool is_bijection() const { return image() == IntervalSet(support_); }

  /// Conjugate by x -> x + offset.
  PiecewiseTranslation translated(const Scalar& offset) const {
    std::vector<Branch> bs;
    bs.reserve(branches_.size());
    for (const auto& b : branches_) bs.push_back(Branch{b.domain.shifted(offset), b.shift});
    return PiecewiseTranslation(support_.shifted(offset), std::move(bs));
  }

  /// Conjugate by the reflection x -> lo + hi - x, renormalized to half-open
  /// pieces. Agrees with the literal conjugate away from branch boundaries.
  PiecewiseTranslation reflected() const {
    const Scalar m = support_.lo + support_.hi;
    std::vector<Branch> bs;
    bs.reserve(branches_.size());
    for (const auto& b : branches_) {
      bs.push_back(Branch{Interval(m - b.domain.hi, m - b.domain.lo), -b.shift});
    }
    return PiecewiseTranslation(support_, std::move(bs));
  }

  /// The map restricted to `base`; requires T(base) inside base.
  PiecewiseTranslation restricted(const Interval& base) const {
    std::vector<Branch> bs;
    for (const auto& b : branches_) {
      if (!b.domain.intersects(base)) continue;
      bs.push_back(Branch{Interval(std::max(b.domain.lo, base.lo), std::min(b.domain.hi, base.hi)),
                          b.shift});
    }
    return PiecewiseTranslation(base, std::move(bs));
  }

  /// Composition this∘other (apply `other` first); both on the same support.
  PiecewiseTranslation compose(const PiecewiseTranslation& other) const {
    if (other.support_ != support_) {
      throw Error(ErrorKind::InvalidArgument, "compose: supports differ");
    }
    std::vector<Branch> bs;
    for (const auto& ob : other.branches_) {
      const auto img = ob.image();
      for (const auto& b : branches_) {
        if (!b.domain.intersects(img)) continue;
        Interval part(std::max(img.lo, b.domain.lo) - ob.shift,
                      std::min(img.hi, b.domain.hi) - ob.shift);
        bs.push_back(Branch{part, ob.shift + b.shift});
      }
    }
    return PiecewiseTranslation(support_, std::move(bs));
  }

  friend bool operator==(const PiecewiseTranslation& a, const PiecewiseTranslation& b) {
    return a.support_ == b.support_ && a.branches_ == b.branches_;
  }
  friend bool operator!=(const PiecewiseTranslation& a, const PiecewiseTranslation& b) {
    return !(a == b);
  }

 private:
  void normalize() {
    if (branches_.empty()) throw Error(ErrorKind::InvalidMap, "no branches");
    std::sort(branches_.begin(), branches_.end(),
              [](const Branch& a, const Branch& b) { return a.domain.lo < b.domain.lo; });
    if (branches_.front().domain.lo != support_.lo || branches_.back().domain.hi != support_.hi) {
      throw Error(ErrorKind::InvalidMap, "branches do not cover the support");
    }
    std::vector<Branch> merged;
    merged.reserve(branches_.size());
    for (auto& b : branches_) {
      if (!merged.empty()) {
        if (merged.back().domain.hi != b.domain.lo) {
          throw Error(ErrorKind::InvalidMap, "branch domains leave a hole or overlap");
        }
        if (merged.back().shift == b.shift) {
          merged.back().domain.hi = b.domain.hi;
          continue;
        }
      }
      merged.push_back(std::move(b));
    }
    for (const auto& b : merged) {
      if (!support_.contains(b.image())) {
        throw Error(ErrorKind::InvalidMap, "branch image leaves the support");
      }
    }
    branches_ = std::move(merged);
  }

  Interval support_;
  std::vector<Branch> branches_;
};

inline std::ostream& operator<<(std::ostream& os, const PiecewiseTranslation& t) {
  os << "on " << t.support() << ":";
  for (const auto& b : t.branches()) os << " " << b.domain << (b.shift < 0 ? "" : "+") << to_string(b.shift);
  return os;
}

}  // namespace dblrot
