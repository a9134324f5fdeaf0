#pragma once

#include <algorithm>
#include <array>
#include <optional>
#include <ostream>

#include "dblrot/piecewise.hpp"

namespace dblrot {

/// A 3-interval translation map on [0, L). The domain intervals are taken in
/// order (pi0 is the identity); pi1[k] is the image slot (1..3) of interval k.
/// Slot 1 starts at 0, slot 3 ends at L, slot 2 starts at t.
struct ITM3 {
  std::array<Scalar, 3> lambda;
  std::array<int, 3> pi1{2, 3, 1};
  Scalar t;

  Scalar length() const { return lambda[0] + lambda[1] + lambda[2]; }

  bool irreducible() const {
    if (pi1[0] == 1) return false;
    return !(pi1[0] == 2 && pi1[1] == 1);
  }

  /// (3,1,2) read in domain order is excluded by convention.
  bool forbidden() const { return pi1 == std::array<int, 3>{3, 1, 2}; }

  Scalar start(int k) const {
    Scalar s = 0;
    for (int j = 0; j < k; ++j) s += lambda[j];
    return s;
  }

  Scalar image_start(int k) const {
    if (pi1[k] == 2) return t;
    Scalar s = 0;
    for (int j = 0; j < 3; ++j) {
      if (pi1[j] < pi1[k]) s += lambda[j];
    }
    return s;
  }

  PiecewiseTranslation to_piecewise() const {
    std::vector<Branch> bs;
    for (int k = 0; k < 3; ++k) {
      const Scalar lo = start(k);
      bs.push_back(Branch{Interval(lo, lo + lambda[k]), image_start(k) - lo});
    }
    return PiecewiseTranslation(Interval(Scalar(0), length()), std::move(bs));
  }

  void validate() const {
    for (const auto& l : lambda) {
      if (l <= 0) throw Error(ErrorKind::InvalidArgument, "3-ITM lengths must be positive");
    }
    auto sorted = pi1;
    std::sort(sorted.begin(), sorted.end());
    if (sorted != std::array<int, 3>{1, 2, 3}) {
      throw Error(ErrorKind::InvalidArgument, "pi1 is not a permutation of {1,2,3}");
    }
    if (!irreducible()) throw Error(ErrorKind::InvalidArgument, "3-ITM is reducible");
    if (forbidden()) throw Error(ErrorKind::InvalidArgument, "permutation (3,1,2) is excluded");
    if (t < 0) throw Error(ErrorKind::InvalidArgument, "negative translation parameter");
    (void)to_piecewise();  // throws InvalidMap if an image leaves [0, L)
  }

  /// Finds (pi1, t) reproducing a 3-branch map on [0, L). Among several
  /// readings an irreducible, allowed one is preferred.
  static std::optional<ITM3> match(const PiecewiseTranslation& m) {
    if (m.branch_count() != 3 || m.support().lo != 0) return std::nullopt;
    std::array<int, 3> perm{1, 2, 3};
    std::optional<ITM3> fallback;
    do {
      ITM3 c;
      for (int k = 0; k < 3; ++k) c.lambda[k] = m.branches()[k].domain.length();
      c.pi1 = perm;
      const int mid = static_cast<int>(std::find(perm.begin(), perm.end(), 2) - perm.begin());
      c.t = m.branches()[mid].image().lo;
      try {
        if (c.to_piecewise() != m) continue;
      } catch (const Error&) {
        continue;
      }
      if (c.irreducible() && !c.forbidden()) return c;
      if (!fallback) fallback = c;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return fallback;
  }
};

inline std::ostream& operator<<(std::ostream& os, const ITM3& m) {
  os << "lambda=(" << to_string(m.lambda[0]) << ", " << to_string(m.lambda[1]) << ", "
     << to_string(m.lambda[2]) << ") pi1=(" << m.pi1[0] << "," << m.pi1[1] << "," << m.pi1[2]
     << ") t=" << to_string(m.t);
  return os;
}

}  // namespace dblrot
