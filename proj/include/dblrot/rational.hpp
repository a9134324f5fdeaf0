#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

#include "dblrot/error.hpp"

namespace dblrot {

/// Exact rational scalar. Every position, length and shift in the library is
/// one of these; there is no tolerance anywhere.
using Scalar = mpq_class;

/// Parses "p/q", "p" or "-p/q" into a canonical rational.
inline Scalar parse_scalar(std::string_view text) {
  std::string s(text);
  auto bad = [&] { return Error(ErrorKind::Parse, "not a rational p/q: '" + s + "'"); };
  if (s.empty()) throw bad();
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  bool seen_digit = false, seen_slash = false, digit_after_slash = false;
  for (; i < s.size(); ++i) {
    char ch = s[i];
    if (ch >= '0' && ch <= '9') {
      seen_digit = true;
      if (seen_slash) digit_after_slash = true;
    } else if (ch == '/' && !seen_slash && seen_digit) {
      seen_slash = true;
    } else {
      throw bad();
    }
  }
  if (!seen_digit || (seen_slash && !digit_after_slash)) throw bad();
  if (s[0] == '+') s.erase(0, 1);
  Scalar q;
  if (q.set_str(s, 10) != 0) throw bad();
  if (q.get_den() == 0) throw Error(ErrorKind::Parse, "zero denominator in '" + s + "'");
  q.canonicalize();
  return q;
}

/// Canonical "p/q" form; integers are written "p/1" so every field has the same shape.
inline std::string to_string(const Scalar& x) {
  return x.get_num().get_str() + "/" + x.get_den().get_str();
}

/// num / 2^precision, exact.
inline Scalar dyadic(std::uint64_t num, int precision) {
  if (precision < 0 || precision > 62) {
    throw Error(ErrorKind::InvalidArgument, "dyadic precision must be in [0, 62]");
  }
  mpz_class n;
  mpz_import(n.get_mpz_t(), 1, 1, sizeof(num), 0, 0, &num);
  mpz_class d = 1;
  d <<= precision;
  Scalar q(n, d);
  q.canonicalize();
  return q;
}

/// num / den in lowest terms.
inline Scalar rat(long num, long den = 1) {
  if (den == 0) throw Error(ErrorKind::InvalidArgument, "zero denominator");
  Scalar q(num, den);
  q.canonicalize();
  return q;
}

/// Fractional part in [0, 1).
inline Scalar frac(const Scalar& x) {
  mpz_class fl;
  mpz_fdiv_q(fl.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return x - Scalar(fl);
}

inline double to_double(const Scalar& x) { return x.get_d(); }

}  // namespace dblrot
