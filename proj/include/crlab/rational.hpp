#pragma once

#include <gmpxx.h>

#include <string>

#include "crlab/error.hpp"

namespace crlab {

// Arbitrary-precision rational, canonical (reduced, positive denominator).
// GMP keeps mpq_class values canonical as long as they are built through
// arithmetic; raw string construction goes through rat_from_string below.
using Rational = mpq_class;

inline Rational rat(long num, long den = 1) {
  if (den == 0) throw DivisionByZero();
  Rational r(num, den);
  r.canonicalize();
  return r;
}

// Parses "p", "-p", "p/q" with optional sign. Throws ParseError on malformed
// input and DivisionByZero on a zero denominator.
Rational rat_from_string(const std::string& text);

inline Rational rat_div(const Rational& a, const Rational& b) {
  if (b == 0) throw DivisionByZero();
  return a / b;
}

inline bool rat_is_integer(const Rational& r) {
  return mpz_cmp_ui(r.get_den().get_mpz_t(), 1) == 0;
}

// Valid only when rat_is_integer(r) and the value fits in a long.
inline long rat_to_long(const Rational& r) { return r.get_num().get_si(); }

inline double rat_double(const Rational& r) { return r.get_d(); }

inline std::string rat_str(const Rational& r) { return r.get_str(); }

inline Rational rat_floor(const Rational& r) {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
  return Rational(q);
}

// b^e for integer e (negative allowed, b != 0 then).
inline Rational rat_pow(const Rational& b, long e) {
  if (e < 0) {
    if (b == 0) throw DivisionByZero();
    return rat_pow(1 / b, -e);
  }
  Rational r(1);
  for (long k = 0; k < e; ++k) r *= b;
  return r;
}

}  // namespace crlab
