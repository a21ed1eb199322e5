#pragma once

#include <gmpxx.h>

#include <string>

namespace darboux {

// Arbitrary-precision rational; GMP keeps mpq values canonical (den > 0, reduced).
using Rational = mpq_class;
using Integer = mpz_class;

inline Rational make_rational(const Integer& num, const Integer& den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline std::string to_string(const Integer& z) { return z.get_str(); }

inline std::string to_string(const Rational& q) { return q.get_str(); }

inline double to_double(const Rational& q) { return q.get_d(); }

inline int sign(const Rational& q) { return sgn(q); }

inline Integer factorial(unsigned n) {
  Integer f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return f;
}

}  // namespace darboux
