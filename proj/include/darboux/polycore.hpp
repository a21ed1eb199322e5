#pragma once

#include <vector>

#include "darboux/poly.hpp"
#include "darboux/rational.hpp"
#include "darboux/ratfun.hpp"

namespace darboux {

/// Probabilists' Hermite polynomial: He_0 = 1, He_1 = x,
/// He_{n+1} = x He_n - n He_{n-1}.
Poly hermite_he(int n);

/// Sturm chain p, p', -rem(...), ... Each member is rescaled by a positive
/// constant, which leaves sign variations unchanged.
std::vector<Poly> sturm_sequence(const Poly& p);

/// Number of distinct real roots of p. Throws std::invalid_argument for p = 0.
int sturm_real_root_count(const Poly& p);

/// Number of distinct roots of p in the closed interval [a, b].
int sturm_root_count_in(const Poly& p, const Rational& a, const Rational& b);

/// q * (2 pi)^(m/2), kept symbolic so that irrational constants stay out of
/// the exact layer.
struct NormValue {
  Rational q;
  int m = 0;

  double to_double() const;
  friend NormValue operator*(const NormValue& a, const NormValue& b) { return {a.q * b.q, a.m + b.m}; }
  friend bool operator==(const NormValue& a, const NormValue& b) { return a.q == b.q && a.m == b.m; }
};

}  // namespace darboux
