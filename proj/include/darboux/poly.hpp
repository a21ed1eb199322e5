#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "darboux/rational.hpp"

namespace darboux {

/// Dense univariate polynomial over Q, coefficients stored lowest degree first.
/// The zero polynomial is the empty coefficient vector; otherwise the leading
/// coefficient is nonzero.
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<Rational> coeffs);
  Poly(std::initializer_list<Rational> coeffs) : Poly(std::vector<Rational>(coeffs)) {}

  static Poly constant(const Rational& c);
  static Poly monomial(const Rational& c, int degree);
  static Poly x() { return monomial(1, 1); }

  // -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  bool is_constant() const { return coeffs_.size() <= 1; }

  const std::vector<Rational>& coeffs() const { return coeffs_; }
  Rational coeff(int i) const;
  const Rational& leading() const;

  Rational eval(const Rational& x) const;
  double eval(double x) const;
  std::vector<double> to_double_coeffs() const;

  Poly derivative() const;
  Poly monic() const;

  Poly operator-() const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Poly& o);
  Poly& operator*=(const Rational& c);

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(Poly a, const Rational& c) { return a *= c; }
  friend Poly operator*(const Rational& c, Poly a) { return a *= c; }

  friend bool operator==(const Poly& a, const Poly& b) { return a.coeffs_ == b.coeffs_; }

  std::string to_string() const;

 private:
  void trim();

  std::vector<Rational> coeffs_;
};

std::ostream& operator<<(std::ostream& os, const Poly& p);

/// Euclidean division a = q*b + r with deg r < deg b. Throws on b = 0.
std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);

/// Monic gcd; gcd(0, 0) = 0.
Poly gcd(const Poly& a, const Poly& b);

}  // namespace darboux
