#pragma once

#include <iosfwd>
#include <string>

#include "darboux/poly.hpp"

namespace darboux {

/// Reduced rational function num/den: gcd(num, den) = 1 and den monic.
/// Structural equality of two RatFun values is value equality.
class RatFun {
 public:
  RatFun() : den_(Poly::constant(1)) {}
  RatFun(Poly p) : num_(std::move(p)), den_(Poly::constant(1)) {}  // NOLINT
  RatFun(const Rational& c) : RatFun(Poly::constant(c)) {}         // NOLINT
  RatFun(int c) : RatFun(Rational(c)) {}                           // NOLINT

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.degree() == 0; }

  Rational eval(const Rational& x) const;
  double eval(double x) const;

  RatFun derivative() const;

  RatFun operator-() const;
  friend RatFun operator+(const RatFun& a, const RatFun& b);
  friend RatFun operator-(const RatFun& a, const RatFun& b);
  friend RatFun operator*(const RatFun& a, const RatFun& b);
  friend RatFun operator/(const RatFun& a, const RatFun& b);
  RatFun& operator+=(const RatFun& o) { return *this = *this + o; }
  RatFun& operator-=(const RatFun& o) { return *this = *this - o; }
  RatFun& operator*=(const RatFun& o) { return *this = *this * o; }

  friend bool operator==(const RatFun& a, const RatFun& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  std::string to_string() const;

  friend RatFun ratfun_reduce(Poly num, Poly den);

 private:
  RatFun(Poly num, Poly den, int) : num_(std::move(num)), den_(std::move(den)) {}

  Poly num_;
  Poly den_;
};

/// Canonical form of num/den. Throws std::domain_error when den = 0.
RatFun ratfun_reduce(Poly num, Poly den);

std::ostream& operator<<(std::ostream& os, const RatFun& f);

}  // namespace darboux
