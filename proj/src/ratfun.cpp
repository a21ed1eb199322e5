#include "darboux/ratfun.hpp"

#include <ostream>
#include <stdexcept>

namespace darboux {

RatFun ratfun_reduce(Poly num, Poly den) {
  if (den.is_zero()) throw std::domain_error("ratfun_reduce: zero denominator");
  if (num.is_zero()) return RatFun{};
  if (den.degree() > 0) {
    Poly g = gcd(num, den);
    if (g.degree() > 0) {
      num = divmod(num, g).first;
      den = divmod(den, g).first;
    }
  }
  Rational inv = 1 / den.leading();
  if (inv != 1) {
    num *= inv;
    den *= inv;
  }
  return RatFun(std::move(num), std::move(den), 0);
}

Rational RatFun::eval(const Rational& x) const {
  Rational d = den_.eval(x);
  if (d == 0) throw std::domain_error("RatFun::eval: pole");
  return num_.eval(x) / d;
}

double RatFun::eval(double x) const { return num_.eval(x) / den_.eval(x); }

RatFun RatFun::derivative() const {
  if (is_polynomial()) return RatFun(num_.derivative() * (1 / den_.leading()));
  return ratfun_reduce(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
}

RatFun RatFun::operator-() const { return RatFun(-num_, den_, 0); }

RatFun operator+(const RatFun& a, const RatFun& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.den_ == b.den_) {
    if (a.is_polynomial()) return RatFun(a.num_ + b.num_, a.den_, 0);
    return ratfun_reduce(a.num_ + b.num_, a.den_);
  }
  return ratfun_reduce(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RatFun operator-(const RatFun& a, const RatFun& b) { return a + (-b); }

RatFun operator*(const RatFun& a, const RatFun& b) {
  if (a.is_zero() || b.is_zero()) return RatFun{};
  if (a.is_polynomial() && b.is_polynomial()) return RatFun(a.num_ * b.num_, a.den_, 0);
  // Cross-cancel first so the products stay small.
  Poly g1 = gcd(a.num_, b.den_);
  Poly g2 = gcd(b.num_, a.den_);
  Poly an = g1.degree() > 0 ? divmod(a.num_, g1).first : a.num_;
  Poly bd = g1.degree() > 0 ? divmod(b.den_, g1).first : b.den_;
  Poly bn = g2.degree() > 0 ? divmod(b.num_, g2).first : b.num_;
  Poly ad = g2.degree() > 0 ? divmod(a.den_, g2).first : a.den_;
  Poly num = an * bn;
  Poly den = ad * bd;
  Rational inv = 1 / den.leading();
  return RatFun(num * inv, den * inv, 0);
}

RatFun operator/(const RatFun& a, const RatFun& b) {
  if (b.is_zero()) throw std::domain_error("RatFun: division by zero");
  return a * ratfun_reduce(b.den_, b.num_);
}

std::string RatFun::to_string() const {
  if (is_polynomial()) return num_.to_string();
  return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
}

std::ostream& operator<<(std::ostream& os, const RatFun& f) { return os << f.to_string(); }

}  // namespace darboux
