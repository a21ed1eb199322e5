#include "darboux/poly.hpp"

#include <ostream>
#include <sstream>
#include <stdexcept>

namespace darboux {

Poly::Poly(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) {
  for (auto& c : coeffs_) c.canonicalize();
  trim();
}

Poly Poly::constant(const Rational& c) { return Poly(std::vector<Rational>{c}); }

Poly Poly::monomial(const Rational& c, int degree) {
  if (degree < 0) throw std::invalid_argument("Poly::monomial: negative degree");
  std::vector<Rational> v(static_cast<size_t>(degree) + 1);
  v.back() = c;
  return Poly(std::move(v));
}

void Poly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Rational Poly::coeff(int i) const {
  if (i < 0 || i > degree()) return 0;
  return coeffs_[static_cast<size_t>(i)];
}

const Rational& Poly::leading() const {
  if (is_zero()) throw std::domain_error("Poly::leading: zero polynomial");
  return coeffs_.back();
}

Rational Poly::eval(const Rational& x) const {
  Rational acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

double Poly::eval(double x) const {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + it->get_d();
  return acc;
}

std::vector<double> Poly::to_double_coeffs() const {
  std::vector<double> out;
  out.reserve(coeffs_.size());
  for (const auto& c : coeffs_) out.push_back(c.get_d());
  return out;
}

Poly Poly::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<Rational> d(coeffs_.size() - 1);
  for (size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = coeffs_[i] * static_cast<long>(i);
  return Poly(std::move(d));
}

Poly Poly::monic() const {
  if (is_zero()) return {};
  Rational inv = 1 / leading();
  return *this * inv;
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

Poly& Poly::operator+=(const Poly& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  trim();
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  trim();
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> out(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i] == 0) continue;
    for (size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return Poly(std::move(out));
}

Poly& Poly::operator*=(const Poly& o) { return *this = *this * o; }

Poly& Poly::operator*=(const Rational& c) {
  if (c == 0) {
    coeffs_.clear();
    return *this;
  }
  for (auto& v : coeffs_) v *= c;
  return *this;
}

std::string Poly::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    const Rational& c = coeffs_[static_cast<size_t>(i)];
    if (c == 0) continue;
    Rational mag = abs(c);
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    first = false;
    if (i == 0 || mag != 1) os << mag.get_str();
    if (i > 0) {
      if (mag != 1) os << "*";
      os << "x";
      if (i > 1) os << "^" << i;
    }
  }
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Poly& p) { return os << p.to_string(); }

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw std::domain_error("divmod: division by zero polynomial");
  if (a.degree() < b.degree()) return {Poly{}, a};
  std::vector<Rational> rem = a.coeffs();
  std::vector<Rational> quot(static_cast<size_t>(a.degree() - b.degree()) + 1);
  const auto& bc = b.coeffs();
  const Rational inv_lead = 1 / b.leading();
  const int db = b.degree();
  for (int k = a.degree() - db; k >= 0; --k) {
    const Rational q = rem[static_cast<size_t>(k + db)] * inv_lead;
    quot[static_cast<size_t>(k)] = q;
    if (q == 0) continue;
    for (int j = 0; j <= db; ++j) rem[static_cast<size_t>(k + j)] -= q * bc[static_cast<size_t>(j)];
  }
  rem.resize(static_cast<size_t>(db));
  return {Poly(std::move(quot)), Poly(std::move(rem))};
}

Poly gcd(const Poly& a, const Poly& b) {
  Poly x = a.monic();
  Poly y = b.monic();
  while (!y.is_zero()) {
    Poly r = divmod(x, y).second.monic();
    x = std::move(y);
    y = std::move(r);
  }
  return x;
}

}  // namespace darboux
