#include "darboux/gaussfun.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace darboux {

namespace {

// Rational part of the next derivative of r * exp(s x^2/4).
RatFun next_derivative_part(const RatFun& r, const Rational& s) {
  RatFun d = r.derivative();
  if (s == 0) return d;
  return d + RatFun(Poly::monomial(s / 2, 1)) * r;
}

}  // namespace

GaussFun::GaussFun(RatFun r, Rational s) : r_(std::move(r)), s_(std::move(s)) {
  if (r_.is_zero()) s_ = 0;
}

GaussFun GaussFun::derivative() const {
  if (is_zero()) return {};
  return {next_derivative_part(r_, s_), s_};
}

GaussFun GaussFun::derivative(int order) const {
  if (order < 0) throw std::invalid_argument("GaussFun::derivative: negative order");
  GaussFun f = *this;
  for (int i = 0; i < order; ++i) f = f.derivative();
  return f;
}

double GaussFun::eval(double x) const {
  if (is_zero()) return 0.0;
  return r_.eval(x) * std::exp(s_.get_d() * x * x / 4.0);
}

GaussFun operator+(const GaussFun& a, const GaussFun& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.s_ != b.s_) throw std::invalid_argument("GaussFun: sum of functions with different weights");
  return {a.r_ + b.r_, a.s_};
}

GaussFun operator*(const GaussFun& a, const GaussFun& b) {
  if (a.is_zero() || b.is_zero()) return {};
  return {a.r_ * b.r_, a.s_ + b.s_};
}

GaussFun operator/(const GaussFun& a, const GaussFun& b) {
  if (b.is_zero()) throw std::domain_error("GaussFun: division by zero");
  if (a.is_zero()) return {};
  return {a.r_ / b.r_, a.s_ - b.s_};
}

std::string GaussFun::to_string() const {
  if (is_zero()) return "0";
  if (s_ == 0) return r_.to_string();
  return "(" + r_.to_string() + ")*exp(" + s_.get_str() + "*x^2/4)";
}

std::ostream& operator<<(std::ostream& os, const GaussFun& f) { return os << f.to_string(); }

GaussFun gauss_derivative(const GaussFun& f) { return f.derivative(); }

std::optional<Rational> proportionality_constant(const GaussFun& a, const GaussFun& b) {
  if (b.is_zero()) {
    if (a.is_zero()) return Rational(0);
    return std::nullopt;
  }
  if (a.is_zero()) return Rational(0);
  if (a.s() != b.s() || a.r().den() != b.r().den()) return std::nullopt;
  if (a.r().num().degree() != b.r().num().degree()) return std::nullopt;
  Rational c = a.r().num().leading() / b.r().num().leading();
  if (a.r().num() != b.r().num() * c) return std::nullopt;
  return c;
}

// --- determinants -------------------------------------------------------

RatFun determinant_cofactor(const RatMatrix& m) {
  const size_t n = m.size();
  if (n == 0) return RatFun(1);
  if (n == 1) return m[0][0];
  if (n == 2) return m[0][0] * m[1][1] - m[0][1] * m[1][0];
  RatFun det;
  for (size_t col = 0; col < n; ++col) {
    if (m[0][col].is_zero()) continue;
    RatMatrix minor;
    minor.reserve(n - 1);
    for (size_t i = 1; i < n; ++i) {
      std::vector<RatFun> row;
      row.reserve(n - 1);
      for (size_t j = 0; j < n; ++j)
        if (j != col) row.push_back(m[i][j]);
      minor.push_back(std::move(row));
    }
    RatFun term = m[0][col] * determinant_cofactor(minor);
    det = (col % 2 == 0) ? det + term : det - term;
  }
  return det;
}

RatFun determinant_bareiss(RatMatrix m) {
  const size_t n = m.size();
  if (n == 0) return RatFun(1);
  for (const auto& row : m)
    if (row.size() != n) throw std::invalid_argument("determinant: matrix is not square");
  bool negate = false;
  RatFun prev(1);
  for (size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k].is_zero()) {
      size_t p = k + 1;
      while (p < n && m[p][k].is_zero()) ++p;
      if (p == n) return RatFun{};
      std::swap(m[k], m[p]);
      negate = !negate;
    }
    for (size_t i = k + 1; i < n; ++i) {
      for (size_t j = k + 1; j < n; ++j) {
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
      }
    }
    prev = m[k][k];
  }
  RatFun det = m[n - 1][n - 1];
  return negate ? -det : det;
}

RatFun determinant(RatMatrix m) {
  if (m.size() <= 2) return determinant_cofactor(m);
  return determinant_bareiss(std::move(m));
}

// --- Wronskians ---------------------------------------------------------

GaussFun wronskian_any_weight(std::span<const GaussFun> fs) {
  if (fs.empty()) throw std::invalid_argument("wronskian: empty family");
  const size_t n = fs.size();
  Rational weight = 0;
  for (const auto& f : fs) {
    if (f.is_zero()) return {};
    weight += f.s();
  }
  // Row i holds the rational parts of the i-th derivatives; every column
  // carries its own exp(s_j x^2/4), which factors out of the determinant.
  RatMatrix m(n, std::vector<RatFun>(n));
  for (size_t j = 0; j < n; ++j) {
    RatFun part = fs[j].r();
    for (size_t i = 0; i < n; ++i) {
      m[i][j] = part;
      if (i + 1 < n) part = next_derivative_part(part, fs[j].s());
    }
  }
  return {determinant(std::move(m)), weight};
}

GaussFun wronskian(std::span<const GaussFun> fs) {
  if (fs.empty()) throw std::invalid_argument("wronskian: empty family");
  std::optional<Rational> weight;
  for (const auto& f : fs) {
    if (f.is_zero()) continue;
    if (weight && *weight != f.s())
      throw std::invalid_argument("wronskian: functions carry different Gaussian weights");
    weight = f.s();
  }
  return wronskian_any_weight(fs);
}

// --- DiffOp -------------------------------------------------------------

DiffOp::DiffOp(std::vector<RatFun> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

void DiffOp::trim() {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

DiffOp DiffOp::multiplication(const RatFun& a) { return DiffOp(std::vector<RatFun>{a}); }

DiffOp DiffOp::derivative_op(int order) {
  if (order < 0) throw std::invalid_argument("DiffOp::derivative_op: negative order");
  std::vector<RatFun> c(static_cast<size_t>(order) + 1);
  c.back() = RatFun(1);
  return DiffOp(std::move(c));
}

DiffOp DiffOp::schrodinger(const RatFun& potential) {
  return DiffOp(std::vector<RatFun>{potential, RatFun{}, RatFun(-1)});
}

RatFun DiffOp::coeff(int j) const {
  if (j < 0 || j > order()) return RatFun{};
  return coeffs_[static_cast<size_t>(j)];
}

GaussFun DiffOp::apply(const GaussFun& f) const {
  GaussFun out;
  GaussFun deriv = f;
  for (size_t j = 0; j < coeffs_.size(); ++j) {
    if (!coeffs_[j].is_zero()) out = out + coeffs_[j] * deriv;
    if (j + 1 < coeffs_.size()) deriv = deriv.derivative();
  }
  return out;
}

DiffOp operator+(const DiffOp& a, const DiffOp& b) {
  std::vector<RatFun> c(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (size_t j = 0; j < c.size(); ++j) c[j] = a.coeff(static_cast<int>(j)) + b.coeff(static_cast<int>(j));
  return DiffOp(std::move(c));
}

DiffOp operator-(const DiffOp& a, const DiffOp& b) { return a + RatFun(-1) * b; }

DiffOp operator*(const RatFun& c, const DiffOp& op) {
  std::vector<RatFun> out;
  out.reserve(op.coeffs_.size());
  for (const auto& a : op.coeffs_) out.push_back(c * a);
  return DiffOp(std::move(out));
}

std::string DiffOp::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int j = order(); j >= 0; --j) {
    const RatFun& a = coeffs_[static_cast<size_t>(j)];
    if (a.is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    os << "[" << a.to_string() << "]";
    if (j > 0) os << "*d" << (j > 1 ? "^" + std::to_string(j) : "");
  }
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const DiffOp& op) { return os << op.to_string(); }

GaussFun diffop_apply(const DiffOp& op, const GaussFun& f) { return op.apply(f); }

namespace {

std::vector<std::vector<long>> binomial_table(int n) {
  std::vector<std::vector<long>> c(static_cast<size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) {
    c[static_cast<size_t>(i)].assign(static_cast<size_t>(i) + 1, 1);
    for (int k = 1; k < i; ++k)
      c[static_cast<size_t>(i)][static_cast<size_t>(k)] =
          c[static_cast<size_t>(i - 1)][static_cast<size_t>(k - 1)] + c[static_cast<size_t>(i - 1)][static_cast<size_t>(k)];
  }
  return c;
}

}  // namespace

DiffOp diffop_compose(const DiffOp& a, const DiffOp& b) {
  if (a.is_zero() || b.is_zero()) return {};
  const int na = a.order();
  const int nb = b.order();
  const auto binom = binomial_table(na);
  std::vector<RatFun> out(static_cast<size_t>(na + nb) + 1);
  // d^i o (b_j d^j) = sum_m C(i,m) b_j^(m) d^(i-m+j)
  for (int j = 0; j <= nb; ++j) {
    RatFun bj = b.coeff(j);
    if (bj.is_zero()) continue;
    std::vector<RatFun> derivs{bj};
    for (int m = 1; m <= na; ++m) derivs.push_back(derivs.back().derivative());
    for (int i = 0; i <= na; ++i) {
      const RatFun ai = a.coeff(i);
      if (ai.is_zero()) continue;
      for (int m = 0; m <= i; ++m) {
        const RatFun& dm = derivs[static_cast<size_t>(m)];
        if (dm.is_zero()) continue;
        RatFun term = ai * dm;
        long c = binom[static_cast<size_t>(i)][static_cast<size_t>(m)];
        if (c != 1) term = term * RatFun(Rational(c));
        out[static_cast<size_t>(i - m + j)] += term;
      }
    }
  }
  return DiffOp(std::move(out));
}

DiffOp diffop_adjoint(const DiffOp& op) {
  if (op.is_zero()) return {};
  const int n = op.order();
  const auto binom = binomial_table(n);
  std::vector<RatFun> out(static_cast<size_t>(n) + 1);
  // (-1)^j d^j o a_j = (-1)^j sum_m C(j,m) a_j^(m) d^(j-m)
  for (int j = 0; j <= n; ++j) {
    RatFun deriv = op.coeff(j);
    if (deriv.is_zero()) continue;
    for (int m = 0; m <= j; ++m) {
      if (deriv.is_zero()) break;
      Rational c(binom[static_cast<size_t>(j)][static_cast<size_t>(m)]);
      if (j % 2 == 1) c = -c;
      out[static_cast<size_t>(j - m)] += RatFun(c) * deriv;
      deriv = deriv.derivative();
    }
  }
  return DiffOp(std::move(out));
}

}  // namespace darboux
