#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "darboux/ratfun.hpp"

namespace darboux {

/// r(x) * exp(s * x^2 / 4) with r a canonical rational function.
/// The zero function always carries s = 0.
class GaussFun {
 public:
  GaussFun() = default;
  GaussFun(RatFun r, Rational s);
  GaussFun(RatFun r) : GaussFun(std::move(r), Rational(0)) {}  // NOLINT

  const RatFun& r() const { return r_; }
  const Rational& s() const { return s_; }
  bool is_zero() const { return r_.is_zero(); }

  GaussFun derivative() const;
  GaussFun derivative(int order) const;

  double eval(double x) const;

  GaussFun operator-() const { return {-r_, s_}; }
  // Sums require a common weight (or a zero operand).
  friend GaussFun operator+(const GaussFun& a, const GaussFun& b);
  friend GaussFun operator-(const GaussFun& a, const GaussFun& b) { return a + (-b); }
  friend GaussFun operator*(const GaussFun& a, const GaussFun& b);
  friend GaussFun operator/(const GaussFun& a, const GaussFun& b);
  friend GaussFun operator*(const RatFun& c, const GaussFun& f) { return {c * f.r_, f.s_}; }

  friend bool operator==(const GaussFun& a, const GaussFun& b) { return a.s_ == b.s_ && a.r_ == b.r_; }

  std::string to_string() const;

 private:
  RatFun r_;
  Rational s_;
};

std::ostream& operator<<(std::ostream& os, const GaussFun& f);

GaussFun gauss_derivative(const GaussFun& f);

/// The constant c with a = c * b exactly, if one exists. Compares leading
/// coefficients of the canonical forms rather than dividing pointwise.
std::optional<Rational> proportionality_constant(const GaussFun& a, const GaussFun& b);

/// Wronskian determinant of a common-weight family. Throws std::invalid_argument
/// for an empty family or mixed weights.
GaussFun wronskian(std::span<const GaussFun> fs);

/// Wronskian with arbitrary per-function weights; each column contributes its
/// own exponential factor.
GaussFun wronskian_any_weight(std::span<const GaussFun> fs);

using RatMatrix = std::vector<std::vector<RatFun>>;

/// Fraction-free (Bareiss) elimination with row pivoting.
RatFun determinant_bareiss(RatMatrix m);
/// Laplace expansion along the first row; exponential cost, used for N <= 2
/// and as an independent check.
RatFun determinant_cofactor(const RatMatrix& m);
/// Dispatches on size: cofactor for N <= 2, Bareiss above.
RatFun determinant(RatMatrix m);

/// Linear differential operator sum_j a_j(x) d^j with rational coefficients.
/// Trailing zero coefficients are trimmed; the zero operator has no coefficients.
class DiffOp {
 public:
  DiffOp() = default;
  explicit DiffOp(std::vector<RatFun> coeffs);

  static DiffOp identity() { return multiplication(RatFun(1)); }
  static DiffOp multiplication(const RatFun& a);
  static DiffOp derivative_op(int order = 1);
  /// -d^2 + V
  static DiffOp schrodinger(const RatFun& potential);

  int order() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<RatFun>& coeffs() const { return coeffs_; }
  RatFun coeff(int j) const;

  GaussFun apply(const GaussFun& f) const;

  friend DiffOp operator+(const DiffOp& a, const DiffOp& b);
  friend DiffOp operator-(const DiffOp& a, const DiffOp& b);
  friend DiffOp operator*(const RatFun& c, const DiffOp& op);
  friend bool operator==(const DiffOp& a, const DiffOp& b) { return a.coeffs_ == b.coeffs_; }

  std::string to_string() const;

 private:
  void trim();

  std::vector<RatFun> coeffs_;
};

std::ostream& operator<<(std::ostream& os, const DiffOp& op);

GaussFun diffop_apply(const DiffOp& op, const GaussFun& f);
/// a o b, expanded with the Leibniz rule.
DiffOp diffop_compose(const DiffOp& a, const DiffOp& b);
/// Formal adjoint sum_j (-1)^j d^j o a_j.
DiffOp diffop_adjoint(const DiffOp& op);

}  // namespace darboux
