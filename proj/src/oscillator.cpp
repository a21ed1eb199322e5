#include "darboux/oscillator.hpp"

#include <cmath>
#include <string>

namespace darboux {

namespace {

// exp(-x^2/4)
const Rational kGaussWeight(-1);

}  // namespace

RatFun OscillatorModel::potential() const { return RatFun(Poly{Rational(-1, 2), 0, Rational(1, 4)}); }

GaussFun OscillatorModel::eigenfunction(int n) const { return {RatFun(hermite_he(n)), kGaussWeight}; }

UnnormalizedState phi_unnormalized(int n) {
  if (n < 0) throw std::invalid_argument("phi_unnormalized: negative level");
  return {OscillatorModel{}.eigenfunction(n), NormValue{Rational(factorial(static_cast<unsigned>(n))), 1}};
}

Poly jk_polynomial(int k) {
  if (k < 0) throw std::invalid_argument("jk_polynomial: negative index");
  Poly j;
  const Integer kf = factorial(static_cast<unsigned>(k));
  for (int i = 0; i <= k; ++i) {
    Poly he = hermite_he(i);
    Integer w = kf / factorial(static_cast<unsigned>(i));
    j += he * he * Rational(w);
  }
  return j;
}

RatFun v2_closed_form(int k) {
  const Poly j = jk_polynomial(k);
  const Poly j1 = j.derivative();
  const Poly j2 = j1.derivative();
  RatFun base(Poly{Rational(3, 2), 0, Rational(1, 4)});
  RatFun ratio1 = ratfun_reduce(j1, j);
  return base - RatFun(2) * ratfun_reduce(j2, j) + RatFun(2) * ratio1 * ratio1;
}

ForbiddenLevel::ForbiddenLevel(int k, int n)
    : std::invalid_argument("level " + std::to_string(n) + " is deleted by the pair (" + std::to_string(k) + ", " +
                            std::to_string(k + 1) + ")") {}

double PsiClosedForm::normalization() const { return 1.0 / std::sqrt(norm_squared.to_double()); }

PsiClosedForm psi_closed_form(int k, int n) {
  if (k < 0 || n < 0) throw std::invalid_argument("psi_closed_form: negative index");
  if (n == k || n == k + 1) throw ForbiddenLevel(k, n);
  PsiClosedForm out;
  out.k = k;
  out.n = n;
  const Poly hek = hermite_he(k);
  const Poly hek1 = hermite_he(k + 1);
  const Poly hen = hermite_he(n);
  const Poly hen1 = hermite_he(n + 1);
  out.f_kn = hek * hen1 - hen * hek1;
  RatFun bracket = RatFun(hen * Rational(n - k)) + ratfun_reduce(out.f_kn * hek1, jk_polynomial(k));
  out.bracket = GaussFun(bracket, kGaussWeight);
  out.norm_squared = NormValue{Rational(factorial(static_cast<unsigned>(n)) * (n - k) * (n - k - 1)), 1};
  return out;
}

bool GoldenReport::all_ok() const {
  if (!wronskian_matches || !potential_matches) return false;
  for (const auto& p : psi)
    if (!p.ratio || !p.norm_consistent) return false;
  return true;
}

GoldenReport golden_cross_check(int k, int n_max) {
  const OscillatorModel model;
  const auto sel = LevelSelection::from_levels(model, {k, k + 1});
  const TransformResult tr = build_transform(model, sel);

  GoldenReport rep;
  rep.k = k;
  const Poly jk = jk_polynomial(k);
  const RatFun& w = tr.W.r();
  if (w.is_polynomial() && w.num().degree() == jk.degree()) {
    rep.wronskian_scale = w.num().leading() / jk.leading();
    rep.wronskian_matches = (w.num() == jk * rep.wronskian_scale);
  }
  rep.potential_matches = (tr.VN == v2_closed_form(k));

  for (int n = 0; n <= n_max; ++n) {
    if (n == k || n == k + 1) continue;
    GoldenPsiCheck check;
    check.n = n;
    const auto phi = phi_unnormalized(n);
    const GaussFun engine = diffop_apply(tr.L, phi.phi);
    const PsiClosedForm closed = psi_closed_form(k, n);
    check.ratio = proportionality_constant(engine, closed.bracket);
    if (check.ratio) {
      Rational eigen_factor = 1;
      for (const auto& a : sel.alphas) eigen_factor *= Rational(n) - a;
      const NormValue engine_norm = NormValue{eigen_factor, 0} * phi.norm_squared;
      const NormValue closed_norm = NormValue{(*check.ratio) * (*check.ratio), 0} * closed.norm_squared;
      check.norm_consistent = (engine_norm == closed_norm);
    }
    rep.psi.push_back(std::move(check));
  }
  return rep;
}

}  // namespace darboux
