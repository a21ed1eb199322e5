#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "darboux/darboux.hpp"
#include "darboux/polycore.hpp"

namespace darboux {

/// h0 = -d^2 + x^2/4 - 1/2 with E_n = n and eigenfunctions He_n(x) exp(-x^2/4).
class OscillatorModel final : public SolvableModel {
 public:
  std::string name() const override { return "oscillator"; }
  RatFun potential() const override;
  GaussFun eigenfunction(int n) const override;
  Rational energy(int n) const override { return n; }
};

struct UnnormalizedState {
  GaussFun phi;
  NormValue norm_squared;  // n! * sqrt(2 pi)
};

UnnormalizedState phi_unnormalized(int n);

/// J_k = sum_{i=0}^{k} k!/i! He_i^2.
Poly jk_polynomial(int k);

/// Closed form of the partner potential obtained by deleting levels k, k+1:
/// x^2/4 + 3/2 - 2 J_k''/J_k + 2 (J_k'/J_k)^2.
RatFun v2_closed_form(int k);

class ForbiddenLevel : public std::invalid_argument {
 public:
  ForbiddenLevel(int k, int n);
};

/// Closed-form partner eigenfunction for the pair (k, k+1):
///   psi_n = C * [(n-k) He_n + f_kn He_{k+1} / J_k] exp(-x^2/4),
///   f_kn = He_k He_{n+1} - He_n He_{k+1},
///   C^-2 = sqrt(2 pi) n! (n-k)(n-k-1).
struct PsiClosedForm {
  int k = 0;
  int n = 0;
  GaussFun bracket;          // unnormalized, includes exp(-x^2/4)
  NormValue norm_squared;    // C^-2
  Poly f_kn;

  double normalization() const;  // C
  double eval(double x) const { return normalization() * bracket.eval(x); }
};

PsiClosedForm psi_closed_form(int k, int n);

struct GoldenPsiCheck {
  int n = 0;
  std::optional<Rational> ratio;  // engine L phi_n = ratio * bracket
  bool norm_consistent = false;   // ratio^2 * |bracket|^2 == |L phi_n|^2
};

struct GoldenReport {
  int k = 0;
  bool wronskian_matches = false;
  Rational wronskian_scale;  // W poly part = scale * J_k
  bool potential_matches = false;
  std::vector<GoldenPsiCheck> psi;

  bool all_ok() const;
};

GoldenReport golden_cross_check(int k, int n_max);

}  // namespace darboux
