#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "darboux/gaussfun.hpp"
#include "darboux/model.hpp"

namespace darboux {

/// Levels k_1 < ... < k_N of the model removed by the transformation, with
/// their eigenvalues alpha_i = E_{k_i}.
struct LevelSelection {
  std::vector<int> levels;
  std::vector<Rational> alphas;

  /// Validates nonempty, nonnegative, strictly increasing levels.
  static LevelSelection from_levels(const SolvableModel& model, std::vector<int> levels);

  int order() const { return static_cast<int>(levels.size()); }
  bool contains(int level) const;
};

class InadmissibleSelection : public std::invalid_argument {
 public:
  explicit InadmissibleSelection(int failing_k);
  int failing_k() const { return failing_k_; }

 private:
  int failing_k_;
};

/// The Krein scan passed but the Wronskian has real zeros. Signals an
/// arithmetic defect rather than bad input.
class NodefulWronskian : public std::logic_error {
 public:
  explicit NodefulWronskian(int root_count);
  int root_count() const { return root_count_; }

 private:
  int root_count_;
};

/// Smallest integer k >= 0 with prod_i (k - k_i) < 0, if any. Only
/// k <= max(levels) needs checking: beyond it every factor is positive.
std::optional<int> krein_violation(std::span<const int> levels);
bool krein_admissible(const LevelSelection& sel);

struct TransformResult {
  LevelSelection selection;
  std::vector<GaussFun> u;  // transformation functions
  GaussFun W;               // Wronskian of u
  RatFun A;                 // V_N - V_0
  RatFun V0;
  RatFun VN;
  DiffOp L;
  int order = 0;

  DiffOp h0() const { return DiffOp::schrodinger(V0); }
  DiffOp hN() const { return DiffOp::schrodinger(VN); }
};

/// -2 (log W)'' for W = r exp(s x^2/4), i.e. -2 [(r'' r - r'^2)/r^2 + s/2].
RatFun potential_shift(const GaussFun& W);

TransformResult build_transform(const SolvableModel& model, const LevelSelection& sel);

/// Crum-Krein operator: the bordered determinant with last column
/// (1, d, ..., d^N), expanded along that column and divided by W.
/// Throws std::invalid_argument if the u are linearly dependent.
DiffOp crum_krein_operator(std::span<const GaussFun> u, const GaussFun& W);

/// W(u_1..u_N, phi) / W(u_1..u_N). Agrees with tr.L applied to phi.
GaussFun crum_krein_apply(const TransformResult& tr, const GaussFun& phi);

/// v_k = W(u without u_k) / W, k = 1..N; these span ker L^dagger.
std::vector<GaussFun> kernel_functions(const TransformResult& tr);

/// prod_i (h - alpha_i) as an expanded operator.
DiffOp hamiltonian_polynomial(const DiffOp& h, std::span<const Rational> alphas);

struct FactorizationReport {
  DiffOp LdagL;
  DiffOp LLdag;
  DiffOp LdagL_residual;  // L^dagger L - prod (h0 - alpha_i)
  DiffOp LLdag_residual;  // L L^dagger - prod (hN - alpha_i)

  bool LdagL_exact() const { return LdagL_residual.is_zero(); }
  bool LLdag_exact() const { return LLdag_residual.is_zero(); }
  bool holds() const { return LdagL_exact() && LLdag_exact(); }
};

FactorizationReport factorization_identity_check(const TransformResult& tr);

}  // namespace darboux
