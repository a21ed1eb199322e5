#include "darboux/darboux.hpp"

#include <algorithm>
#include <string>

#include "darboux/polycore.hpp"

namespace darboux {

LevelSelection LevelSelection::from_levels(const SolvableModel& model, std::vector<int> levels) {
  if (levels.empty()) throw std::invalid_argument("level selection must be nonempty");
  for (size_t i = 0; i < levels.size(); ++i) {
    if (levels[i] < 0) throw std::invalid_argument("level selection contains a negative level");
    if (i > 0 && levels[i] <= levels[i - 1])
      throw std::invalid_argument("level selection must be strictly increasing");
  }
  LevelSelection sel;
  sel.alphas.reserve(levels.size());
  for (int k : levels) sel.alphas.push_back(model.energy(k));
  sel.levels = std::move(levels);
  return sel;
}

bool LevelSelection::contains(int level) const {
  return std::binary_search(levels.begin(), levels.end(), level);
}

InadmissibleSelection::InadmissibleSelection(int failing_k)
    : std::invalid_argument("inadmissible selection: Krein product (k - k_1)...(k - k_N) is negative at k = " +
                            std::to_string(failing_k)),
      failing_k_(failing_k) {}

NodefulWronskian::NodefulWronskian(int root_count)
    : std::logic_error("Wronskian has " + std::to_string(root_count) +
                       " real zero(s) although the Krein condition holds"),
      root_count_(root_count) {}

std::optional<int> krein_violation(std::span<const int> levels) {
  if (levels.empty()) return std::nullopt;
  const int top = *std::max_element(levels.begin(), levels.end());
  for (int k = 0; k <= top; ++k) {
    int negatives = 0;
    bool zero = false;
    for (int ki : levels) {
      if (k == ki) zero = true;
      else if (k < ki) ++negatives;
    }
    if (!zero && negatives % 2 == 1) return k;
  }
  return std::nullopt;
}

bool krein_admissible(const LevelSelection& sel) { return !krein_violation(sel.levels).has_value(); }

RatFun potential_shift(const GaussFun& W) {
  if (W.is_zero()) throw std::domain_error("potential_shift: zero Wronskian");
  const RatFun& r = W.r();
  const RatFun r1 = r.derivative();
  const RatFun r2 = r1.derivative();
  RatFun log_second = (r2 * r - r1 * r1) / (r * r) + RatFun(W.s() / 2);
  return RatFun(-2) * log_second;
}

namespace {

// Rational parts of f, f', ..., f^(count-1).
std::vector<RatFun> derivative_parts(const GaussFun& f, int count) {
  std::vector<RatFun> out;
  out.reserve(static_cast<size_t>(count));
  GaussFun g = f;
  for (int i = 0; i < count; ++i) {
    out.push_back(g.r());
    if (i + 1 < count) g = g.derivative();
  }
  return out;
}

}  // namespace

DiffOp crum_krein_operator(std::span<const GaussFun> u, const GaussFun& W) {
  if (u.empty()) throw std::invalid_argument("crum_krein_operator: no transformation functions");
  if (W.is_zero()) throw std::invalid_argument("crum_krein_operator: linearly dependent transformation functions");
  const int n = static_cast<int>(u.size());
  Rational weight = 0;
  std::vector<std::vector<RatFun>> columns;
  columns.reserve(u.size());
  for (const auto& f : u) {
    if (f.is_zero()) throw std::invalid_argument("crum_krein_operator: zero transformation function");
    weight += f.s();
    columns.push_back(derivative_parts(f, n + 1));
  }
  // Every minor keeps one derivative row per column, so it carries the same
  // exponential factor as W and the quotient is exponential-free.
  if (weight != W.s()) throw std::logic_error("crum_krein_operator: Wronskian weight mismatch");

  std::vector<RatFun> coeffs(static_cast<size_t>(n) + 1);
  for (int j = 0; j <= n; ++j) {
    RatMatrix minor;
    minor.reserve(static_cast<size_t>(n));
    for (int row = 0; row <= n; ++row) {
      if (row == j) continue;
      std::vector<RatFun> r;
      r.reserve(static_cast<size_t>(n));
      for (int c = 0; c < n; ++c) r.push_back(columns[static_cast<size_t>(c)][static_cast<size_t>(row)]);
      minor.push_back(std::move(r));
    }
    RatFun m = determinant(std::move(minor)) / W.r();
    coeffs[static_cast<size_t>(j)] = ((j + n) % 2 == 0) ? m : -m;
  }
  DiffOp L(std::move(coeffs));
  if (L.order() != n || L.coeff(n) != RatFun(1))
    throw std::logic_error("crum_krein_operator: leading coefficient is not 1");
  return L;
}

TransformResult build_transform(const SolvableModel& model, const LevelSelection& sel) {
  if (sel.levels.empty()) throw std::invalid_argument("build_transform: empty selection");
  if (auto k = krein_violation(sel.levels)) throw InadmissibleSelection(*k);

  TransformResult tr;
  tr.selection = sel;
  tr.order = sel.order();
  tr.u.reserve(sel.levels.size());
  for (int k : sel.levels) tr.u.push_back(model.eigenfunction(k));
  tr.W = wronskian(tr.u);
  if (tr.W.is_zero()) throw std::invalid_argument("build_transform: linearly dependent transformation functions");

  int roots = sturm_real_root_count(tr.W.r().num());
  if (tr.W.r().den().degree() > 0) roots += sturm_real_root_count(tr.W.r().den());
  if (roots > 0) throw NodefulWronskian(roots);

  tr.V0 = model.potential();
  tr.A = potential_shift(tr.W);
  tr.VN = tr.V0 + tr.A;
  tr.L = crum_krein_operator(tr.u, tr.W);
  return tr;
}

GaussFun crum_krein_apply(const TransformResult& tr, const GaussFun& phi) {
  std::vector<GaussFun> bordered = tr.u;
  bordered.push_back(phi);
  return wronskian_any_weight(bordered) / tr.W;
}

std::vector<GaussFun> kernel_functions(const TransformResult& tr) {
  std::vector<GaussFun> out;
  out.reserve(tr.u.size());
  for (size_t k = 0; k < tr.u.size(); ++k) {
    std::vector<GaussFun> rest;
    for (size_t i = 0; i < tr.u.size(); ++i)
      if (i != k) rest.push_back(tr.u[i]);
    GaussFun minor = rest.empty() ? GaussFun(RatFun(1)) : wronskian(rest);
    out.push_back(minor / tr.W);
  }
  return out;
}

DiffOp hamiltonian_polynomial(const DiffOp& h, std::span<const Rational> alphas) {
  DiffOp result = DiffOp::identity();
  for (const auto& alpha : alphas) result = diffop_compose(result, h - DiffOp::multiplication(RatFun(alpha)));
  return result;
}

FactorizationReport factorization_identity_check(const TransformResult& tr) {
  FactorizationReport rep;
  const DiffOp Ldag = diffop_adjoint(tr.L);
  rep.LdagL = diffop_compose(Ldag, tr.L);
  rep.LLdag = diffop_compose(tr.L, Ldag);
  rep.LdagL_residual = rep.LdagL - hamiltonian_polynomial(tr.h0(), tr.selection.alphas);
  rep.LLdag_residual = rep.LLdag - hamiltonian_polynomial(tr.hN(), tr.selection.alphas);
  return rep;
}

}  // namespace darboux
