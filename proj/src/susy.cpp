#include "darboux/susy.hpp"

#include <algorithm>

namespace darboux {

SusyClassification classify(const SolvableModel& model, const LevelSelection& sel, int n_max) {
  if (sel.levels.empty()) throw std::invalid_argument("classify: empty selection");
  if (n_max < sel.levels.back()) throw std::invalid_argument("classify: n_max below the highest selected level");
  const TransformResult tr = build_transform(model, sel);

  SusyClassification out;
  out.n0.insert(sel.levels.begin(), sel.levels.end());
  out.vacuum_level = *std::min_element(sel.levels.begin(), sel.levels.end(),
                                       [&](int a, int b) { return model.energy(a) < model.energy(b); });
  out.vacuum_energy = model.energy(out.vacuum_level);

  out.constructive_agrees = true;
  for (int n = 0; n <= n_max; ++n) {
    const Degeneracy tag = out.n0.count(n) ? Degeneracy::Singlet : Degeneracy::Doublet;
    out.tags[n] = tag;
    if (model.energy(n) < out.vacuum_energy) out.below_vacuum.insert(n);
    const bool annihilated = diffop_apply(tr.L, model.eigenfunction(n)).is_zero();
    if (annihilated != (tag == Degeneracy::Singlet)) out.constructive_agrees = false;
  }
  return out;
}

Doublet supercharge_apply(Supercharge side, const TransformResult& tr, const Doublet& state) {
  Doublet out;
  out.energy = state.energy;
  if (side == Supercharge::Q) {
    out.lower = diffop_apply(tr.L, state.upper);
  } else {
    out.upper = diffop_apply(diffop_adjoint(tr.L), state.lower);
  }
  return out;
}

std::vector<AnticommutatorEntry> anticommutator_check(const SolvableModel& model, const TransformResult& tr,
                                                      std::span<const int> levels) {
  const DiffOp Ldag = diffop_adjoint(tr.L);
  const DiffOp hN = tr.hN();
  std::vector<AnticommutatorEntry> out;
  out.reserve(levels.size());
  for (int n : levels) {
    AnticommutatorEntry e;
    e.level = n;
    e.energy = model.energy(n);
    e.factor = 1;
    for (const auto& a : tr.selection.alphas) e.factor *= e.energy - a;

    const GaussFun phi = model.eigenfunction(n);
    const GaussFun psi = diffop_apply(tr.L, phi);
    e.lower_exists = !psi.is_zero();

    // {Q, Q^dagger} = diag(L^dagger L, L L^dagger)
    const RatFun f(e.factor);
    e.upper_holds = diffop_apply(Ldag, psi) == f * phi;
    e.lower_holds = diffop_apply(tr.L, diffop_apply(Ldag, psi)) == f * psi;
    e.intertwining_holds = (diffop_apply(hN, psi) - RatFun(e.energy) * psi).is_zero();
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace darboux
