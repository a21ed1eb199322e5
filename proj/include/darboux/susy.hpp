#pragma once

#include <map>
#include <optional>
#include <set>
#include <span>
#include <vector>

#include "darboux/darboux.hpp"

namespace darboux {

/// Two-component state (upper in the h0 sector, lower in the hN sector).
struct Doublet {
  GaussFun upper;
  GaussFun lower;
  std::optional<Rational> energy;

  bool is_zero() const { return upper.is_zero() && lower.is_zero(); }
  friend bool operator==(const Doublet& a, const Doublet& b) { return a.upper == b.upper && a.lower == b.lower; }
};

enum class Degeneracy { Singlet, Doublet };

struct SusyClassification {
  std::set<int> n0;
  int vacuum_level = 0;
  Rational vacuum_energy;
  std::map<int, Degeneracy> tags;  // levels 0..n_max
  std::set<int> below_vacuum;
  // L phi_i vanishes exactly for i in n0 and nowhere else on 0..n_max.
  bool constructive_agrees = false;
};

/// Throws InadmissibleSelection, or std::invalid_argument if n_max < max(sel).
SusyClassification classify(const SolvableModel& model, const LevelSelection& sel, int n_max);

enum class Supercharge { Q, QDagger };

/// Q (phi, psi) = (0, L phi); Q^dagger (phi, psi) = (L^dagger psi, 0).
Doublet supercharge_apply(Supercharge side, const TransformResult& tr, const Doublet& state);

struct AnticommutatorEntry {
  int level = 0;
  Rational energy;
  Rational factor;             // prod_i (E - alpha_i)
  bool lower_exists = false;   // L phi_level != 0
  bool upper_holds = false;    // {Q,Q^dagger}(phi, 0) = factor (phi, 0)
  bool lower_holds = false;    // {Q,Q^dagger}(0, L phi) = factor (0, L phi)
  bool intertwining_holds = false;  // (hN - E) L phi = 0

  bool ok() const { return upper_holds && lower_holds && intertwining_holds; }
};

/// Checks the superalgebra on eigen-doublets built from the model levels.
std::vector<AnticommutatorEntry> anticommutator_check(const SolvableModel& model, const TransformResult& tr,
                                                      std::span<const int> levels);

}  // namespace darboux
