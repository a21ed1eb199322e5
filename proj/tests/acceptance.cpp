// Acceptance suite: one line per criterion, nonzero exit if any fails.

#include <Eigen/Dense>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <set>
#include <random>
#include <sstream>
#include <string>

#include "darboux/darboux.hpp"
#include "darboux/oscillator.hpp"
#include "darboux/spectral.hpp"
#include "darboux/susy.hpp"

using namespace darboux;
namespace sp = darboux::spectral;

namespace {

// Pinned thresholds.
constexpr double kFactorizationSeconds = 5.0;
constexpr double kDeletionSeconds = 10.0;
constexpr double kEigenvalueTol = 5e-3;
constexpr double kNormTol = 1e-4;
constexpr double kNormTransportRelTol = 1e-6;
constexpr double kDenseOracleTol = 1e-9;
constexpr double kConvergenceRatio = 4.0;
constexpr double kConvergenceRatioTol = 0.4;

const OscillatorModel kModel;

TransformResult transform(std::vector<int> levels) {
  return build_transform(kModel, LevelSelection::from_levels(kModel, std::move(levels)));
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      if (pass) detail << "first failure: " << what << "; ";
      pass = false;
    }
  }
};

int failures = 0;

void criterion(const char* id, const char* title, const std::function<void(Outcome&)>& body) {
  Outcome o;
  try {
    body(o);
  } catch (const std::exception& e) {
    o.pass = false;
    o.detail << "exception: " << e.what();
  }
  if (!o.pass) ++failures;
  std::printf("[%s] %s %s -- %s\n", o.pass ? "PASS" : "FAIL", id, title, o.detail.str().c_str());
  std::fflush(stdout);
}

std::vector<double> lowest(const RatFun& V, const sp::Grid& grid, int k) {
  return sp::eigenvalues_bisection(sp::build_hamiltonian(sp::sample(V, grid), grid), k);
}

double integral_of_square(sp::GridFunction f, const sp::Grid& grid, double scale = 1.0) {
  for (auto& v : f.samples) v = (scale * v) * (scale * v);
  return sp::quadrature_simpson(f, grid);
}

RatFun random_ratfun(std::mt19937& rng) {
  std::uniform_int_distribution<int> c(-3, 3);
  auto poly = [&](int deg) {
    std::vector<Rational> v;
    for (int i = 0; i <= deg; ++i) v.emplace_back(c(rng));
    return Poly(v);
  };
  Poly den = poly(1);
  return ratfun_reduce(poly(2), den * den + Poly{1});
}

DiffOp random_op(std::mt19937& rng, int max_order) {
  std::uniform_int_distribution<int> ord(0, max_order);
  std::vector<RatFun> coeffs;
  const int n = ord(rng);
  for (int j = 0; j <= n; ++j) coeffs.push_back(random_ratfun(rng));
  return DiffOp(coeffs);
}

}  // namespace

int main() {
  const sp::Grid grid = sp::Grid::reference();

  criterion("AC1", "exact factorization L^+L and LL^+", [](Outcome& o) {
    const auto t0 = std::chrono::steady_clock::now();
    for (auto levels : std::vector<std::vector<int>>{{0, 1}, {1, 2}, {2, 3}, {3, 4}, {1, 2, 5, 6}}) {
      const auto rep = factorization_identity_check(transform(levels));
      o.require(rep.LdagL_exact(), "L^+L residual nonzero");
      o.require(rep.LLdag_exact(), "LL^+ residual nonzero");
    }
    const double secs = seconds_since(t0);
    o.require(secs < kFactorizationSeconds, "runtime budget");
    o.detail << "5 selections, zero residual operators, " << secs << " s (< " << kFactorizationSeconds << " s)";
  });

  criterion("AC2", "golden closed-form match for k = 0..4", [](Outcome& o) {
    o.require(jk_polynomial(0) == Poly{1}, "J_0");
    o.require(jk_polynomial(1) == Poly{1, 0, 1}, "J_1");
    o.require(jk_polynomial(2) == Poly{3, 0, 0, 0, 1}, "J_2");
    for (int k = 0; k <= 4; ++k) {
      const auto tr = transform({k, k + 1});
      o.require(tr.VN == v2_closed_form(k), "V_N vs closed form at k=" + std::to_string(k));
      const Poly jk = jk_polynomial(k);
      const RatFun& w = tr.W.r();
      const bool prop = w.is_polynomial() && w.num().degree() == jk.degree() &&
                        w.num() == jk * (w.num().leading() / jk.leading());
      o.require(prop, "W not proportional to J_k at k=" + std::to_string(k));
    }
    o.detail << "V_N == closed form and W poly part ~ J_k, exact";
  });

  criterion("AC3", "kernel identities L phi_k = 0, L^+ v_k = 0, (hN - alpha_k) v_k = 0", [](Outcome& o) {
    int count = 0;
    for (auto levels : std::vector<std::vector<int>>{{0}, {0, 1}, {1, 2}, {2, 3}, {3, 4}, {1, 2, 5, 6}}) {
      const auto tr = transform(levels);
      const DiffOp ldag = diffop_adjoint(tr.L);
      for (int k : levels) o.require(diffop_apply(tr.L, kModel.eigenfunction(k)).is_zero(), "L phi_k");
      const auto v = kernel_functions(tr);
      for (size_t k = 0; k < v.size(); ++k) {
        o.require(diffop_apply(ldag, v[k]).is_zero(), "L^+ v_k");
        o.require((diffop_apply(tr.hN(), v[k]) - RatFun(tr.selection.alphas[k]) * v[k]).is_zero(), "hN v_k");
        ++count;
      }
    }
    o.detail << count << " kernel functions verified exactly";
  });

  criterion("AC4", "numeric level deletion for k = 1 on the reference grid", [&](Outcome& o) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto tr = transform({1, 2});
    const auto eN = lowest(tr.VN, grid, 8);
    const auto e0 = lowest(tr.V0, grid, 8);
    const double expectedN[] = {0, 3, 4, 5, 6, 7, 8, 9};
    double worst = 0;
    for (size_t i = 0; i < 8; ++i) {
      worst = std::max(worst, std::abs(eN[i] - expectedN[i]));
      worst = std::max(worst, std::abs(e0[i] - static_cast<double>(i)));
    }
    const double secs = seconds_since(t0);
    o.require(worst <= kEigenvalueTol, "eigenvalue tolerance");
    o.require(secs < kDeletionSeconds, "runtime budget");
    o.detail << "max abs error " << worst << " (<= " << kEigenvalueTol << "), " << secs << " s";
  });

  criterion("AC5", "normalization and norm transport for k = 1", [&](Outcome& o) {
    const auto tr = transform({1, 2});
    double worst_norm = 0;
    double worst_transport = 0;
    for (int n : {0, 3, 4}) {
      const auto psi = psi_closed_form(1, n);
      const double norm = integral_of_square(sp::sample(psi.bracket, grid), grid, psi.normalization());
      worst_norm = std::max(worst_norm, std::abs(norm - 1.0));

      const GaussFun phi = kModel.eigenfunction(n);
      const double ratio = integral_of_square(sp::sample(diffop_apply(tr.L, phi), grid), grid) /
                           integral_of_square(sp::sample(phi, grid), grid);
      const double expected = (n - 1.0) * (n - 2.0);
      worst_transport = std::max(worst_transport, std::abs(ratio - expected) / expected);
    }
    o.require(worst_norm <= kNormTol, "closed-form normalization");
    o.require(worst_transport <= kNormTransportRelTol, "norm transport");
    o.detail << "max |int psi^2 - 1| = " << worst_norm << ", max relative transport error " << worst_transport;
  });

  criterion("AC6", "SUSY classification for k = 1", [](Outcome& o) {
    const auto sel = LevelSelection::from_levels(kModel, {1, 2});
    const auto c = classify(kModel, sel, 6);
    o.require(c.vacuum_energy == 1, "vacuum energy");
    std::set<int> singlets;
    for (const auto& [level, tag] : c.tags)
      if (tag == Degeneracy::Singlet) singlets.insert(level);
    o.require(singlets == std::set<int>{1, 2}, "singlets");
    o.require(c.tags.at(0) == Degeneracy::Doublet, "level 0 doublet");
    o.require(c.below_vacuum == std::set<int>{0}, "below vacuum");
    o.require(c.constructive_agrees, "constructive confirmation");
    const auto tr = build_transform(kModel, sel);
    const std::vector<int> ground{0};
    const auto e = anticommutator_check(kModel, tr, ground);
    o.require(e[0].factor == 2 && e[0].ok(), "anticommutator factor on E=0");
    o.detail << "vacuum 1, singlets {1,2}, below vacuum {0}, {Q,Q^+} factor " << e[0].factor.get_str();
  });

  criterion("AC7", "Krein scan agrees with Sturm nodelessness on subsets of {0..6}", [](Outcome& o) {
    int tested = 0;
    int admissible = 0;
    for (int mask = 1; mask < (1 << 7); ++mask) {
      std::vector<int> levels;
      for (int i = 0; i < 7; ++i)
        if (mask & (1 << i)) levels.push_back(i);
      if (levels.size() > 4) continue;
      ++tested;
      const bool krein = !krein_violation(levels).has_value();
      std::vector<GaussFun> u;
      for (int k : levels) u.push_back(kModel.eigenfunction(k));
      const bool nodeless = sturm_real_root_count(wronskian(u).r().num()) == 0;
      o.require(krein == nodeless, "disagreement");
      bool built = false;
      try {
        build_transform(kModel, LevelSelection::from_levels(kModel, levels));
        built = true;
      } catch (const InadmissibleSelection&) {
      }
      o.require(built == krein, "build_transform admissibility");
      if (krein) ++admissible;
    }
    for (int j = 1; j <= 6; ++j) {
      bool rejected = false;
      try {
        transform({j});
      } catch (const InadmissibleSelection&) {
        rejected = true;
      }
      o.require(rejected, "singleton accepted");
    }
    o.detail << tested << " subsets, " << admissible << " admissible, all in agreement; singletons {1..6} rejected";
  });

  criterion("AC8", "property suites", [](Outcome& o) {
    std::mt19937 rng(8);
    const std::vector<std::vector<int>> admissible{{0}, {0, 1}, {1, 2}, {2, 3}, {0, 1, 2}, {1, 2, 5, 6}, {0, 3, 4}};
    std::uniform_int_distribution<size_t> pick(0, admissible.size() - 1);
    std::uniform_int_distribution<int> level(0, 9);
    for (int trial = 0; trial < 20; ++trial) {
      const auto tr = transform(admissible[pick(rng)]);
      const GaussFun f = kModel.eigenfunction(level(rng));
      o.require(crum_krein_apply(tr, f) == diffop_apply(tr.L, f), "bordered Wronskian vs minors");
    }
    for (int trial = 0; trial < 15; ++trial) {
      const DiffOp a = random_op(rng, 3);
      const DiffOp b = random_op(rng, 3);
      o.require(diffop_adjoint(diffop_adjoint(a)) == a, "adjoint involution");
      o.require(diffop_adjoint(diffop_compose(a, b)) == diffop_compose(diffop_adjoint(b), diffop_adjoint(a)),
                "adjoint anti-homomorphism");
    }
    std::uniform_real_distribution<double> u(-5.0, 5.0);
    double worst_dense = 0;
    for (int trial = 0; trial < 20; ++trial) {
      sp::TridiagMatrix T;
      Eigen::MatrixXd m = Eigen::MatrixXd::Zero(20, 20);
      for (int i = 0; i < 20; ++i) {
        T.diagonal.push_back(u(rng));
        m(i, i) = T.diagonal.back();
      }
      for (int i = 0; i < 19; ++i) {
        T.off_diagonal.push_back(u(rng));
        m(i, i + 1) = m(i + 1, i) = T.off_diagonal.back();
      }
      const auto ours = sp::eigenvalues_bisection(T, 20);
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
      for (int i = 0; i < 20; ++i)
        worst_dense = std::max(worst_dense, std::abs(ours[static_cast<size_t>(i)] - solver.eigenvalues()(i)));
    }
    o.require(worst_dense <= kDenseOracleTol, "dense oracle");

    const sp::Grid coarse(-12.0, 12.0, 241);
    const sp::Grid fine(-12.0, 12.0, 481);
    const auto ec = lowest(kModel.potential(), coarse, 4);
    const auto ef = lowest(kModel.potential(), fine, 4);
    double worst_ratio_dev = 0;
    for (int n = 0; n < 4; ++n) {
      const double ratio = std::abs(ec[static_cast<size_t>(n)] - n) / std::abs(ef[static_cast<size_t>(n)] - n);
      worst_ratio_dev = std::max(worst_ratio_dev, std::abs(ratio - kConvergenceRatio));
    }
    o.require(worst_ratio_dev <= kConvergenceRatioTol, "second-order convergence");
    o.detail << "20 bordered/minor pairs exact, 15 random adjoint pairs, dense oracle max dev " << worst_dense
             << ", convergence ratio within " << worst_ratio_dev << " of 4";
  });

  std::printf("%s: %d criteria failed\n", failures == 0 ? "ACCEPTED" : "REJECTED", failures);
  return failures == 0 ? 0 : 1;
}
