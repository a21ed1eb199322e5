#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "darboux/darboux.hpp"

namespace darboux::spectral {

/// Uniform grid on [x_min, x_max] including both end points.
class Grid {
 public:
  Grid(double x_min, double x_max, int n_points);

  /// [-12, 12] with 2401 points, h = 0.01.
  static Grid reference() { return {-12.0, 12.0, 2401}; }

  double x_min() const { return x_min_; }
  double x_max() const { return x_max_; }
  int size() const { return n_points_; }
  double spacing() const { return (x_max_ - x_min_) / (n_points_ - 1); }
  double x(int i) const { return x_min_ + i * spacing(); }

 private:
  double x_min_;
  double x_max_;
  int n_points_;
};

struct GridFunction {
  std::vector<double> samples;

  size_t size() const { return samples.size(); }
  double operator[](size_t i) const { return samples[i]; }
};

/// Symmetric tridiagonal matrix; off_diagonal has size() - 1 entries.
struct TridiagMatrix {
  std::vector<double> diagonal;
  std::vector<double> off_diagonal;

  size_t size() const { return diagonal.size(); }
  double norm_inf() const;
  std::vector<double> multiply(const std::vector<double>& v) const;
};

class PoleOnGrid : public std::domain_error {
 public:
  PoleOnGrid() : std::domain_error("function has a pole on the grid interval") {}
};

class NonConvergence : public std::runtime_error {
 public:
  NonConvergence() : std::runtime_error("inverse iteration did not converge") {}
};

/// Throws PoleOnGrid when the denominator has a root in [x_min, x_max].
GridFunction sample(const RatFun& f, const Grid& grid);
GridFunction sample(const GaussFun& f, const Grid& grid);

/// Second-order finite differences for -d^2 + V on the interior points, with
/// Dirichlet conditions at both ends.
TridiagMatrix build_hamiltonian(const GridFunction& V, const Grid& grid);

/// Number of eigenvalues strictly below lambda (LDL^T inertia).
int count_below(const TridiagMatrix& T, double lambda);

/// The k lowest eigenvalues, ascending, via Sturm-count bisection.
std::vector<double> eigenvalues_bisection(const TridiagMatrix& T, int k_lowest, double tol = 1e-10);

/// Unit 2-norm eigenvector for an eigenvalue near lambda. The first entry with
/// magnitude above 1e-8 is made positive.
std::vector<double> eigenvector_inverse_iteration(const TridiagMatrix& T, double lambda);

/// Interior vector padded with the Dirichlet zeros at both ends.
GridFunction embed_dirichlet(const std::vector<double>& interior);

/// Composite Simpson; an even number of points gets a trapezoid on the last interval.
double quadrature_simpson(const GridFunction& f, const Grid& grid);

struct SpectrumRow {
  int level = 0;
  double predicted = 0.0;
  double h0 = 0.0;
  std::optional<double> hN;  // empty when the level is deleted
  double abs_error = 0.0;
};

struct SpectrumReport {
  std::vector<SpectrumRow> rows;
  double max_error = 0.0;
  // Numeric hN eigenvalue lying within tolerance of a deleted level, if any.
  std::optional<double> spurious;

  bool within(double tol) const { return max_error <= tol && !spurious; }
};

SpectrumReport verify_spectrum(const SolvableModel& model, const TransformResult& tr, int n_max, const Grid& grid,
                               double deletion_tol = 5e-3);

}  // namespace darboux::spectral
