#include "darboux/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "darboux/polycore.hpp"

namespace darboux::spectral {

Grid::Grid(double x_min, double x_max, int n_points) : x_min_(x_min), x_max_(x_max), n_points_(n_points) {
  if (!(x_min < x_max)) throw std::invalid_argument("Grid: x_min must be below x_max");
  if (n_points < 3) throw std::invalid_argument("Grid: need at least 3 points");
}

double TridiagMatrix::norm_inf() const {
  double norm = 0.0;
  const size_t n = size();
  for (size_t i = 0; i < n; ++i) {
    double row = std::abs(diagonal[i]);
    if (i > 0) row += std::abs(off_diagonal[i - 1]);
    if (i + 1 < n) row += std::abs(off_diagonal[i]);
    norm = std::max(norm, row);
  }
  return norm;
}

std::vector<double> TridiagMatrix::multiply(const std::vector<double>& v) const {
  const size_t n = size();
  std::vector<double> out(n);
  for (size_t i = 0; i < n; ++i) {
    double s = diagonal[i] * v[i];
    if (i > 0) s += off_diagonal[i - 1] * v[i - 1];
    if (i + 1 < n) s += off_diagonal[i] * v[i + 1];
    out[i] = s;
  }
  return out;
}

namespace {

void check_pole_free(const Poly& den, const Grid& grid) {
  if (den.degree() <= 0) return;
  if (sturm_root_count_in(den, Rational(grid.x_min()), Rational(grid.x_max())) > 0) throw PoleOnGrid();
}

double horner(const std::vector<double>& c, double x) {
  double acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
  return acc;
}

}  // namespace

GridFunction sample(const RatFun& f, const Grid& grid) {
  check_pole_free(f.den(), grid);
  const auto num = f.num().to_double_coeffs();
  const auto den = f.den().to_double_coeffs();
  GridFunction out;
  out.samples.resize(static_cast<size_t>(grid.size()));
  for (int i = 0; i < grid.size(); ++i) {
    const double x = grid.x(i);
    out.samples[static_cast<size_t>(i)] = horner(num, x) / horner(den, x);
  }
  return out;
}

GridFunction sample(const GaussFun& f, const Grid& grid) {
  GridFunction out = sample(f.r(), grid);
  const double s = f.s().get_d();
  if (s != 0.0) {
    for (int i = 0; i < grid.size(); ++i) {
      const double x = grid.x(i);
      out.samples[static_cast<size_t>(i)] *= std::exp(s * x * x / 4.0);
    }
  }
  return out;
}

TridiagMatrix build_hamiltonian(const GridFunction& V, const Grid& grid) {
  if (V.size() != static_cast<size_t>(grid.size()))
    throw std::invalid_argument("build_hamiltonian: potential does not match the grid");
  const double h = grid.spacing();
  const double inv_h2 = 1.0 / (h * h);
  const size_t n = V.size() - 2;
  TridiagMatrix T;
  T.diagonal.resize(n);
  T.off_diagonal.assign(n - 1, -inv_h2);
  for (size_t i = 0; i < n; ++i) T.diagonal[i] = 2.0 * inv_h2 + V.samples[i + 1];
  return T;
}

int count_below(const TridiagMatrix& T, double lambda) {
  const size_t n = T.size();
  const double tiny = std::numeric_limits<double>::min() * 1e3;
  int count = 0;
  double d = T.diagonal[0] - lambda;
  for (size_t i = 0;; ++i) {
    if (d == 0.0) d = -tiny;
    if (d < 0.0) ++count;
    if (i + 1 == n) break;
    const double b = T.off_diagonal[i];
    d = T.diagonal[i + 1] - lambda - b * b / d;
  }
  return count;
}

std::vector<double> eigenvalues_bisection(const TridiagMatrix& T, int k_lowest, double tol) {
  const int n = static_cast<int>(T.size());
  if (k_lowest < 0 || k_lowest > n) throw std::invalid_argument("eigenvalues_bisection: k out of range");
  // Gershgorin enclosure of the whole spectrum.
  double lo = std::numeric_limits<double>::max();
  double hi = std::numeric_limits<double>::lowest();
  for (int i = 0; i < n; ++i) {
    double r = 0.0;
    if (i > 0) r += std::abs(T.off_diagonal[static_cast<size_t>(i - 1)]);
    if (i + 1 < n) r += std::abs(T.off_diagonal[static_cast<size_t>(i)]);
    lo = std::min(lo, T.diagonal[static_cast<size_t>(i)] - r);
    hi = std::max(hi, T.diagonal[static_cast<size_t>(i)] + r);
  }
  lo -= tol;
  hi += tol;

  std::vector<double> out;
  out.reserve(static_cast<size_t>(k_lowest));
  double floor = lo;
  for (int idx = 0; idx < k_lowest; ++idx) {
    double a = floor;
    double b = hi;
    while (b - a > tol) {
      const double mid = 0.5 * (a + b);
      if (mid == a || mid == b) break;
      if (count_below(T, mid) > idx) b = mid;
      else a = mid;
    }
    const double lambda = 0.5 * (a + b);
    out.push_back(lambda);
    floor = a;
  }
  return out;
}

namespace {

// Solves (T - shift) x = rhs by Gaussian elimination with partial pivoting
// on the tridiagonal band (at most one extra superdiagonal of fill).
std::vector<double> shifted_solve(const TridiagMatrix& T, double shift, std::vector<double> rhs, double eps) {
  const size_t n = T.size();
  std::vector<double> d(n), du(n > 0 ? n - 1 : 0), dl(n > 0 ? n - 1 : 0), du2(n > 1 ? n - 2 : 0, 0.0);
  for (size_t i = 0; i < n; ++i) d[i] = T.diagonal[i] - shift;
  for (size_t i = 0; i + 1 < n; ++i) du[i] = dl[i] = T.off_diagonal[i];

  for (size_t i = 0; i + 1 < n; ++i) {
    if (std::abs(d[i]) >= std::abs(dl[i])) {
      if (d[i] == 0.0) d[i] = eps;
      const double f = dl[i] / d[i];
      d[i + 1] -= f * du[i];
      rhs[i + 1] -= f * rhs[i];
    } else {
      const double f = d[i] / dl[i];
      d[i] = dl[i];
      const double tmp = d[i + 1];
      d[i + 1] = du[i] - f * tmp;
      du[i] = tmp;
      if (i + 2 < n) {
        du2[i] = du[i + 1];
        du[i + 1] = -f * du2[i];
      }
      std::swap(rhs[i], rhs[i + 1]);
      rhs[i + 1] -= f * rhs[i];
    }
  }
  if (d[n - 1] == 0.0) d[n - 1] = eps;

  std::vector<double> x(n);
  for (size_t ii = n; ii-- > 0;) {
    double s = rhs[ii];
    if (ii + 1 < n) s -= du[ii] * x[ii + 1];
    if (ii + 2 < n) s -= du2[ii] * x[ii + 2];
    x[ii] = s / d[ii];
  }
  return x;
}

double norm2(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

}  // namespace

std::vector<double> eigenvector_inverse_iteration(const TridiagMatrix& T, double lambda) {
  const size_t n = T.size();
  if (n == 0) throw std::invalid_argument("eigenvector_inverse_iteration: empty matrix");
  const double tnorm = T.norm_inf();
  const double eps = std::numeric_limits<double>::epsilon() * std::max(tnorm, 1.0);
  constexpr int kMaxIterations = 50;

  std::vector<double> v(n);
  for (size_t i = 0; i < n; ++i) v[i] = 1.0 + 0.01 * std::sin(static_cast<double>(i) + 1.0);
  double nv = norm2(v);
  for (auto& x : v) x /= nv;

  for (int it = 0; it < kMaxIterations; ++it) {
    v = shifted_solve(T, lambda, v, eps);
    nv = norm2(v);
    if (!std::isfinite(nv) || nv == 0.0) throw NonConvergence();
    for (auto& x : v) x /= nv;

    const auto tv = T.multiply(v);
    double rayleigh = 0.0;
    for (size_t i = 0; i < n; ++i) rayleigh += v[i] * tv[i];
    double res = 0.0;
    for (size_t i = 0; i < n; ++i) res += (tv[i] - rayleigh * v[i]) * (tv[i] - rayleigh * v[i]);
    if (std::sqrt(res) <= 1e-8 * tnorm) {
      auto first = std::find_if(v.begin(), v.end(), [](double x) { return std::abs(x) > 1e-8; });
      if (first != v.end() && *first < 0.0)
        for (auto& x : v) x = -x;
      return v;
    }
  }
  throw NonConvergence();
}

GridFunction embed_dirichlet(const std::vector<double>& interior) {
  GridFunction out;
  out.samples.reserve(interior.size() + 2);
  out.samples.push_back(0.0);
  out.samples.insert(out.samples.end(), interior.begin(), interior.end());
  out.samples.push_back(0.0);
  return out;
}

double quadrature_simpson(const GridFunction& f, const Grid& grid) {
  const size_t n = f.size();
  if (n != static_cast<size_t>(grid.size())) throw std::invalid_argument("quadrature_simpson: size mismatch");
  const double h = grid.spacing();
  const size_t m = (n % 2 == 1) ? n : n - 1;
  double sum = f[0] + f[m - 1];
  for (size_t i = 1; i + 1 < m; ++i) sum += (i % 2 == 1 ? 4.0 : 2.0) * f[i];
  double total = sum * h / 3.0;
  if (m != n) total += 0.5 * h * (f[n - 2] + f[n - 1]);
  return total;
}

SpectrumReport verify_spectrum(const SolvableModel& model, const TransformResult& tr, int n_max, const Grid& grid,
                               double deletion_tol) {
  if (n_max < 0) throw std::invalid_argument("verify_spectrum: negative n_max");
  const auto V0 = sample(tr.V0, grid);
  const auto VN = sample(tr.VN, grid);
  const auto T0 = build_hamiltonian(V0, grid);
  const auto TN = build_hamiltonian(VN, grid);

  std::vector<int> kept;
  for (int n = 0; n <= n_max; ++n)
    if (!tr.selection.contains(n)) kept.push_back(n);

  const auto e0 = eigenvalues_bisection(T0, n_max + 1);
  // One extra hN eigenvalue exposes a level that should have been deleted.
  const auto eN = eigenvalues_bisection(TN, static_cast<int>(kept.size()) + 1);

  SpectrumReport rep;
  size_t j = 0;
  for (int n = 0; n <= n_max; ++n) {
    SpectrumRow row;
    row.level = n;
    row.predicted = model.energy(n).get_d();
    row.h0 = e0[static_cast<size_t>(n)];
    row.abs_error = std::abs(row.h0 - row.predicted);
    if (!tr.selection.contains(n)) {
      row.hN = eN[j++];
      row.abs_error = std::max(row.abs_error, std::abs(*row.hN - row.predicted));
    }
    rep.max_error = std::max(rep.max_error, row.abs_error);
    rep.rows.push_back(row);
  }
  for (int k : tr.selection.levels) {
    const double e = model.energy(k).get_d();
    for (double lam : eN)
      if (std::abs(lam - e) <= deletion_tol) rep.spurious = lam;
  }
  return rep;
}

}  // namespace darboux::spectral
