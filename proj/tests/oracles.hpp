#pragma once

// Test-only reference computations. Nothing here calls into the code path it
// is used to check.

#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "darboux/poly.hpp"

namespace oracle {

// Distinct real roots of p found by sign changes on a fine scan inside the
// Cauchy bound. Adequate when roots are separated by more than `step`.
inline int numeric_root_count(const darboux::Poly& p, double step = 1e-3) {
  const auto c = p.to_double_coeffs();
  const double lead = std::abs(c.back());
  double bound = 0.0;
  for (size_t i = 0; i + 1 < c.size(); ++i) bound = std::max(bound, std::abs(c[i]) / lead);
  bound += 1.0;
  auto eval = [&](double x) {
    double acc = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
    return acc;
  };
  int count = 0;
  double prev = eval(-bound);
  for (double x = -bound + step; x <= bound + step; x += step) {
    const double cur = eval(x);
    if (cur == 0.0) {
      ++count;
      x += step;
      prev = eval(x);
      continue;
    }
    if ((prev < 0) != (cur < 0)) ++count;
    prev = cur;
  }
  return count;
}

// Krein product sign by direct integer multiplication.
inline bool krein_brute_force(const std::vector<int>& levels, int scan_to) {
  for (int k = 0; k <= scan_to; ++k) {
    std::int64_t prod = 1;
    for (int ki : levels) prod *= (k - ki);
    if (prod < 0) return false;
  }
  return true;
}

// Composite trapezoid on a fine uniform grid.
inline double trapezoid(const std::function<double(double)>& f, double a, double b, int n) {
  const double h = (b - a) / n;
  double s = 0.5 * (f(a) + f(b));
  for (int i = 1; i < n; ++i) s += f(a + i * h);
  return s * h;
}

// Central finite difference of order 1.
inline double central_difference(const std::function<double(double)>& f, double x, double h = 1e-5) {
  return (f(x + h) - f(x - h)) / (2 * h);
}

}  // namespace oracle
