#pragma once

// Independent reference computations used only by the tests. Nothing here
// calls into the determinant, solver or optimizer paths under test.

#include <Eigen/Dense>

#include <cmath>
#include <functional>
#include <vector>

namespace oracle {

/// Determinant by recursive Laplace expansion along the first row.
inline double cofactor_determinant(const Eigen::MatrixXd& m) {
  const Eigen::Index n = m.rows();
  if (n == 1) return m(0, 0);
  if (n == 2) return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  double det = 0.0;
  for (Eigen::Index j = 0; j < n; ++j) {
    Eigen::MatrixXd minor(n - 1, n - 1);
    for (Eigen::Index r = 1; r < n; ++r)
      for (Eigen::Index c = 0, cc = 0; c < n; ++c)
        if (c != j) minor(r - 1, cc++) = m(r, c);
    det += ((j % 2) ? -1.0 : 1.0) * m(0, j) * cofactor_determinant(minor);
  }
  return det;
}

/// Unsigned volume of the simplex with vertex columns, via cofactor expansion.
inline double cofactor_volume(const Eigen::MatrixXd& vertices) {
  const Eigen::Index n = vertices.rows();
  Eigen::MatrixXd edges(n, n);
  for (Eigen::Index j = 0; j < n; ++j) edges.col(j) = vertices.col(j) - vertices.col(n);
  double fact = 1.0;
  for (Eigen::Index k = 2; k <= n; ++k) fact *= double(k);
  return std::abs(cofactor_determinant(edges)) / fact;
}

/// Written out independently of the library: (x/(1-x))^n (1-nx).
inline double symmetric_slice(double x, int n) {
  double ratio = 1.0;
  for (int i = 0; i < n; ++i) ratio *= x / (1.0 - x);
  return ratio * (1.0 - n * x);
}

/// Dense grid over (0, 1/n) followed by golden-section refinement around
/// the best grid cell. Returns (argmax, max).
inline std::pair<double, double> grid_golden_max(const std::function<double(double)>& g,
                                                 double lo, double hi, int cells = 100000) {
  const double h = (hi - lo) / cells;
  int best = 1;
  double best_val = -1.0;
  for (int i = 1; i < cells; ++i) {
    const double v = g(lo + i * h);
    if (v > best_val) {
      best_val = v;
      best = i;
    }
  }
  double a = lo + (best - 1) * h, b = lo + (best + 1) * h;
  const double r = (std::sqrt(5.0) - 1.0) / 2.0;
  for (int it = 0; it < 200 && b - a > 1e-15; ++it) {
    const double c = b - r * (b - a), d = a + r * (b - a);
    if (g(c) < g(d))
      a = c;
    else
      b = d;
  }
  const double x = 0.5 * (a + b);
  return {x, g(x)};
}

inline double central_difference(const std::function<double(double)>& g, double x, double h) {
  return (g(x + h) - g(x - h)) / (2.0 * h);
}

} // namespace oracle
