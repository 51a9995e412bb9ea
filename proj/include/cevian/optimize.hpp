#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <vector>

#include "cevian/simplex.hpp"

namespace cevian {

/* The extremal problem for the corner sub-simplex opposite the last foot:
   maximize lambda_{n+1} prod_{i<=n} lambda_i/(1-lambda_i) over the open
   standard simplex, and its one-dimensional reduction on the symmetric slice
   lambda_1 = ... = lambda_n = x.
 */

/// (x/(1-x))^n (1 - n x) on 0 < x < 1/n.
double reduced_objective(double x, int n);

/// Closed-form derivative (x/(1-x))^n * n (x^2 - (n+1)x + 1) / (x (1-x)).
double reduced_objective_prime(double x, int n);

/// Same value as corner_ratio(m, n).
double corner_objective(const BarycentricPoint<double>& m);

template <typename Point>
struct OptimizerResult {
  Point argmax;
  double value = 0.0;
  int iterations = 0;
  int restarts_used = 0;
  bool converged = false;
  /// Scale-free stationarity measure: |d log(objective)| in the search
  /// coordinates, infinity norm.
  double first_order_residual = 0.0;
};

struct CornerSearchResult : OptimizerResult<BarycentricPoint<double>> {
  /// Weights of every distinct endpoint reached by a converged restart.
  std::vector<Eigen::VectorXd> local_maxima;
};

struct SearchOptions {
  int max_iterations = 10000;
  double first_order_tol = 1e-6;
  /// Workers for independent restarts; 0 = hardware concurrency.
  unsigned threads = 1;
};

inline constexpr int kDefaultRestarts = 16;
inline constexpr double kDefaultSearchTol = 1e-10;

/// Golden-section search on (eps, 1/n - eps) followed by bisection on the
/// sign of reduced_objective_prime until the bracket is narrower than tol.
OptimizerResult<double> maximize_reduced(int n, double tol = kDefaultSearchTol,
                                         const SearchOptions& options = {});

/// Multi-start Nelder-Mead on -corner_objective, with the weights
/// parameterized as softmax(u_1, ..., u_n, 0). Restart r draws its start from
/// CounterStream(seed, r). Best value wins; ties go to the lowest restart.
CornerSearchResult maximize_corner(int n, int restarts = kDefaultRestarts,
                                   double tol = kDefaultSearchTol, std::uint64_t seed = 0,
                                   const SearchOptions& options = {});

} // namespace cevian
