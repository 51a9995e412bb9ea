#include "cevian/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "cevian/errors.hpp"
#include "cevian/parallel.hpp"
#include "cevian/random.hpp"
#include "cevian/ratios.hpp"

namespace cevian {
namespace {

constexpr double kDomainMargin = 1e-12;
constexpr double kGoldenBracket = 1e-6;
constexpr double kInitialStep = 0.5;
constexpr double kRefreshStep = 0.05;
constexpr double kDistinctRadius = 1e-4;
constexpr double kRefreshGain = 1e-14;
constexpr int kMaxRefreshes = 20;

void check_reduced_domain(double x, int n, const char* what) {
  detail::require_dimension(n, 1, what);
  if (!(x > 0.0 && x < 1.0 / n))
    throw OutOfDomain(std::string(what) + ": x = " + std::to_string(x) +
                      " outside (0, 1/n)");
}

Eigen::VectorXd softmax_weights(const Eigen::VectorXd& free) {
  const Eigen::Index n = free.size();
  Eigen::VectorXd u(n + 1);
  u << free, 0.0;
  u.array() -= u.maxCoeff();
  Eigen::VectorXd w = u.array().exp();
  return w / w.sum();
}

/// lambda_n * prod_{i<n} lambda_i/(1-lambda_i); zero outside the open simplex.
double corner_value(const Eigen::VectorXd& w) {
  const Eigen::Index n = w.size() - 1;
  double value = w[n];
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!(w[i] > 0.0 && w[i] < 1.0)) return 0.0;
    value *= w[i] / (1.0 - w[i]);
  }
  return std::isfinite(value) && value > 0.0 ? value : 0.0;
}

/// Infinity norm of the gradient of log corner_value with respect to the
/// free softmax coordinates.
double corner_log_gradient(const Eigen::VectorXd& w) {
  const Eigen::Index n = w.size() - 1;
  double worst = 0.0;
  for (Eigen::Index k = 0; k < n; ++k) {
    double g = 1.0 - double(n + 1) * w[k];
    for (Eigen::Index i = 0; i < n; ++i)
      g += w[i] * ((i == k ? 1.0 : 0.0) - w[k]) / (1.0 - w[i]);
    worst = std::max(worst, std::abs(g));
  }
  return worst;
}

struct LocalRun {
  Eigen::VectorXd free;
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
  double residual = std::numeric_limits<double>::infinity();
};

/// Nelder-Mead minimization of -corner_value, refreshed around the incumbent
/// whenever the simplex collapses, until a refresh brings no improvement.
LocalRun nelder_mead(Eigen::VectorXd start, double tol, int max_iterations) {
  const Eigen::Index dim = start.size();
  auto cost = [](const Eigen::VectorXd& u) { return -corner_value(softmax_weights(u)); };

  std::vector<Eigen::VectorXd> pts(dim + 1);
  std::vector<double> vals(dim + 1);
  auto seed_simplex = [&](const Eigen::VectorXd& center, double step) {
    pts[0] = center;
    vals[0] = cost(center);
    for (Eigen::Index i = 0; i < dim; ++i) {
      pts[i + 1] = center;
      pts[i + 1][i] += step;
      vals[i + 1] = cost(pts[i + 1]);
    }
  };

  LocalRun run;
  seed_simplex(start, kInitialStep);
  std::vector<std::size_t> order(dim + 1);
  double best_before_refresh = std::numeric_limits<double>::infinity();
  int refreshes = 0;

  while (run.iterations < max_iterations) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
    const std::size_t best = order.front();
    const std::size_t worst = order.back();
    const std::size_t second_worst = order[dim - 1];

    double diameter = 0.0;
    for (const auto& p : pts) diameter = std::max(diameter, (p - pts[best]).cwiseAbs().maxCoeff());
    if (diameter <= tol) {
      const bool improved =
          vals[best] < best_before_refresh - kRefreshGain * std::abs(best_before_refresh);
      if (improved && refreshes++ < kMaxRefreshes) {
        best_before_refresh = vals[best];
        const Eigen::VectorXd center = pts[best];
        seed_simplex(center, kRefreshStep);
        continue;
      }
      run.converged = true;
      break;
    }
    ++run.iterations;

    Eigen::VectorXd centroid = Eigen::VectorXd::Zero(dim);
    for (std::size_t i = 0; i <= std::size_t(dim); ++i)
      if (i != worst) centroid += pts[i];
    centroid /= double(dim);

    const Eigen::VectorXd reflected = centroid + (centroid - pts[worst]);
    const double f_reflected = cost(reflected);
    if (f_reflected < vals[best]) {
      const Eigen::VectorXd expanded = centroid + 2.0 * (centroid - pts[worst]);
      const double f_expanded = cost(expanded);
      if (f_expanded < f_reflected) {
        pts[worst] = expanded;
        vals[worst] = f_expanded;
      } else {
        pts[worst] = reflected;
        vals[worst] = f_reflected;
      }
      continue;
    }
    if (f_reflected < vals[second_worst]) {
      pts[worst] = reflected;
      vals[worst] = f_reflected;
      continue;
    }
    const bool outside = f_reflected < vals[worst];
    const Eigen::VectorXd contracted =
        outside ? Eigen::VectorXd(centroid + 0.5 * (reflected - centroid))
                : Eigen::VectorXd(centroid + 0.5 * (pts[worst] - centroid));
    const double f_contracted = cost(contracted);
    if (f_contracted < (outside ? f_reflected : vals[worst])) {
      pts[worst] = contracted;
      vals[worst] = f_contracted;
      continue;
    }
    for (std::size_t i = 0; i <= std::size_t(dim); ++i) {
      if (i == best) continue;
      pts[i] = pts[best] + 0.5 * (pts[i] - pts[best]);
      vals[i] = cost(pts[i]);
    }
  }

  const auto best_it = std::min_element(vals.begin(), vals.end());
  run.free = pts[std::size_t(best_it - vals.begin())];
  run.value = -*best_it;
  run.residual = corner_log_gradient(softmax_weights(run.free));
  return run;
}

} // namespace

double reduced_objective(double x, int n) {
  check_reduced_domain(x, n, "reduced_objective");
  return std::pow(x / (1.0 - x), n) * (1.0 - n * x);
}

double reduced_objective_prime(double x, int n) {
  check_reduced_domain(x, n, "reduced_objective_prime");
  const double quadratic = x * x - (n + 1.0) * x + 1.0;
  return std::pow(x / (1.0 - x), n) * n * quadratic / (x * (1.0 - x));
}

double corner_objective(const BarycentricPoint<double>& m) { return corner_ratio(m, m.dim()); }

OptimizerResult<double> maximize_reduced(int n, double tol, const SearchOptions& options) {
  detail::require_dimension(n, 2, "maximize_reduced");
  if (!(tol > 0.0)) throw OutOfDomain("maximize_reduced: tol must be positive");

  const double domain_lo = kDomainMargin;
  const double domain_hi = 1.0 / n - kDomainMargin;
  auto f = [n](double x) { return reduced_objective(x, n); };
  auto slope = [n](double x) { return reduced_objective_prime(x, n); };

  OptimizerResult<double> result;
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = domain_lo, b = domain_hi;
  double c = b - inv_phi * (b - a), d = a + inv_phi * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > std::max(tol, kGoldenBracket)) {
    if (++result.iterations > options.max_iterations)
      throw ConvergenceFailure("maximize_reduced: golden-section iteration cap reached");
    if (fc < fd) {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    } else {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    }
  }

  // Widen until the slope changes sign across the bracket.
  double width = b - a;
  while (!(slope(a) > 0.0 && slope(b) < 0.0)) {
    if (++result.iterations > options.max_iterations)
      throw ConvergenceFailure("maximize_reduced: could not bracket the stationary point");
    width *= 2.0;
    if (!(slope(a) > 0.0)) a = std::max(domain_lo, a - width);
    if (!(slope(b) < 0.0)) b = std::min(domain_hi, b + width);
  }

  while (b - a > tol) {
    if (++result.iterations > options.max_iterations)
      throw ConvergenceFailure("maximize_reduced: bisection iteration cap reached");
    const double mid = 0.5 * (a + b);
    if (mid <= a || mid >= b) break;
    const double s = slope(mid);
    if (s > 0.0)
      a = mid;
    else if (s < 0.0)
      b = mid;
    else {
      a = b = mid;
    }
  }

  result.argmax = 0.5 * (a + b);
  result.value = f(result.argmax);
  result.restarts_used = 1;
  result.first_order_residual = std::abs(slope(result.argmax)) / result.value;
  result.converged = result.first_order_residual <= options.first_order_tol;
  if (!result.converged)
    throw ConvergenceFailure("maximize_reduced: first-order residual " +
                             std::to_string(result.first_order_residual) + " above tolerance");
  return result;
}

CornerSearchResult maximize_corner(int n, int restarts, double tol, std::uint64_t seed,
                                   const SearchOptions& options) {
  detail::require_dimension(n, 2, "maximize_corner");
  if (restarts < 1) throw OutOfDomain("maximize_corner: restarts must be >= 1");
  if (!(tol > 0.0)) throw OutOfDomain("maximize_corner: tol must be positive");

  std::vector<LocalRun> runs(static_cast<std::size_t>(restarts));
  detail::parallel_for(runs.size(), options.threads, [&](std::size_t r) {
    CounterStream stream(seed, r);
    Eigen::VectorXd start(n);
    for (int i = 0; i < n; ++i) start[i] = stream.uniform(-1.0, 1.0);
    LocalRun run = nelder_mead(std::move(start), tol, options.max_iterations);
    run.converged = run.converged && run.residual <= options.first_order_tol;
    runs[r] = std::move(run);
  });

  std::size_t chosen = runs.size();
  for (std::size_t r = 0; r < runs.size(); ++r) {
    if (!runs[r].converged) continue;
    if (chosen == runs.size() || runs[r].value > runs[chosen].value) chosen = r;
  }
  if (chosen == runs.size())
    throw ConvergenceFailure("maximize_corner: no restart converged");

  const LocalRun& best = runs[chosen];
  CornerSearchResult result{{BarycentricPoint<double>(softmax_weights(best.free), 0.0)}, {}};
  result.value = corner_value(result.argmax.weights());
  result.iterations = best.iterations;
  result.restarts_used = restarts;
  result.converged = true;
  result.first_order_residual = best.residual;

  for (const LocalRun& run : runs) {
    if (!run.converged) continue;
    const Eigen::VectorXd w = softmax_weights(run.free);
    const bool seen = std::any_of(result.local_maxima.begin(), result.local_maxima.end(),
                                  [&](const Eigen::VectorXd& other) {
                                    return (other - w).cwiseAbs().maxCoeff() <= kDistinctRadius;
                                  });
    if (!seen) result.local_maxima.push_back(w);
  }
  return result;
}

} // namespace cevian
