#include "cevian/harness.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstring>
#include <limits>

#include "cevian/parallel.hpp"
#include "cevian/ratios.hpp"

namespace cevian {
namespace {

constexpr int kMaxRejections = 1000;
constexpr double kMinAffineDeterminant = 1e-6;

struct TrialOutcome {
  double margin = 0.0;
  double observed = 0.0;
  std::string digest;
  std::string error;
};

double relative_error(double value, double reference) {
  return std::abs(value - reference) / std::abs(reference);
}

template <typename Derived>
double volume_ratio(const Eigen::MatrixBase<Derived>& vertices, double base) {
  return simplex_volume(vertices) / base;
}

void mix_bytes(std::uint64_t& h, const double* data, std::size_t count) {
  const auto* bytes = reinterpret_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < count * sizeof(double); ++i) {
    h ^= bytes[i];
    h *= 0x100000001B3ULL;
  }
}

double inverse_condition_of(const Eigen::MatrixXd& m) {
  const Eigen::VectorXd sv = Eigen::JacobiSVD<Eigen::MatrixXd>(m).singularValues();
  return sv[sv.size() - 1] / sv[0];
}

TrialOutcome evaluate(const TrialPlan& plan, const TrialInputs& in) {
  const int n = plan.n;
  const auto config = build_configuration(in.simplex, in.point);
  const double base = volume(in.simplex);
  TrialOutcome out;

  switch (plan.suite) {
  case Suite::theorem1: {
    const double bound = theorem1_bound(n);
    const double det = volume_ratio(config.feet_cart, base);
    out.observed = det;
    out.margin = std::max(det, cevian_ratio(in.point)) - bound - plan.tol;
    break;
  }
  case Suite::theorem2: {
    const double bound = theorem2_value(n);
    const double det = volume_ratio(corner_simplex_vertices(config, n), base);
    out.observed = det;
    out.margin = std::max(det, corner_ratio(in.point, n)) - bound - plan.tol;
    break;
  }
  case Suite::eq2: {
    double worst = 0.0;
    for (int k = 0; k <= n; ++k) {
      const double det = volume_ratio(corner_simplex_vertices(config, k), base);
      worst = std::max(worst, relative_error(det, corner_ratio(in.point, k)));
    }
    out.observed = worst;
    out.margin = worst - plan.tol;
    break;
  }
  case Suite::decomposition: {
    double closed_sum = 0.0, det_sum = 0.0;
    for (int k = 0; k <= n; ++k) {
      closed_sum += corner_ratio(in.point, k);
      det_sum += volume_ratio(corner_simplex_vertices(config, k), base);
    }
    const double closed_err = relative_error(closed_sum, cevian_ratio(in.point));
    const double det_err = relative_error(det_sum, volume_ratio(config.feet_cart, base));
    out.observed = std::max(closed_err, det_err);
    out.margin = std::max(closed_err - plan.tol, det_err - plan.oracle_tol);
    break;
  }
  case Suite::moebius: {
    const auto areas = moebius_areas(config);
    out.observed = std::abs(moebius_residual(areas)) / std::pow(areas.S, 3);
    out.margin = out.observed - plan.tol;
    break;
  }
  case Suite::segment_ratio: {
    out.observed = std::max(config.segment_ratio_error(), config.collinearity_error());
    out.margin = out.observed - plan.tol;
    break;
  }
  case Suite::affine: {
    const Eigen::MatrixXd mapped_vertices =
        (in.linear * in.simplex.vertices()).colwise() + in.shift;
    const auto mapped = build_configuration(CartesianSimplex<double>(mapped_vertices), in.point);
    const double mapped_base = volume(mapped.simplex);
    double worst = relative_error(volume_ratio(mapped.feet_cart, mapped_base),
                                  volume_ratio(config.feet_cart, base));
    for (int k = 0; k <= n; ++k)
      worst = std::max(worst,
                       relative_error(volume_ratio(corner_simplex_vertices(mapped, k), mapped_base),
                                      volume_ratio(corner_simplex_vertices(config, k), base)));
    out.observed = worst;
    out.margin = worst - plan.tol;
    break;
  }
  }
  if (!std::isfinite(out.margin)) {
    out.margin = std::numeric_limits<double>::infinity();
    out.error = "non-finite comparison";
  }
  return out;
}

double suite_bound(const TrialPlan& plan) {
  switch (plan.suite) {
  case Suite::theorem1:
    return theorem1_bound(plan.n);
  case Suite::theorem2:
    return theorem2_value(plan.n);
  default:
    return plan.tol;
  }
}

} // namespace

std::string_view suite_name(Suite suite) {
  switch (suite) {
  case Suite::theorem1:
    return "theorem1";
  case Suite::theorem2:
    return "theorem2";
  case Suite::eq2:
    return "eq2";
  case Suite::decomposition:
    return "decomposition";
  case Suite::moebius:
    return "moebius";
  case Suite::affine:
    return "affine";
  case Suite::segment_ratio:
    return "segment_ratio";
  }
  return "unknown";
}

const std::vector<Suite>& all_suites() {
  static const std::vector<Suite> suites{Suite::theorem1, Suite::theorem2,    Suite::eq2,
                                         Suite::decomposition, Suite::moebius, Suite::affine,
                                         Suite::segment_ratio};
  return suites;
}

std::optional<Suite> parse_suite(std::string_view name) {
  for (Suite s : all_suites())
    if (suite_name(s) == name) return s;
  return std::nullopt;
}

double default_tolerance(Suite suite) {
  switch (suite) {
  case Suite::theorem1:
  case Suite::theorem2:
  case Suite::decomposition:
    return 1e-12;
  case Suite::moebius:
    return 1e-10;
  case Suite::eq2:
  case Suite::affine:
  case Suite::segment_ratio:
    return 1e-9;
  }
  return 1e-9;
}

TrialPlan make_plan(Suite suite, int n, std::int64_t trials, std::uint64_t seed) {
  TrialPlan plan;
  plan.suite = suite;
  plan.n = n;
  plan.trials = trials;
  plan.seed = seed;
  plan.tol = default_tolerance(suite);
  return plan;
}

void validate(const TrialPlan& plan) {
  if (plan.n < 2) throw InvalidPlan("plan: n must be >= 2");
  if (plan.suite == Suite::moebius && plan.n != 2)
    throw InvalidPlan("plan: the moebius suite requires n = 2");
  if (plan.trials < 1) throw InvalidPlan("plan: trials must be >= 1");
  if (!(plan.tol > 0.0) || !std::isfinite(plan.tol)) throw InvalidPlan("plan: tol must be > 0");
  if (!(plan.oracle_tol > 0.0)) throw InvalidPlan("plan: oracle_tol must be > 0");
  if (!(plan.min_inverse_condition >= 0.0 && plan.min_inverse_condition < 1.0))
    throw InvalidPlan("plan: min_inverse_condition must lie in [0, 1)");
  if (!(plan.min_weight >= 0.0 && plan.min_weight < 1.0 / (plan.n + 1)))
    throw InvalidPlan("plan: min_weight must lie in [0, 1/(n+1))");
}

BarycentricPoint<double> sample_interior(int n, CounterStream& stream, double min_weight) {
  detail::require_dimension(n, 2, "sample_interior");
  const double floor = std::max(min_weight, kBoundaryEpsilon);
  Eigen::VectorXd w(n + 1);
  for (;;) {
    for (int i = 0; i <= n; ++i) w[i] = stream.exponential();
    const double total = w.sum();
    if (total > 0.0 && (w / total).minCoeff() >= floor) return BarycentricPoint<double>(w / total);
  }
}

CartesianSimplex<double> random_simplex(int n, CounterStream& stream) {
  detail::require_dimension(n, 2, "random_simplex");
  Eigen::MatrixXd v(n, n + 1);
  for (int attempt = 0; attempt < kMaxRejections; ++attempt) {
    for (Eigen::Index j = 0; j < v.cols(); ++j)
      for (Eigen::Index i = 0; i < v.rows(); ++i) v(i, j) = stream.uniform(-1.0, 1.0);
    try {
      return CartesianSimplex<double>(v);
    } catch (const DegenerateSimplex&) {
    }
  }
  throw SamplingFailure("random_simplex: " + std::to_string(kMaxRejections) +
                        " consecutive degenerate draws");
}

double inverse_condition(const CartesianSimplex<double>& s) {
  const int n = s.dim();
  return inverse_condition_of(s.vertices().leftCols(n).colwise() - s.vertices().col(n));
}

std::string TrialInputs::digest() const {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  mix_bytes(h, simplex.vertices().data(), std::size_t(simplex.vertices().size()));
  mix_bytes(h, point.weights().data(), std::size_t(point.size()));
  mix_bytes(h, linear.data(), std::size_t(linear.size()));
  mix_bytes(h, shift.data(), std::size_t(shift.size()));
  static constexpr char hex[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i, h >>= 4) out[std::size_t(i)] = hex[h & 0xF];
  return out;
}

TrialInputs draw_trial(const TrialPlan& plan, std::int64_t trial) {
  CounterStream stream(plan.seed, static_cast<std::uint64_t>(trial));
  const int n = plan.n;

  std::optional<CartesianSimplex<double>> simplex;
  for (int attempt = 0; attempt < kMaxRejections && !simplex; ++attempt) {
    auto candidate = random_simplex(n, stream);
    if (inverse_condition(candidate) >= plan.min_inverse_condition) simplex = std::move(candidate);
  }
  if (!simplex) throw SamplingFailure("draw_trial: no well-conditioned simplex found");

  TrialInputs in{*simplex, sample_interior(n, stream, plan.min_weight), {}, {}};
  if (plan.suite == Suite::affine) {
    Eigen::MatrixXd linear(n, n);
    for (int attempt = 0;; ++attempt) {
      if (attempt == kMaxRejections)
        throw SamplingFailure("draw_trial: no well-conditioned affine map found");
      for (Eigen::Index j = 0; j < n; ++j)
        for (Eigen::Index i = 0; i < n; ++i) linear(i, j) = stream.uniform(-1.0, 1.0);
      if (std::abs(linear.determinant()) < kMinAffineDeterminant ||
          inverse_condition_of(linear) < plan.min_inverse_condition)
        continue;
      const Eigen::MatrixXd mapped = linear * in.simplex.vertices();
      const Eigen::MatrixXd edges = mapped.leftCols(n).colwise() - mapped.col(n);
      if (inverse_condition_of(edges) >= plan.min_inverse_condition) break;
    }
    in.linear = linear;
    in.shift.resize(n);
    for (int i = 0; i < n; ++i) in.shift[i] = stream.uniform(-1.0, 1.0);
  }
  return in;
}

VerificationReport run_suite(const TrialPlan& plan) {
  validate(plan);
  const auto start = std::chrono::steady_clock::now();

  std::vector<TrialOutcome> outcomes(static_cast<std::size_t>(plan.trials));
  detail::parallel_for(outcomes.size(), plan.threads, [&](std::size_t t) {
    TrialOutcome& out = outcomes[t];
    try {
      const TrialInputs in = draw_trial(plan, std::int64_t(t));
      out = evaluate(plan, in);
      if (out.margin > 0.0) out.digest = in.digest();
    } catch (const std::exception& e) {
      out.margin = std::numeric_limits<double>::infinity();
      out.observed = std::numeric_limits<double>::quiet_NaN();
      out.error = e.what();
    }
  });

  VerificationReport report;
  report.plan = plan;
  report.bound = suite_bound(plan);
  report.worst_margin = -std::numeric_limits<double>::infinity();
  report.max_ratio_observed = -std::numeric_limits<double>::infinity();
  for (std::size_t t = 0; t < outcomes.size(); ++t) {
    const TrialOutcome& out = outcomes[t];
    report.worst_margin = std::max(report.worst_margin, out.margin);
    if (std::isfinite(out.observed))
      report.max_ratio_observed = std::max(report.max_ratio_observed, out.observed);
    if (out.margin > 0.0)
      report.violations.push_back({std::int64_t(t), out.digest, out.margin, out.error});
  }
  report.passed = report.violations.empty();
  report.elapsed = std::chrono::steady_clock::now() - start;
  return report;
}

} // namespace cevian
