#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cevian/random.hpp"
#include "cevian/simplex.hpp"

namespace cevian {

/* Seeded Monte Carlo suites that confront the closed-form ratios with
   volumes computed from Cartesian determinants.

   Trial t of a plan draws everything it needs from CounterStream(seed, t),
   so a report does not depend on how trials are scheduled across threads,
   and any violation can be replayed from (seed, trial) alone.
 */

enum class Suite { theorem1, theorem2, eq2, decomposition, moebius, affine, segment_ratio };

std::string_view suite_name(Suite suite);
std::optional<Suite> parse_suite(std::string_view name);
const std::vector<Suite>& all_suites();

/// theorem1/theorem2: absolute slack on the ratio scale. moebius: bound on
/// |residual| / S^3. Everything else: relative error.
double default_tolerance(Suite suite);

class InvalidPlan : public Error {
public:
  using Error::Error;
};

struct TrialPlan {
  Suite suite = Suite::theorem1;
  int n = 2;
  std::int64_t trials = 10000;
  std::uint64_t seed = 0;
  double tol = 1e-12;
  /// Relative tolerance for determinant-vs-determinant cross-checks inside
  /// suites whose primary check is a closed form or an inequality.
  double oracle_tol = 1e-9;
  /// Conditioning filter: simplices with sigma_min/sigma_max of the edge
  /// matrix below this are redrawn, as are interior points with any weight
  /// below min_weight. The affine suite applies the same threshold to the
  /// map and to the mapped simplex.
  double min_inverse_condition = 1e-2;
  double min_weight = 1e-4;
  unsigned threads = 1;
};

/// Throws InvalidPlan.
void validate(const TrialPlan& plan);

TrialPlan make_plan(Suite suite, int n, std::int64_t trials, std::uint64_t seed);

struct Violation {
  std::int64_t trial = 0;
  std::string digest;
  /// Amount by which the check was exceeded; +inf when the trial failed
  /// with an error (see `error`).
  double margin = 0.0;
  std::string error;
};

struct VerificationReport {
  TrialPlan plan;
  std::vector<Violation> violations;
  double worst_margin = 0.0;
  double max_ratio_observed = 0.0;
  double bound = 0.0;
  bool passed = false;
  std::chrono::duration<double> elapsed{};
};

/// Flat Dirichlet draw: normalized standard exponentials, redrawn while any
/// weight is below `min_weight`.
BarycentricPoint<double> sample_interior(int n, CounterStream& stream,
                                         double min_weight = kBoundaryEpsilon);

/// Vertices uniform in [-1, 1]^n, redrawn until the degeneracy guard passes.
/// Throws SamplingFailure after 1000 consecutive rejections.
CartesianSimplex<double> random_simplex(int n, CounterStream& stream);

/// sigma_min / sigma_max of the edge matrix (A_i - A_{n+1}).
double inverse_condition(const CartesianSimplex<double>& s);

struct TrialInputs {
  CartesianSimplex<double> simplex;
  BarycentricPoint<double> point;
  /// Affine suite only: x -> linear * x + shift.
  Eigen::MatrixXd linear;
  Eigen::VectorXd shift;

  /// FNV-1a over the raw bytes of every input, as 16 hex digits.
  std::string digest() const;
};

/// Regenerates the inputs of trial `trial` of `plan`.
TrialInputs draw_trial(const TrialPlan& plan, std::int64_t trial);

VerificationReport run_suite(const TrialPlan& plan);

} // namespace cevian
