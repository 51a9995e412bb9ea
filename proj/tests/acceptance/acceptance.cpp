// Acceptance run: one line per criterion, nonzero exit if any fails.

#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "cevian/cli.hpp"
#include "cevian/constants.hpp"
#include "cevian/harness.hpp"
#include "cevian/optimize.hpp"
#include "cevian/ratios.hpp"
#include "oracles.hpp"

using namespace cevian;

namespace {

struct Outcome {
  bool passed = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      passed = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
};

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

bool rel_close(double a, double b, double tol) { return std::abs(a - b) <= tol * std::abs(b); }

// Smaller root of x^2 - (n+1)x + 1 in long double, independent of the library.
double theta_oracle(int n) {
  const long double b = n + 1.0L;
  return double(2.0L / (b + std::sqrt(b * b - 4.0L)));
}

std::string cli_out(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return std::to_string(code) + "\n" + out.str();
}

Outcome constants_check() {
  Outcome o;
  o.require(std::abs(theta(2) - (3.0 - std::sqrt(5.0)) / 2.0) <= 1e-12, "theta(2)");
  o.require(std::abs(theta(3) - (2.0 - std::sqrt(3.0))) <= 1e-12, "theta(3)");
  double worst = 0.0;
  for (int n = 2; n <= 10; ++n) {
    const double a = theta(n), b = theta_cf(n, 40), c = theta_hyperbolic(n);
    worst = std::max({worst, std::abs(a - b), std::abs(a - c), std::abs(b - c)});
  }
  o.require(worst <= 1e-10, fmt("three-way spread %.3g", worst));
  if (o.passed) o.detail = fmt("three-way spread %.3g", worst);
  return o;
}

Outcome special_cases() {
  Outcome o;
  const double v2 = 32.0 / std::pow(std::sqrt(5.0) + 1.0, 5);
  const double v3 = 4.0 / std::pow(1.0 + std::sqrt(3.0), 6);
  o.require(rel_close(theorem2_value(2), v2, 1e-12), "n=2");
  o.require(rel_close(theorem2_value(3), v3, 1e-12), "n=3");
  if (o.passed) o.detail = fmt("%.10f %.10f", theorem2_value(2), theorem2_value(3));
  return o;
}

Outcome bound_at_scale() {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  for (int n = 2; n <= 6; ++n) {
    TrialPlan plan = make_plan(Suite::theorem1, n, 100000, 20240601);
    plan.tol = 1e-12;
    const auto report = run_suite(plan);
    o.require(report.passed, fmt("n=%g violations %g", n, double(report.violations.size())));

    // Equality at the centroid on random simplices, by determinants.
    CounterStream stream(99, std::uint64_t(n));
    double worst = 0.0;
    for (int t = 0; t < 1000; ++t) {
      const auto s = random_simplex(n, stream);
      const auto c = build_configuration(s, BarycentricPoint<double>::centroid(n));
      worst = std::max(worst, std::abs(simplex_volume(c.feet_cart) / volume(s) - theorem1_bound(n)));
    }
    o.require(worst <= 1e-12, fmt("n=%g centroid gap %.3g", n, worst));
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  o.require(secs < 30.0, fmt("took %.1f s", secs));
  if (o.passed) o.detail = fmt("5 x 1e5 trials in %.2f s", secs);
  return o;
}

Outcome corner_oracle() {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  double worst = 0.0;
  for (int n = 2; n <= 5; ++n) {
    TrialPlan plan = make_plan(Suite::eq2, n, 10000, 4242);
    plan.tol = 1e-9;
    const auto report = run_suite(plan);
    o.require(report.passed, fmt("n=%g worst rel %.3g", n, report.max_ratio_observed));
    worst = std::max(worst, report.max_ratio_observed);
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  o.require(secs < 10.0, fmt("took %.1f s", secs));
  if (o.passed) o.detail = fmt("worst rel %.3g in %.2f s", worst, secs);
  return o;
}

Outcome decomposition() {
  // Replays the configurations drawn by the bound run.
  Outcome o;
  double worst = 0.0;
  for (int n = 2; n <= 6; ++n) {
    const TrialPlan plan = make_plan(Suite::theorem1, n, 100000, 20240601);
    for (std::int64_t t = 0; t < plan.trials; ++t) {
      const auto m = draw_trial(plan, t).point;
      double sum = 0.0;
      for (int k = 0; k <= n; ++k) sum += corner_ratio(m, k);
      worst = std::max(worst, std::abs(sum - cevian_ratio(m)) / cevian_ratio(m));
    }
    TrialPlan det_plan = make_plan(Suite::decomposition, n, 100000, 20240601);
    o.require(run_suite(det_plan).passed, fmt("n=%g determinant sums disagree", n));
  }
  o.require(worst <= 1e-12, fmt("worst rel %.3g", worst));
  if (o.passed) o.detail = fmt("worst rel %.3g", worst);
  return o;
}

Outcome moebius() {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  TrialPlan plan = make_plan(Suite::moebius, 2, 100000, 314159);
  plan.tol = 1e-10;
  const auto report = run_suite(plan);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  o.require(report.passed, fmt("%g violations", double(report.violations.size())));
  o.require(secs < 10.0, fmt("took %.1f s", secs));
  if (o.passed) o.detail = fmt("worst residual/S^3 %.3g in %.2f s", report.max_ratio_observed, secs);
  return o;
}

Outcome optimization() {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  double worst_x = 0.0, worst_coord = 0.0, worst_value = 0.0;
  for (int n = 2; n <= 8; ++n) {
    const double t = theta_oracle(n);
    const double f = oracle::symmetric_slice(t, n);
    const auto r = maximize_reduced(n, 1e-10);
    worst_x = std::max(worst_x, std::abs(r.argmax - t));

    const auto c = maximize_corner(n, 16, 1e-10, 0);
    for (int i = 0; i < n; ++i) worst_coord = std::max(worst_coord, std::abs(c.argmax[i] - t));
    worst_coord = std::max(worst_coord, std::abs(c.argmax[n] - (1.0 - n * t)));
    worst_value = std::max(worst_value, std::abs(c.value - f));
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  o.require(worst_x <= 1e-8, fmt("1-D argmax off by %.3g", worst_x));
  o.require(worst_coord <= 1e-5, fmt("coordinate off by %.3g", worst_coord));
  o.require(worst_value <= 1e-9, fmt("value off by %.3g", worst_value));
  o.require(secs < 20.0, fmt("took %.1f s", secs));
  if (o.passed)
    o.detail = fmt("1-D %.2g, coord %.2g, value %.2g", worst_x, worst_coord, worst_value) +
               fmt(" in %.2f s", secs);
  return o;
}

Outcome bound_audit() {
  Outcome o;
  const auto rows = nlohmann::json::parse(cli_out({"audit-bounds", "--n-max", "10", "--format", "json"})
                                              .substr(2));
  o.require(rows.size() == 9, "row count");
  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  double worst = 0.0;
  for (const auto& row : rows) {
    const int n = row["n"].get<int>();
    const double expected = double(n - 1) * double(n - 1);
    worst = std::max(worst, std::abs(row["direct_times_power"].get<double>() - expected) / expected);
    if (n == 2) {
      o.require(std::abs(row["ratio"].get<double>() - 9.0) <= 1e-9, "ratio at n=2");
      o.require(rel_close(row["direct_f_theta"].get<double>(), 32.0 / std::pow(2.0 * phi, 5), 1e-12),
                "f(theta_2)");
    }
    if (n == 3) {
      o.require(std::abs(row["ratio"].get<double>() - 4.0) <= 1e-9, "ratio at n=3");
      o.require(rel_close(row["direct_f_theta"].get<double>(),
                          4.0 / std::pow(1.0 + std::sqrt(3.0), 6), 1e-12),
                "f(theta_3)");
    }
  }
  o.require(worst <= 1e-10, fmt("(n-1)^2 rel %.3g", worst));
  if (o.passed) o.detail = fmt("ratios 9 and 4; (n-1)^2 rel %.3g", worst);
  return o;
}

Outcome derivative() {
  // Scale is max(|f'|, f): the slope vanishes at theta_n.
  Outcome o;
  CounterStream stream(2718281828, 0);
  double worst = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 2 + int(stream() % 9);
    const double x = stream.uniform(0.05, 0.95) / n;
    const double fd = oracle::central_difference(
        [n](double y) { return oracle::symmetric_slice(y, n); }, x, 1e-6 * x);
    const double exact = reduced_objective_prime(x, n);
    const double scale = std::max(std::abs(exact), reduced_objective(x, n));
    worst = std::max(worst, std::abs(fd - exact) / scale);
  }
  o.require(worst <= 1e-6, fmt("worst rel %.3g", worst));
  if (o.passed) o.detail = fmt("worst rel %.3g", worst);
  return o;
}

Outcome reproducibility() {
  Outcome o;
  const std::vector<std::vector<std::string>> commands = {
      {"verify", "--suite", "theorem1", "--n", "4", "--trials", "20000", "--seed", "11"},
      {"verify", "--suite", "eq2", "--n", "5", "--trials", "5000", "--seed", "12", "--tol", "1e-14"},
      {"verify", "--suite", "affine", "--n", "3", "--trials", "5000", "--seed", "13"},
      {"verify", "--suite", "moebius", "--n", "2", "--trials", "5000", "--seed", "14"},
      {"optimize", "--n", "5", "--restarts", "8", "--seed", "15"},
  };
  for (const auto& base : commands) {
    for (const char* format : {"json", "csv"}) {
      auto serial = base;
      serial.insert(serial.end(), {"--format", format});
      auto parallel = serial;
      parallel.insert(parallel.end(), {"--threads", "4"});
      const std::string first = cli_out(serial);
      o.require(first == cli_out(serial), base[0] + " " + base[2] + " rerun differs");
      o.require(first == cli_out(parallel), base[0] + " " + base[2] + " threads differ");
    }
  }
  if (o.passed) o.detail = "5 commands x 2 formats, serial rerun and 4 threads";
  return o;
}

} // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"theta closed forms and three-way agreement", constants_check},
      {"optimal corner ratio special cases", special_cases},
      {"cevian simplex bound, 1e5 trials per n = 2..6", bound_at_scale},
      {"closed-form corner ratio vs determinants", corner_oracle},
      {"corner ratios sum to the cevian ratio", decomposition},
      {"Moebius area relation, 1e5 triangles", moebius},
      {"optimizers recover theta_n, n = 2..8", optimization},
      {"printed general constant audit", bound_audit},
      {"reduced objective derivative vs finite differences", derivative},
      {"reproducible verify and optimize reports", reproducibility},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.passed = false;
      o.detail = std::string("exception: ") + e.what();
    }
    if (!o.passed) ++failures;
    std::printf("[%s] %zu %s: %s\n", o.passed ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", int(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
