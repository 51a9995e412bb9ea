#include "cevian/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "cevian/harness.hpp"
#include "cevian/optimize.hpp"
#include "cevian/ratios.hpp"
#include "cevian/tables.hpp"

namespace cevian::cli {
namespace {

using nlohmann::json;

enum class Format { text, json, csv };

constexpr int kMaxTableDimension = 1000000;
constexpr std::int64_t kMaxTrials = 10000000;
constexpr int kMaxRestarts = 10000;
constexpr unsigned kMaxThreads = 256;

class UsageError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Numbers are carried at 15 significant digits so every format prints the
/// same value; non-finite values become null.
json num(double v) {
  if (!std::isfinite(v)) return nullptr;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return std::strtod(buf, nullptr);
}

json num_array(const Eigen::VectorXd& v) {
  json arr = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(num(v[i]));
  return arr;
}

std::string scalar_text(const json& v) {
  if (v.is_null()) return "null";
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_float()) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.15g", v.get<double>());
    return buf;
  }
  return v.dump();
}

std::string value_text(const json& v) {
  if (!v.is_array()) return scalar_text(v);
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + scalar_text(v[i]);
  return s;
}

/// Column names for a record, expanding arrays to key_1..key_m.
std::vector<std::pair<std::string, json>> flatten(const json& record,
                                                  const std::vector<std::string>& columns) {
  std::vector<std::pair<std::string, json>> cells;
  for (const auto& key : columns) {
    const json& v = record.at(key);
    if (v.is_array())
      for (std::size_t i = 0; i < v.size(); ++i)
        cells.emplace_back(key + "_" + std::to_string(i + 1), v[i]);
    else
      cells.emplace_back(key, v);
  }
  return cells;
}

void emit_record(const json& record, const std::vector<std::string>& columns, Format format,
                 std::ostream& out) {
  switch (format) {
  case Format::json:
    out << record.dump(2) << '\n';
    return;
  case Format::csv: {
    const auto cells = flatten(record, columns);
    for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << cells[i].first;
    out << '\n';
    for (std::size_t i = 0; i < cells.size(); ++i)
      out << (i ? "," : "") << scalar_text(cells[i].second);
    out << '\n';
    return;
  }
  case Format::text:
    for (const auto& key : columns) out << key << ": " << value_text(record.at(key)) << '\n';
    return;
  }
}

void emit_table(const json& rows, const std::vector<std::string>& columns, Format format,
                std::ostream& out) {
  switch (format) {
  case Format::json:
    out << rows.dump(2) << '\n';
    return;
  case Format::csv:
    for (std::size_t i = 0; i < columns.size(); ++i) out << (i ? "," : "") << columns[i];
    out << '\n';
    for (const auto& row : rows) {
      for (std::size_t i = 0; i < columns.size(); ++i)
        out << (i ? "," : "") << scalar_text(row.at(columns[i]));
      out << '\n';
    }
    return;
  case Format::text: {
    std::vector<std::size_t> width(columns.size());
    for (std::size_t i = 0; i < columns.size(); ++i) {
      width[i] = columns[i].size();
      for (const auto& row : rows)
        width[i] = std::max(width[i], scalar_text(row.at(columns[i])).size());
    }
    for (std::size_t i = 0; i < columns.size(); ++i)
      out << (i ? "  " : "") << std::setw(int(width[i])) << columns[i];
    out << '\n';
    for (const auto& row : rows) {
      for (std::size_t i = 0; i < columns.size(); ++i)
        out << (i ? "  " : "") << std::setw(int(width[i])) << scalar_text(row.at(columns[i]));
      out << '\n';
    }
    return;
  }
  }
}

std::vector<double> parse_lambda_list(const std::string& text) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string token;
  while (std::getline(ss, token, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(token, &used);
    } catch (const std::exception&) {
      throw UsageError("--lambda: cannot parse '" + token + "'");
    }
    if (token.find_first_not_of(" \t", used) != std::string::npos)
      throw UsageError("--lambda: cannot parse '" + token + "'");
    values.push_back(v);
  }
  if (!text.empty() && text.back() == ',') throw UsageError("--lambda: trailing comma");
  return values;
}

// ---------------------------------------------------------------------------
// ratio

struct RatioArgs {
  int n = 0;
  std::string lambda;
};

int cmd_ratio(const RatioArgs& args, Format format, std::ostream& out, std::ostream& err) {
  if (args.n < 2) throw UsageError("--n must be >= 2");
  const auto values = parse_lambda_list(args.lambda);
  if (values.size() != std::size_t(args.n) + 1)
    throw UsageError("--lambda: expected " + std::to_string(args.n + 1) + " weights, got " +
                     std::to_string(values.size()));

  Eigen::VectorXd w = Eigen::Map<const Eigen::VectorXd>(values.data(), Eigen::Index(values.size()));
  if (!w.allFinite() || !(w.minCoeff() > 0.0)) {
    err << "error: every weight must be positive and finite (interior point)\n";
    return kDomain;
  }
  const double total = w.sum();
  if (std::abs(total - 1.0) > 1e-9)
    err << "warning: weights sum to " << std::setprecision(15) << total
        << "; renormalizing to 1\n";

  std::optional<BarycentricPoint<double>> m;
  try {
    m.emplace(w);
  } catch (const NotInterior& e) {
    err << "error: " << e.what() << '\n';
    return kDomain;
  }
  const auto b = breakdown(*m);
  json record;
  record["n"] = args.n;
  record["lambda"] = num_array(m->weights());
  record["corner_ratios"] = num_array(b.corner_ratios);
  record["cevian_ratio"] = num(b.cevian_ratio);
  record["theorem1_bound"] = num(b.theorem1_bound);
  record["theorem1_slack"] = num(b.theorem1_bound - b.cevian_ratio);
  record["theorem2_value"] = num(b.theorem2_value);
  record["theorem2_slack"] = num(b.theorem2_value - b.corner_ratios[args.n]);
  emit_record(record,
              {"n", "lambda", "corner_ratios", "cevian_ratio", "theorem1_bound", "theorem1_slack",
               "theorem2_value", "theorem2_slack"},
              format, out);
  return kPass;
}

// ---------------------------------------------------------------------------
// constants

struct ConstantsArgs {
  int n_min = 2;
  int n_max = 10;
  int depth = kDefaultCfDepth;
};

int cmd_constants(const ConstantsArgs& args, Format format, std::ostream& out) {
  if (args.n_min < 2 || args.n_max < args.n_min)
    throw UsageError("constants: need 2 <= --n-min <= --n-max");
  if (args.n_max > kMaxTableDimension)
    throw UsageError("constants: --n-max must be <= " + std::to_string(kMaxTableDimension));
  if (args.depth < 1) throw UsageError("constants: --depth must be >= 1");

  json rows = json::array();
  for (int n = args.n_min; n <= args.n_max; ++n) {
    const auto r = constants_row(n, args.depth);
    json row;
    row["n"] = r.n;
    row["theta"] = num(r.theta);
    row["theta_cf"] = num(r.theta_cf);
    row["theta_hyp"] = num(r.theta_hyp);
    row["f_theta"] = num(r.f_theta);
    row["log_f_theta"] = num(r.log_f_theta);
    row["paper_eq3_value"] = num(r.paper_eq3_value);
    row["metallic"] = num(r.metallic);
    row["metallic_cf"] = num(r.metallic_cf);
    row["metallic_hyp"] = num(r.metallic_hyp);
    rows.push_back(std::move(row));
  }
  emit_table(rows,
             {"n", "theta", "theta_cf", "theta_hyp", "f_theta", "log_f_theta", "paper_eq3_value",
              "metallic", "metallic_cf", "metallic_hyp"},
             format, out);
  return kPass;
}

// ---------------------------------------------------------------------------
// verify

struct VerifyArgs {
  std::string suite;
  int n = 0;
  std::int64_t trials = 10000;
  std::uint64_t seed = 0;
  std::optional<double> tol;
  unsigned threads = 1;
};

json report_json(const VerificationReport& report) {
  json record;
  record["suite"] = std::string(suite_name(report.plan.suite));
  record["n"] = report.plan.n;
  record["trials"] = report.plan.trials;
  record["seed"] = report.plan.seed;
  record["tol"] = num(report.plan.tol);
  record["passed"] = report.passed;
  record["worst_margin"] = num(report.worst_margin);
  record["max_ratio_observed"] = num(report.max_ratio_observed);
  record["bound"] = num(report.bound);
  json violations = json::array();
  for (const auto& v : report.violations) {
    json item;
    item["trial"] = v.trial;
    item["digest"] = v.digest;
    item["margin"] = num(v.margin);
    if (!v.error.empty()) item["error"] = v.error;
    violations.push_back(std::move(item));
  }
  record["violations"] = std::move(violations);
  return record;
}

int cmd_verify(const VerifyArgs& args, Format format, std::ostream& out) {
  const auto suite = parse_suite(args.suite);
  if (!suite) throw UsageError("verify: unknown suite '" + args.suite + "'");
  if (args.trials > kMaxTrials)
    throw UsageError("verify: --trials must be <= " + std::to_string(kMaxTrials));
  if (args.threads > kMaxThreads)
    throw UsageError("verify: --threads must be <= " + std::to_string(kMaxThreads));
  TrialPlan plan = make_plan(*suite, args.n, args.trials, args.seed);
  if (args.tol) plan.tol = *args.tol;
  plan.threads = args.threads;
  try {
    validate(plan);
  } catch (const InvalidPlan& e) {
    throw UsageError(e.what());
  }

  const auto report = run_suite(plan);
  const json record = report_json(report);
  const std::vector<std::string> scalars{"suite", "n",    "trials",       "seed",
                                         "tol",   "passed", "worst_margin", "max_ratio_observed",
                                         "bound"};
  switch (format) {
  case Format::json:
    out << record.dump(2) << '\n';
    break;
  case Format::csv: {
    json flat = record;
    flat["violations"] = report.violations.size();
    auto columns = scalars;
    columns.push_back("violations");
    emit_record(flat, columns, format, out);
    break;
  }
  case Format::text:
    emit_record(record, scalars, format, out);
    out << "violations: " << report.violations.size() << '\n';
    for (const auto& v : record["violations"])
      out << "  trial " << v["trial"].get<std::int64_t>() << " digest "
          << v["digest"].get<std::string>() << " margin " << scalar_text(v["margin"])
          << (v.contains("error") ? " error " + v["error"].get<std::string>() : "") << '\n';
    out << "elapsed_seconds: " << report.elapsed.count() << '\n';
    break;
  }
  return report.passed ? kPass : kViolation;
}

// ---------------------------------------------------------------------------
// optimize

struct OptimizeArgs {
  int n = 0;
  int restarts = kDefaultRestarts;
  double tol = kDefaultSearchTol;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  int max_iterations = 10000;
};

int cmd_optimize(const OptimizeArgs& args, Format format, std::ostream& out) {
  if (args.n < 2) throw UsageError("optimize: --n must be >= 2");
  if (args.restarts < 1 || args.restarts > kMaxRestarts)
    throw UsageError("optimize: --restarts must lie in [1, " + std::to_string(kMaxRestarts) + "]");
  if (args.threads > kMaxThreads)
    throw UsageError("optimize: --threads must be <= " + std::to_string(kMaxThreads));
  if (!(args.tol > 0.0)) throw UsageError("optimize: --tol must be > 0");

  if (args.max_iterations < 1) throw UsageError("optimize: --max-iterations must be >= 1");

  SearchOptions options;
  options.threads = args.threads;
  options.max_iterations = args.max_iterations;
  const auto line = maximize_reduced(args.n, args.tol, options);
  const auto corner = maximize_corner(args.n, args.restarts, args.tol, args.seed, options);

  const double t = theta(args.n);
  const double best = theorem2_value(args.n);
  Eigen::VectorXd expected = Eigen::VectorXd::Constant(args.n + 1, t);
  expected[args.n] = 1.0 - args.n * t;

  json record;
  record["n"] = args.n;
  record["theta"] = num(t);
  record["theorem2_value"] = num(best);
  record["argmax_x"] = num(line.argmax);
  record["deviation_x"] = num(std::abs(line.argmax - t));
  record["value_1d"] = num(line.value);
  record["iterations_1d"] = line.iterations;
  record["residual_1d"] = num(line.first_order_residual);
  record["lambda_star"] = num_array(corner.argmax.weights());
  record["lambda_deviation"] = num((corner.argmax.weights() - expected).cwiseAbs().maxCoeff());
  record["value_simplex"] = num(corner.value);
  record["value_deviation"] = num(std::abs(corner.value - best));
  record["iterations_simplex"] = corner.iterations;
  record["restarts"] = corner.restarts_used;
  record["residual_simplex"] = num(corner.first_order_residual);
  record["distinct_maxima"] = corner.local_maxima.size();
  record["converged"] = line.converged && corner.converged;
  emit_record(record,
              {"n", "theta", "theorem2_value", "argmax_x", "deviation_x", "value_1d",
               "iterations_1d", "residual_1d", "lambda_star", "lambda_deviation", "value_simplex",
               "value_deviation", "iterations_simplex", "restarts", "residual_simplex",
               "distinct_maxima", "converged"},
              format, out);
  return kPass;
}

// ---------------------------------------------------------------------------
// audit-bounds

int cmd_audit_bounds(int n_max, Format format, std::ostream& out) {
  if (n_max < 2) throw UsageError("audit-bounds: --n-max must be >= 2");
  if (n_max > kMaxTableDimension)
    throw UsageError("audit-bounds: --n-max must be <= " + std::to_string(kMaxTableDimension));
  json rows = json::array();
  for (int n = 2; n <= n_max; ++n) {
    const auto a = audit_bound(n);
    json row;
    row["n"] = n;
    row["direct_f_theta"] = num(a.direct_value);
    row["paper_eq3_value"] = num(a.paper_value);
    row["ratio"] = num(a.ratio);
    row["direct_times_power"] = num(a.direct_times_power);
    row["flagged"] = std::abs(a.ratio - 1.0) > 1e-9;
    rows.push_back(std::move(row));
  }
  emit_table(rows,
             {"n", "direct_f_theta", "paper_eq3_value", "ratio", "direct_times_power", "flagged"},
             format, out);
  return kPass;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Cevian simplex volume ratios: compute, verify, optimize, tabulate, audit"};
  app.name("cevian");
  app.require_subcommand(1);
  app.fallthrough();

  Format format = Format::text;
  const std::map<std::string, Format> formats{
      {"text", Format::text}, {"json", Format::json}, {"csv", Format::csv}};
  app.add_option("--format", format, "Output format: text, json or csv")
      ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case).description(""))
      ->type_name("text|json|csv");

  RatioArgs ratio_args;
  auto* ratio = app.add_subcommand("ratio", "Volume ratios for one interior point");
  ratio->add_option("--n", ratio_args.n, "Dimension (>= 2)")->required();
  ratio->add_option("--lambda", ratio_args.lambda, "Comma-separated barycentric weights")
      ->required();

  ConstantsArgs constants_args;
  auto* constants = app.add_subcommand("constants", "Table of extremal constants");
  constants->add_option("--n-min", constants_args.n_min, "First dimension")->capture_default_str();
  constants->add_option("--n-max", constants_args.n_max, "Last dimension")->capture_default_str();
  constants->add_option("--depth", constants_args.depth, "Continued-fraction depth")
      ->capture_default_str();

  VerifyArgs verify_args;
  auto* verify = app.add_subcommand("verify", "Run a seeded verification suite");
  verify->add_option("--suite", verify_args.suite,
                     "theorem1|theorem2|eq2|decomposition|moebius|affine|segment_ratio")
      ->required();
  verify->add_option("--n", verify_args.n, "Dimension (>= 2)")->required();
  verify->add_option("--trials", verify_args.trials, "Number of trials")->capture_default_str();
  verify->add_option("--seed", verify_args.seed, "64-bit unsigned seed")->capture_default_str();
  verify->add_option("--tol", verify_args.tol, "Tolerance (default depends on suite)");
  verify->add_option("--threads", verify_args.threads, "Worker threads (0 = all cores)")
      ->capture_default_str();

  OptimizeArgs optimize_args;
  auto* optimize = app.add_subcommand("optimize", "Numerically maximize the corner ratio");
  optimize->add_option("--n", optimize_args.n, "Dimension (>= 2)")->required();
  optimize->add_option("--restarts", optimize_args.restarts, "Multi-start count")
      ->capture_default_str();
  optimize->add_option("--tol", optimize_args.tol, "Search tolerance")->capture_default_str();
  optimize->add_option("--seed", optimize_args.seed, "64-bit unsigned seed")
      ->capture_default_str();
  optimize->add_option("--threads", optimize_args.threads, "Worker threads (0 = all cores)")
      ->capture_default_str();
  optimize->add_option("--max-iterations", optimize_args.max_iterations,
                       "Iteration cap per search")
      ->capture_default_str();

  int audit_n_max = 10;
  auto* audit = app.add_subcommand("audit-bounds", "Compare the printed general constant with f(theta_n)");
  audit->add_option("--n-max", audit_n_max, "Last dimension")->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kPass : kUsage;
  }

  try {
    if (ratio->parsed()) return cmd_ratio(ratio_args, format, out, err);
    if (constants->parsed()) return cmd_constants(constants_args, format, out);
    if (verify->parsed()) return cmd_verify(verify_args, format, out);
    if (optimize->parsed()) return cmd_optimize(optimize_args, format, out);
    if (audit->parsed()) return cmd_audit_bounds(audit_n_max, format, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ConvergenceFailure& e) {
    err << "error: " << e.what() << '\n';
    return kConvergence;
  } catch (const NotInterior& e) {
    err << "error: " << e.what() << '\n';
    return kDomain;
  } catch (const UnsupportedDimension& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

} // namespace cevian::cli
