// triup command-line front end.
//
// Subcommands:
//   axioms       sample the four 3-product axioms on a space
//   selfadjoint  check every operator of an instance file
//   verify       run the full inequality chain on one instance
//   sweep        batch-verify seeded random diagonal instances
//   optimize     search for extremal sharpness configurations
//   classical    two-operator Euclidean reference chain
//
// One JSON report goes to stdout; diagnostics go to stderr. Exit codes:
// 0 = all checks passed, 1 = a mathematical check failed, 2 = invalid
// input. Reports are byte-identical for identical inputs; --timing adds
// a wall-clock field and is off by default for that reason.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "triup/classical.hpp"
#include "triup/errors.hpp"
#include "triup/instance.hpp"
#include "triup/json_writer.hpp"
#include "triup/report_json.hpp"
#include "triup/rng.hpp"
#include "triup/sharpness.hpp"
#include "triup/sweep.hpp"
#include "triup/tri_product_space.hpp"
#include "triup/uncertainty.hpp"

namespace {

using namespace triup;

constexpr int kExitPass = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitInvalidInput = 2;

struct CommonOptions {
  std::optional<double> tol_abs;
  std::optional<double> tol_rel;
  bool timing = false;
};

Tolerances resolve_tolerances(const CommonOptions& common,
                              const Tolerances& from_file) {
  Tolerances tols = from_file;
  if (common.tol_abs) tols.absolute = *common.tol_abs;
  if (common.tol_rel) tols.relative = *common.tol_rel;
  if (tols.absolute <= 0.0 || tols.relative <= 0.0)
    throw ParseError("tolerances must be positive");
  return tols;
}

std::pair<std::size_t, std::size_t> parse_dims(const std::string& text) {
  const auto sep = text.find("..");
  if (sep == std::string::npos)
    throw ParseError("--dims expects LO..HI, got \"" + text + "\"");
  try {
    const std::size_t lo = std::stoul(text.substr(0, sep));
    const std::size_t hi = std::stoul(text.substr(sep + 2));
    if (lo < 1 || hi < lo)
      throw ParseError("--dims expects 1 <= LO <= HI, got \"" + text + "\"");
    return {lo, hi};
  } catch (const std::logic_error&) {
    throw ParseError("--dims expects LO..HI with integers, got \"" + text + "\"");
  }
}

void emit(JsonWriter& w, const CommonOptions& common,
          std::chrono::steady_clock::time_point started) {
  if (common.timing) {
    const auto elapsed = std::chrono::steady_clock::now() - started;
    w.field("wall_time_ms",
            std::chrono::duration<double, std::milli>(elapsed).count());
  }
  w.end_object();
  std::fputs(w.str().c_str(), stdout);
  std::fputc('\n', stdout);
}

// ---- axioms ---------------------------------------------------------------

int run_axioms(const std::string& path, std::size_t budget,
               std::optional<std::uint64_t> seed_override,
               const CommonOptions& common) {
  const auto started = std::chrono::steady_clock::now();
  const InstanceFile file = InstanceFile::parse_file(path);
  const Tolerances tols = resolve_tolerances(common, file.tolerances);
  const TriProductSpace space = file.make_space();
  const std::uint64_t seed = seed_override
                                 ? *seed_override
                                 : (file.seed ? static_cast<std::uint64_t>(
                                                    *file.seed)
                                              : 0);
  const AxiomReport report = check_axioms(space, budget, seed, tols.relative);

  JsonWriter w;
  w.begin_object();
  w.field("command", "axioms");
  w.field("instance", file.digest());
  w.field("label", space.label());
  w.field("dimension", space.dimension());
  w.field("budget", budget);
  w.field("seed", seed);
  w.key("report");
  write_axiom_report(w, report);
  w.field("passed", report.all_ok());
  emit(w, common, started);
  return report.all_ok() ? kExitPass : kExitCheckFailed;
}

// ---- selfadjoint ----------------------------------------------------------

int run_selfadjoint(const std::string& path, const CommonOptions& common) {
  const auto started = std::chrono::steady_clock::now();
  const InstanceFile file = InstanceFile::parse_file(path);
  resolve_tolerances(common, file.tolerances);
  const TriProductSpace space = file.make_space();
  if (file.operators.empty())
    throw ParseError("operators: selfadjoint needs at least one operator");

  bool all_ok = true;
  JsonWriter w;
  w.begin_object();
  w.field("command", "selfadjoint");
  w.field("instance", file.digest());
  w.key("operators").begin_array();
  for (std::size_t i = 0; i < file.operators.size(); ++i) {
    const LinearOperator op = file.make_operator(i, space);
    const SelfAdjointCheck check = check_3_self_adjoint(space, op);
    all_ok = all_ok && check.ok;
    w.begin_object();
    w.field("index", i);
    w.field("kind", op.is_diagonal() ? "diagonal" : "dense");
    w.key("check");
    write_selfadjoint_check(w, check);
    w.end_object();
  }
  w.end_array();
  w.field("passed", all_ok);
  emit(w, common, started);
  return all_ok ? kExitPass : kExitCheckFailed;
}

// ---- verify ---------------------------------------------------------------

int run_verify(const std::string& path, const CommonOptions& common) {
  const auto started = std::chrono::steady_clock::now();
  const InstanceFile file = InstanceFile::parse_file(path);
  const Tolerances tols = resolve_tolerances(common, file.tolerances);
  const TriProductSpace space = file.make_space();
  if (file.operators.size() != 3)
    throw ParseError("operators: verify needs exactly three operators");
  const LinearOperator a = file.make_operator(0, space);
  const LinearOperator b = file.make_operator(1, space);
  const LinearOperator c = file.make_operator(2, space);
  const StateVector x = file.make_cube_state(space);

  const ChainReport chain = verify_chain(space, a, b, c, x, tols);
  const OrderInvarianceReport order =
      operator_order_invariance(space, a, b, c, x);
  const bool order_ok = order.max_deviation <= kIdentityRelTol * order.scale;
  const bool passed = chain.chain_ok && order_ok;

  JsonWriter w;
  w.begin_object();
  w.field("command", "verify");
  w.field("instance", file.digest());
  w.field("label", space.label());
  w.key("chain");
  write_chain_report(w, chain);
  w.key("order_invariance");
  write_order_invariance(w, order);
  w.field("order_ok", order_ok);
  w.field("passed", passed);
  emit(w, common, started);
  return passed ? kExitPass : kExitCheckFailed;
}

// ---- sweep ----------------------------------------------------------------

int run_sweep(const std::string& dims, std::size_t count, std::uint64_t seed,
              const std::string& csv_path, const std::string& jsonl_path,
              const CommonOptions& common) {
  const auto started = std::chrono::steady_clock::now();
  SweepParams params;
  std::tie(params.dim_low, params.dim_high) = parse_dims(dims);
  params.count = count;
  params.seed = seed;
  params.tolerances = resolve_tolerances(common, Tolerances{});
  const SweepReport report = run_sweep(params);

  if (!csv_path.empty()) {
    std::ofstream csv(csv_path);
    if (!csv) throw ParseError(csv_path + ": cannot open for writing");
    csv << "instance,margin,degenerate_tight\n";
    for (const SweepOutcome& o : report.outcomes)
      csv << o.index << ',' << format_double(o.margin) << ','
          << (o.degenerate_tight ? 1 : 0) << '\n';
  }

  if (!jsonl_path.empty()) {
    std::ofstream jsonl(jsonl_path);
    if (!jsonl) throw ParseError(jsonl_path + ": cannot open for writing");
    for (const SweepOutcome& o : report.outcomes) {
      JsonWriter line;
      line.begin_object();
      line.field("instance", o.index);
      line.field("dimension", o.dimension);
      line.field("order_rel", o.order_rel);
      line.field("ok", o.ok);
      line.key("chain");
      write_chain_report(line, o.chain);
      line.end_object();
      jsonl << line.str() << '\n';
    }
  }

  JsonWriter w;
  w.begin_object();
  w.field("command", "sweep");
  w.key("params").begin_object();
  w.field("dim_low", params.dim_low);
  w.field("dim_high", params.dim_high);
  w.field("count", params.count);
  w.field("seed", params.seed);
  w.field("diag_low", params.diag_low);
  w.field("diag_high", params.diag_high);
  w.end_object();
  w.key("counts").begin_object();
  w.field("total", report.outcomes.size());
  w.field("pass", report.pass);
  w.field("degenerate_tight", report.degenerate_tight);
  w.field("fail", report.fail);
  w.end_object();
  w.key("worst").begin_object();
  w.field("min_margin", report.min_margin);
  w.field("max_identity_rel", report.max_identity_rel);
  w.field("max_order_rel", report.max_order_rel);
  w.end_object();
  w.field("passed", report.all_ok());
  emit(w, common, started);
  return report.all_ok() ? kExitPass : kExitCheckFailed;
}

// ---- optimize ---------------------------------------------------------------

int run_optimize(const std::string& path, std::optional<int> restarts_override,
                 const std::string& csv_path, const CommonOptions& common) {
  const auto started = std::chrono::steady_clock::now();
  const InstanceFile file = InstanceFile::parse_file(path);
  resolve_tolerances(common, file.tolerances);
  const TriProductSpace space = file.make_space();

  OptimizeSpec spec = file.optimize ? *file.optimize : OptimizeSpec{};
  spec.config.seed = file.require_seed("the optimizer");
  if (restarts_override) spec.config.restarts = *restarts_override;
  if (!csv_path.empty()) spec.config.record_trace = true;

  SharpnessResult result = [&] {
    if (spec.mode == "joint") {
      if (!spec.bounds)
        throw ParseError("optimize.bounds: required for joint mode");
      return optimize_joint(space, (*spec.bounds)[0], (*spec.bounds)[1],
                            spec.config);
    }
    if (file.operators.size() != 3)
      throw ParseError("operators: state-mode optimize needs three "
                       "diagonal operators");
    return optimize_state(space, file.make_operator(0, space),
                          file.make_operator(1, space),
                          file.make_operator(2, space), spec.config);
  }();

  // the reported witness must reproduce through the chain verifier
  const ChainReport chain = verify_chain(
      space, LinearOperator::diagonal(result.best_operators[0]),
      LinearOperator::diagonal(result.best_operators[1]),
      LinearOperator::diagonal(result.best_operators[2]), result.best_state);
  const double reproduced =
      chain.lhs_product > 0.0 ? chain.rhs_expanded / chain.lhs_product : 0.0;
  const bool reproducible =
      std::abs(reproduced - result.best_ratio) <=
      1e-9 * (1.0 + std::abs(result.best_ratio));
  const bool passed =
      !result.falsification_flag && chain.chain_ok && reproducible;

  if (!csv_path.empty()) {
    std::ofstream csv(csv_path);
    if (!csv) throw ParseError(csv_path + ": cannot open for writing");
    csv << "restart,best_ratio\n";
    for (std::size_t r = 0; r < result.ratio_trace.size(); ++r)
      csv << r << ',' << format_double(result.ratio_trace[r]) << '\n';
  }

  JsonWriter w;
  w.begin_object();
  w.field("command", "optimize");
  w.field("instance", file.digest());
  w.field("mode", spec.mode);
  w.key("result");
  write_sharpness_result(w, result);
  w.field("reproduced_ratio", reproduced);
  w.key("witness_chain");
  write_chain_report(w, chain);
  w.field("passed", passed);
  emit(w, common, started);
  return passed ? kExitPass : kExitCheckFailed;
}

// ---- classical --------------------------------------------------------------

int run_classical_file(const std::string& path, const CommonOptions& common) {
  const auto started = std::chrono::steady_clock::now();
  const InstanceFile file = InstanceFile::parse_file(path);
  const Tolerances tols = resolve_tolerances(common, file.tolerances);
  const TriProductSpace space = file.make_space();
  if (file.operators.size() < 2)
    throw ParseError("operators: classical needs two symmetric operators");
  const LinearOperator a = file.make_operator(0, space);
  const LinearOperator b = file.make_operator(1, space);
  const std::vector<double> h = file.make_euclidean_state(space.dimension());
  const ClassicalReport report = classical_verify(a, b, h, tols);

  JsonWriter w;
  w.begin_object();
  w.field("command", "classical");
  w.field("instance", file.digest());
  w.key("report");
  write_classical_report(w, report);
  w.field("passed", report.all_ok);
  emit(w, common, started);
  return report.all_ok ? kExitPass : kExitCheckFailed;
}

int run_classical_random(const std::string& dims, std::size_t count,
                         std::uint64_t seed, const CommonOptions& common) {
  const auto started = std::chrono::steady_clock::now();
  const auto [dim_low, dim_high] = parse_dims(dims);
  if (dim_low < 2) throw ParseError("--dims: classical needs dimensions >= 2");
  const Tolerances tols = resolve_tolerances(common, Tolerances{});

  std::size_t failures = 0;
  double worst_commutator = 0.0;
  double min_product_margin = std::numeric_limits<double>::infinity();
  const std::size_t span = dim_high - dim_low + 1;
  for (std::size_t k = 0; k < count; ++k) {
    Sampler rng(derive_seed(seed, k));
    const std::size_t n = dim_low + (k % span);
    std::vector<double> flat_a(n * n, 0.0), flat_b(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) {
        flat_a[i * n + j] = flat_a[j * n + i] = rng.uniform(-2.0, 2.0);
        flat_b[i * n + j] = flat_b[j * n + i] = rng.uniform(-2.0, 2.0);
      }
    std::vector<double> h(n);
    double norm_sq = 0.0;
    do {
      norm_sq = 0.0;
      for (double& c : h) {
        c = rng.signed_unit();
        norm_sq += c * c;
      }
    } while (norm_sq < 1e-6);
    const double inv = 1.0 / std::sqrt(norm_sq);
    for (double& c : h) c *= inv;

    const ClassicalReport report = classical_verify(
        LinearOperator::dense(n, flat_a), LinearOperator::dense(n, flat_b), h,
        tols);
    if (!report.all_ok) ++failures;
    worst_commutator =
        std::max(worst_commutator, std::abs(report.commutator_expectation));
    min_product_margin =
        std::min(min_product_margin,
                 report.uncertainty_product - report.schrodinger_rhs);
  }

  JsonWriter w;
  w.begin_object();
  w.field("command", "classical");
  w.key("params").begin_object();
  w.field("dim_low", dim_low);
  w.field("dim_high", dim_high);
  w.field("count", count);
  w.field("seed", seed);
  w.end_object();
  w.key("counts").begin_object();
  w.field("total", count);
  w.field("pass", count - failures);
  w.field("fail", failures);
  w.end_object();
  w.key("worst").begin_object();
  w.field("max_commutator_expectation", worst_commutator);
  w.field("min_schrodinger_margin", min_product_margin);
  w.end_object();
  w.field("passed", failures == 0);
  emit(w, common, started);
  return failures == 0 ? kExitPass : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"trilinear uncertainty toolkit"};
  app.require_subcommand(1);

  CommonOptions common;
  app.add_flag("--timing", common.timing,
               "append wall-clock time to the report (breaks byte-identity)");
  double tol_abs = 0.0, tol_rel = 0.0;
  auto* tol_abs_opt =
      app.add_option("--tol-abs", tol_abs, "absolute tolerance override");
  auto* tol_rel_opt =
      app.add_option("--tol-rel", tol_rel, "relative tolerance override");

  std::string file_path, dims = "2..16", csv_path;
  std::size_t count = 0;
  std::uint64_t seed = 0;
  int restarts = 0;

  auto* cmd_axioms = app.add_subcommand("axioms", "sample the 3-product axioms");
  cmd_axioms->add_option("--file", file_path, "instance file")->required();
  std::size_t budget = 1000;
  cmd_axioms->add_option("--count", budget, "sample budget (default 1000)");
  auto* axioms_seed = cmd_axioms->add_option("--seed", seed, "sampler seed");

  auto* cmd_selfadjoint =
      app.add_subcommand("selfadjoint", "check 3-self-adjointness");
  cmd_selfadjoint->add_option("--file", file_path, "instance file")->required();

  auto* cmd_verify =
      app.add_subcommand("verify", "verify the inequality chain");
  cmd_verify->add_option("--file", file_path, "instance file")->required();

  auto* cmd_sweep =
      app.add_subcommand("sweep", "batch-verify random instances");
  cmd_sweep->add_option("--dims", dims, "dimension range LO..HI");
  cmd_sweep->add_option("--count", count, "instance count")->required();
  cmd_sweep->add_option("--seed", seed, "master seed")->required();
  cmd_sweep->add_option("--csv", csv_path, "per-instance CSV output path");
  std::string jsonl_path;
  cmd_sweep->add_option("--jsonl", jsonl_path,
                        "per-instance chain reports, one JSON object per line");

  auto* cmd_optimize =
      app.add_subcommand("optimize", "search for extremal configurations");
  cmd_optimize->add_option("--file", file_path, "instance file")->required();
  auto* restarts_opt =
      cmd_optimize->add_option("--restarts", restarts, "restart override");
  cmd_optimize->add_option("--csv", csv_path, "per-restart trace CSV path");

  auto* cmd_classical =
      app.add_subcommand("classical", "two-operator Euclidean reference");
  auto* classical_file =
      cmd_classical->add_option("--file", file_path, "instance file");
  auto* classical_count =
      cmd_classical->add_option("--count", count, "random pair count");
  cmd_classical->add_option("--dims", dims, "dimension range LO..HI");
  auto* classical_seed =
      cmd_classical->add_option("--seed", seed, "master seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return kExitInvalidInput;
  }

  if (*tol_abs_opt) common.tol_abs = tol_abs;
  if (*tol_rel_opt) common.tol_rel = tol_rel;

  try {
    if (*cmd_axioms)
      return run_axioms(file_path, budget,
                        *axioms_seed ? std::optional<std::uint64_t>(seed)
                                     : std::nullopt,
                        common);
    if (*cmd_selfadjoint) return run_selfadjoint(file_path, common);
    if (*cmd_verify) return run_verify(file_path, common);
    if (*cmd_sweep)
      return run_sweep(dims, count, seed, csv_path, jsonl_path, common);
    if (*cmd_optimize)
      return run_optimize(file_path,
                          *restarts_opt ? std::optional<int>(restarts)
                                        : std::nullopt,
                          csv_path, common);
    if (*cmd_classical) {
      if (*classical_file) return run_classical_file(file_path, common);
      if (!*classical_count || !*classical_seed)
        throw ParseError(
            "classical: needs --file, or --count with --seed for the "
            "random suite");
      return run_classical_random(dims, count, seed, common);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalidInput;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitInvalidInput;
  }
  return kExitInvalidInput;
}
