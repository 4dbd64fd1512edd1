#include "triup/sharpness.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <utility>

#include "triup/rng.hpp"
#include "triup/tolerances.hpp"

namespace triup {

namespace {

constexpr int kMaxDrawAttempts = 32;
constexpr double kMinLineStep = 1e-14;

void require_diagonal(const LinearOperator& op, const char* name) {
  if (!op.is_diagonal())
    throw PreconditionError(std::string("operator ") + name +
                            " must be diagonal for the sharpness search");
}

void validate_config(const OptimizerConfig& config) {
  if (config.restarts < 1)
    throw PreconditionError("optimizer needs at least one restart");
  if (config.max_iterations < 1 || config.initial_step <= 0.0 ||
      config.step_shrink <= 0.0 || config.step_shrink >= 1.0 ||
      config.convergence_tol <= 0.0 || config.fd_step_base <= 0.0 ||
      config.delta_floor <= 0.0 || config.falsify_tol <= 0.0)
    throw PreconditionError("optimizer config fields must be positive "
                            "(and step_shrink in (0,1))");
}

// Ratio of the expanded-form bound to the uncertainty product for
// diagonal entry sequences, skipping the generic operator plumbing.
// Kept in lock-step with sharpness_ratio (the tests pin the agreement).
struct RatioEvaluator {
  const TriProductSpace& space;
  double delta_floor;

  RatioValue eval(std::span<const double> da, std::span<const double> db,
                  std::span<const double> dc, const StateVector& x) const {
    const LinearOperator a = LinearOperator::diagonal(
        std::vector<double>(da.begin(), da.end()));
    const LinearOperator b = LinearOperator::diagonal(
        std::vector<double>(db.begin(), db.end()));
    const LinearOperator c = LinearOperator::diagonal(
        std::vector<double>(dc.begin(), dc.end()));
    return sharpness_ratio(space, a, b, c, x, delta_floor);
  }
};

struct RestartOutcome {
  bool degenerate = true;
  double best = -std::numeric_limits<double>::infinity();
  std::vector<double> best_ambient;
  long long iterations = 0;
};

// Shared ascent engine. `project` maps an ambient point onto the
// feasible set in place (renormalized state, clamped diagonals) and
// reports failure near the null-cube cone; `evaluate` returns the
// objective of a projected point or nothing when the ratio is
// undefined there.
RestartOutcome run_restart(
    std::uint64_t restart_seed, std::size_t ambient_dimension,
    const OptimizerConfig& config,
    const std::function<void(Sampler&, std::vector<double>&)>& draw,
    const std::function<bool(std::vector<double>&)>& project,
    const std::function<std::optional<double>(const std::vector<double>&)>&
        evaluate) {
  Sampler rng(restart_seed);
  RestartOutcome outcome;

  std::vector<double> z(ambient_dimension);
  std::optional<double> f;
  for (int attempt = 0; attempt < kMaxDrawAttempts; ++attempt) {
    draw(rng, z);
    if (!project(z)) continue;  // null-cube draw, resample
    f = evaluate(z);
    if (f) break;
  }
  if (!f) return outcome;  // degenerate restart

  outcome.degenerate = false;
  outcome.best = *f;
  outcome.best_ambient = z;

  std::vector<double> probe, trial;
  std::vector<double> gradient(ambient_dimension);
  for (int iter = 0; iter < config.max_iterations; ++iter) {
    ++outcome.iterations;

    // Central finite differences of the projected objective; fall back
    // to one-sided differences at the edge of the defined region.
    for (std::size_t i = 0; i < ambient_dimension; ++i) {
      const double h = config.fd_step_base * (1.0 + std::abs(z[i]));
      auto probe_at = [&](double delta) -> std::optional<double> {
        probe = z;
        probe[i] += delta;
        if (!project(probe)) return std::nullopt;
        return evaluate(probe);
      };
      const std::optional<double> fp = probe_at(h);
      const std::optional<double> fm = probe_at(-h);
      if (fp && fm)
        gradient[i] = (*fp - *fm) / (2.0 * h);
      else if (fp)
        gradient[i] = (*fp - *f) / h;
      else if (fm)
        gradient[i] = (*f - *fm) / h;
      else
        gradient[i] = 0.0;
    }

    double gnorm = 0.0;
    for (double g : gradient) gnorm += g * g;
    gnorm = std::sqrt(gnorm);
    if (gnorm == 0.0) break;

    // Backtracking line search along the normalized ascent direction.
    double step = config.initial_step;
    double improvement = 0.0;
    bool accepted = false;
    while (step > kMinLineStep) {
      trial = z;
      for (std::size_t i = 0; i < ambient_dimension; ++i)
        trial[i] += step * gradient[i] / gnorm;
      if (project(trial)) {
        const std::optional<double> ft = evaluate(trial);
        if (ft && *ft > *f) {
          improvement = *ft - *f;
          z = trial;
          f = ft;
          accepted = true;
          break;
        }
      }
      step *= config.step_shrink;
    }
    if (!accepted) break;
    if (outcome.best < *f) {
      outcome.best = *f;
      outcome.best_ambient = z;
    }
    if (improvement < config.convergence_tol) break;
  }
  return outcome;
}

}  // namespace

RatioValue sharpness_ratio(const TriProductSpace& space,
                           const LinearOperator& a_op,
                           const LinearOperator& b_op,
                           const LinearOperator& c_op, const StateVector& x,
                           double delta_floor) {
  require_diagonal(a_op, "A");
  require_diagonal(b_op, "B");
  require_diagonal(c_op, "C");
  if (delta_floor <= 0.0)
    throw PreconditionError("delta_floor must be positive");

  const double da = delta3(space, a_op, x);
  const double db = delta3(space, b_op, x);
  const double dc = delta3(space, c_op, x);
  const double lhs = da * db * dc;
  const ValueWithScale rhs = expanded_rhs_detailed(space, a_op, b_op, c_op, x);

  const double floor =
      std::max(delta_floor * delta_floor * delta_floor,
               kRatioNoiseRelFloor * (1.0 + rhs.scale));
  RatioValue ratio;
  if (lhs < floor) return ratio;  // undefined, never a division blow-up
  ratio.defined = true;
  ratio.value = rhs.value / lhs;
  return ratio;
}

namespace {

SharpnessResult reduce_restarts(
    const TriProductSpace& space, const OptimizerConfig& config,
    std::size_t ambient_dimension,
    const std::function<void(Sampler&, std::vector<double>&)>& draw,
    const std::function<bool(std::vector<double>&)>& project,
    const std::function<std::optional<double>(const std::vector<double>&)>&
        evaluate,
    const std::function<void(const std::vector<double>&, SharpnessResult&)>&
        unpack,
    const char* degenerate_hint) {
  SharpnessResult result;
  result.best_ratio = -std::numeric_limits<double>::infinity();
  bool any_defined = false;

  for (int r = 0; r < config.restarts; ++r) {
    const RestartOutcome outcome =
        run_restart(derive_seed(config.seed, static_cast<std::uint64_t>(r)),
                    ambient_dimension, config, draw, project, evaluate);
    result.iterations_total += outcome.iterations;
    if (config.record_trace)
      result.ratio_trace.push_back(outcome.degenerate ? -1.0 : outcome.best);
    if (outcome.degenerate) continue;
    any_defined = true;
    // strict improvement only: ties keep the lowest restart index
    if (outcome.best > result.best_ratio) {
      result.best_ratio = outcome.best;
      unpack(outcome.best_ambient, result);
    }
  }
  result.restarts_used = config.restarts;

  if (!any_defined)
    throw DegenerateSearchError(
        std::string("every restart hit only undefined ratios; ") +
        degenerate_hint);

  // A ratio above 1 + falsify_tol contradicts the bound; it counts only
  // if it survives re-evaluation through the uncertainty module.
  if (result.best_ratio > 1.0 + config.falsify_tol) {
    const LinearOperator a = LinearOperator::diagonal(result.best_operators[0]);
    const LinearOperator b = LinearOperator::diagonal(result.best_operators[1]);
    const LinearOperator c = LinearOperator::diagonal(result.best_operators[2]);
    const ChainReport chain =
        verify_chain(space, a, b, c, result.best_state);
    if (chain.lhs_product > 0.0 &&
        chain.rhs_expanded / chain.lhs_product > 1.0 + config.falsify_tol)
      result.falsification_flag = true;
  }
  return result;
}

}  // namespace

SharpnessResult optimize_state(const TriProductSpace& space,
                               const LinearOperator& a_op,
                               const LinearOperator& b_op,
                               const LinearOperator& c_op,
                               const OptimizerConfig& config) {
  validate_config(config);
  require_diagonal(a_op, "A");
  require_diagonal(b_op, "B");
  require_diagonal(c_op, "C");
  const std::size_t n = space.dimension();
  if (a_op.dimension() != n || b_op.dimension() != n || c_op.dimension() != n)
    throw DimensionError("optimize_state: operator dimensions must match the space");

  const RatioEvaluator ratio{space, config.delta_floor};
  const auto& da = a_op.diagonal_entries();
  const auto& db = b_op.diagonal_entries();
  const auto& dc = c_op.diagonal_entries();

  auto draw = [n](Sampler& rng, std::vector<double>& z) {
    for (std::size_t i = 0; i < n; ++i) z[i] = rng.signed_unit();
  };
  auto project = [&space](std::vector<double>& z) {
    const double s = space.eval3(z, z, z);
    if (std::abs(s) < kNullCubeEpsilon) return false;
    const double scale = std::cbrt(s);
    for (double& c : z) c /= scale;
    return true;
  };
  auto evaluate = [&](const std::vector<double>& z) -> std::optional<double> {
    const RatioValue v = ratio.eval(da, db, dc, space.state(z));
    if (!v.defined) return std::nullopt;
    return v.value;
  };
  auto unpack = [&](const std::vector<double>& z, SharpnessResult& out) {
    out.best_state = space.state(z);
    out.best_operators = {da, db, dc};
  };

  return reduce_restarts(space, config, n, draw, project, evaluate, unpack,
                         "the operators admit no state with all three "
                         "uncertainties above the floor");
}

SharpnessResult optimize_joint(const TriProductSpace& space, double diag_low,
                               double diag_high,
                               const OptimizerConfig& config) {
  validate_config(config);
  if (!(diag_low < diag_high))
    throw PreconditionError("optimize_joint requires diag_low < diag_high");
  const std::size_t n = space.dimension();
  const std::size_t ambient = 4 * n;  // state + three diagonals

  const RatioEvaluator ratio{space, config.delta_floor};

  auto draw = [=](Sampler& rng, std::vector<double>& z) {
    for (std::size_t i = 0; i < n; ++i) z[i] = rng.signed_unit();
    for (std::size_t i = n; i < 4 * n; ++i)
      z[i] = rng.uniform(diag_low, diag_high);
  };
  auto project = [&space, n, diag_low, diag_high](std::vector<double>& z) {
    const std::span<const double> state_part(z.data(), n);
    const double s = space.eval3(state_part, state_part, state_part);
    if (std::abs(s) < kNullCubeEpsilon) return false;
    const double scale = std::cbrt(s);
    for (std::size_t i = 0; i < n; ++i) z[i] /= scale;
    for (std::size_t i = n; i < 4 * n; ++i)
      z[i] = std::min(diag_high, std::max(diag_low, z[i]));
    return true;
  };
  auto evaluate = [&](const std::vector<double>& z) -> std::optional<double> {
    const std::span<const double> xs(z.data(), n);
    const RatioValue v =
        ratio.eval(std::span<const double>(z.data() + n, n),
                   std::span<const double>(z.data() + 2 * n, n),
                   std::span<const double>(z.data() + 3 * n, n),
                   space.state(std::vector<double>(xs.begin(), xs.end())));
    if (!v.defined) return std::nullopt;
    return v.value;
  };
  auto unpack = [&](const std::vector<double>& z, SharpnessResult& out) {
    out.best_state =
        space.state(std::vector<double>(z.begin(), z.begin() + n));
    for (int op = 0; op < 3; ++op)
      out.best_operators[op] = std::vector<double>(
          z.begin() + (op + 1) * n, z.begin() + (op + 2) * n);
  };

  return reduce_restarts(space, config, ambient, draw, project, evaluate,
                         unpack,
                         "every diagonal family member collapsed; widen the "
                         "bounds or raise the dimension");
}

RandomInstance random_instance(const InstanceGenConfig& config) {
  if (config.dimension < 2)
    throw PreconditionError("random_instance requires dimension >= 2");
  if (config.diag_low > config.diag_high)
    throw PreconditionError("random_instance: diag_low > diag_high");

  Sampler rng(config.seed);
  const std::size_t n = config.dimension;

  // draw order: weights, A, B, C, then state attempts
  std::vector<double> weights(n, 1.0);
  if (config.weights == WeightMode::kRandom)
    for (double& w : weights) w = rng.uniform(0.5, 2.0);
  TriProductSpace space = TriProductSpace::pointwise(std::move(weights));

  std::array<std::vector<double>, 3> diags;
  for (auto& d : diags) {
    d.resize(n);
    for (double& v : d) v = rng.uniform(config.diag_low, config.diag_high);
  }

  std::vector<double> coords(n);
  StateVector state;
  constexpr int kStateAttemptCap = 10000;
  int attempt = 0;
  for (;; ++attempt) {
    if (attempt >= kStateAttemptCap)
      throw Error("random_instance: no state cleared the null-cube cone");
    for (double& c : coords) c = rng.signed_unit();
    const StateVector candidate = space.state(coords);
    if (std::abs(candidate.cube_sum()) < kNullCubeEpsilon) continue;
    state = space.cube_normalize(candidate);
    break;
  }

  return RandomInstance{std::move(space),
                        {LinearOperator::diagonal(std::move(diags[0])),
                         LinearOperator::diagonal(std::move(diags[1])),
                         LinearOperator::diagonal(std::move(diags[2]))},
                        std::move(state)};
}

}  // namespace triup
