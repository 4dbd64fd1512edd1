#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "triup/linear_operator.hpp"
#include "triup/tri_product_space.hpp"
#include "triup/uncertainty.hpp"

namespace triup {

/// Ratios are reported only where the uncertainty product dominates the
/// cancellation noise of the expanded form; below this relative floor
/// (times 1 + the form's magnitude scale) the quotient carries no
/// information and is classified undefined.
inline constexpr double kRatioNoiseRelFloor = 1e-8;

/// Multi-start search parameters. Defaults are sized for desk-scale
/// instances (n <= 16).
struct OptimizerConfig {
  int restarts = 64;
  int max_iterations = 500;        // per restart
  double initial_step = 0.1;
  double step_shrink = 0.5;
  double convergence_tol = 1e-12;  // stop when improvement drops below
  double fd_step_base = 1e-6;      // h_i = fd_step_base * (1 + |x_i|)
  double delta_floor = 1e-9;       // epsilon below which ratios are undefined
  double falsify_tol = 1e-6;       // flag ratios above 1 + falsify_tol
  std::uint64_t seed = 0;
  bool record_trace = false;       // keep per-restart best ratios
};

/// rhs_expanded / lhs_product, or undefined when the denominator sits
/// below the floor.
struct RatioValue {
  bool defined = false;
  double value = 0.0;
};

struct SharpnessResult {
  double best_ratio = 0.0;
  StateVector best_state;
  std::array<std::vector<double>, 3> best_operators;  // diagonal entries
  int restarts_used = 0;
  long long iterations_total = 0;
  /// Per-restart best ratio when recorded; -1 marks a degenerate restart.
  std::vector<double> ratio_trace;
  /// True only if a re-evaluated ratio exceeded 1 + falsify_tol, which a
  /// correct implementation never produces.
  bool falsification_flag = false;
};

/// Requires diagonal operators (hence 3-self-adjoint on pointwise
/// spaces) and a cube-normalized state.
RatioValue sharpness_ratio(const TriProductSpace& space,
                           const LinearOperator& a_op,
                           const LinearOperator& b_op,
                           const LinearOperator& c_op, const StateVector& x,
                           double delta_floor = 1e-9);

/// Maximizes the ratio over states for fixed diagonal operators:
/// multi-start seeded draws, central finite-difference ascent in ambient
/// coordinates, cube renormalization after every step, backtracking step
/// control. Deterministic for a fixed seed; ties across restarts keep
/// the lowest restart index. Throws DegenerateSearchError when every
/// restart is degenerate.
SharpnessResult optimize_state(const TriProductSpace& space,
                               const LinearOperator& a_op,
                               const LinearOperator& b_op,
                               const LinearOperator& c_op,
                               const OptimizerConfig& config);

/// Same search over states and the three diagonal entry sequences
/// jointly; diagonals are clamped to [diag_low, diag_high].
SharpnessResult optimize_joint(const TriProductSpace& space, double diag_low,
                               double diag_high, const OptimizerConfig& config);

enum class WeightMode { kUnit, kRandom };

struct InstanceGenConfig {
  std::size_t dimension = 3;
  WeightMode weights = WeightMode::kUnit;
  double diag_low = -2.0;
  double diag_high = 2.0;
  std::uint64_t seed = 0;
};

struct RandomInstance {
  TriProductSpace space;
  std::array<LinearOperator, 3> operators;
  StateVector state;
};

/// Seeded, bit-reproducible instance: weights unit or uniform(0.5, 2),
/// diagonals uniform in bounds, state drawn uniform(-1,1) and resampled
/// until clear of the null-cube cone, then cube-normalized.
/// Requires dimension >= 2.
RandomInstance random_instance(const InstanceGenConfig& config);

}  // namespace triup
