#pragma once

#include <cstdint>
#include <vector>

#include "triup/tolerances.hpp"
#include "triup/uncertainty.hpp"

namespace triup {

/// Batch verification over seeded random diagonal instances.
struct SweepParams {
  std::size_t dim_low = 2;
  std::size_t dim_high = 16;
  std::size_t count = 10000;
  std::uint64_t seed = 0;
  double diag_low = -2.0;
  double diag_high = 2.0;
  Tolerances tolerances;
};

struct SweepOutcome {
  std::size_t index = 0;
  std::size_t dimension = 0;
  double margin = 0.0;           // lhs_product - rhs_expanded
  double identity_rel = 0.0;     // identity_deviation / identity_scale
  double order_rel = 0.0;        // order max_deviation / scale
  bool degenerate_tight = false;
  bool ok = false;
  ChainReport chain;             // the full per-instance evaluation
};

struct SweepReport {
  SweepParams params;
  std::size_t pass = 0;
  std::size_t degenerate_tight = 0;
  std::size_t fail = 0;
  double min_margin = 0.0;
  double max_identity_rel = 0.0;
  double max_order_rel = 0.0;
  std::vector<SweepOutcome> outcomes;  // one per instance, in index order

  bool all_ok() const { return fail == 0; }
};

/// Instance k uses dimension dim_low + (k mod span), derived seed
/// derive_seed(seed, k), unit weights for even k and random weights for
/// odd k. Every instance is classified exactly once:
/// pass + degenerate_tight + fail == count.
SweepReport run_sweep(const SweepParams& params);

}  // namespace triup
