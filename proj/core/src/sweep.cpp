#include "triup/sweep.hpp"

#include <limits>

#include "triup/errors.hpp"
#include "triup/rng.hpp"
#include "triup/sharpness.hpp"
#include "triup/uncertainty.hpp"

namespace triup {

SweepReport run_sweep(const SweepParams& params) {
  if (params.dim_low < 2 || params.dim_high < params.dim_low)
    throw PreconditionError("sweep dimensions must satisfy 2 <= lo <= hi");
  if (params.count == 0) throw PreconditionError("sweep count must be positive");

  SweepReport report;
  report.params = params;
  report.min_margin = std::numeric_limits<double>::infinity();
  report.outcomes.reserve(params.count);

  const std::size_t span = params.dim_high - params.dim_low + 1;
  for (std::size_t k = 0; k < params.count; ++k) {
    InstanceGenConfig gen;
    gen.dimension = params.dim_low + (k % span);
    gen.weights = (k % 2 == 0) ? WeightMode::kUnit : WeightMode::kRandom;
    gen.diag_low = params.diag_low;
    gen.diag_high = params.diag_high;
    gen.seed = derive_seed(params.seed, k);
    const RandomInstance instance = random_instance(gen);

    const ChainReport chain = verify_chain(
        instance.space, instance.operators[0], instance.operators[1],
        instance.operators[2], instance.state, params.tolerances);
    const OrderInvarianceReport order = operator_order_invariance(
        instance.space, instance.operators[0], instance.operators[1],
        instance.operators[2], instance.state);

    SweepOutcome outcome;
    outcome.index = k;
    outcome.dimension = gen.dimension;
    outcome.chain = chain;
    outcome.margin = chain.margin;
    outcome.identity_rel = chain.identity_deviation / chain.identity_scale;
    outcome.order_rel = order.max_deviation / order.scale;
    outcome.degenerate_tight = chain.degenerate_tight;
    outcome.ok = chain.chain_ok && outcome.order_rel <= kIdentityRelTol;

    if (!outcome.ok)
      ++report.fail;
    else if (outcome.degenerate_tight)
      ++report.degenerate_tight;
    else
      ++report.pass;

    report.min_margin = std::min(report.min_margin, outcome.margin);
    report.max_identity_rel =
        std::max(report.max_identity_rel, outcome.identity_rel);
    report.max_order_rel = std::max(report.max_order_rel, outcome.order_rel);
    report.outcomes.push_back(outcome);
  }
  return report;
}

}  // namespace triup
