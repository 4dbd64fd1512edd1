#include "triup/uncertainty.hpp"

#include <cmath>

#include "doctest.h"
#include "oracle.hpp"
#include "triup/errors.hpp"
#include "triup/rng.hpp"
#include "triup/sharpness.hpp"

using namespace triup;

namespace {

struct Projection3 {
  TriProductSpace space = TriProductSpace::unit(3);
  LinearOperator a = LinearOperator::diagonal({1.0, 0.0, 0.0});
  LinearOperator b = LinearOperator::diagonal({0.0, 1.0, 0.0});
  LinearOperator c = LinearOperator::diagonal({0.0, 0.0, 1.0});
  StateVector x = space.cube_normalize(space.state({1.0, 1.0, 1.0}));
};

constexpr double kLhsProjection = 10.0 / 81.0;
constexpr double kRhsProjection = 2.0 / 27.0;

}  // namespace

TEST_SUITE("uncertainty") {

TEST_CASE("mean3") {
  const Projection3 inst;
  CHECK(mean3(inst.space, LinearOperator::identity(3), inst.x) ==
        doctest::Approx(1.0).epsilon(1e-14));
  CHECK(mean3(inst.space, inst.a, inst.x) ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  CHECK(mean3(inst.space, LinearOperator::zero(3), inst.x) == 0.0);

  const auto not_normalized = inst.space.state({1.0, 1.0, 1.0});
  CHECK_THROWS_AS(mean3(inst.space, inst.a, not_normalized),
                  PreconditionError);
}

TEST_CASE("delta3") {
  const Projection3 inst;
  CHECK(delta3(inst.space, LinearOperator::identity(3), inst.x) ==
        doctest::Approx(0.0).epsilon(1e-14));

  // basis vectors are eigenstates of any diagonal operator
  const auto e2 = inst.space.basis_state(1);
  CHECK(delta3(inst.space, LinearOperator::diagonal({3.0, -1.0, 0.5}), e2) ==
        0.0);

  const double got = delta3(inst.space, inst.a, inst.x);
  CHECK(got == doctest::Approx(std::cbrt(10.0 / 81.0)).epsilon(1e-13));
  CHECK(got == doctest::Approx(0.49793386072857385).epsilon(1e-12));
}

TEST_CASE("centered_rhs") {
  const Projection3 inst;
  SUBCASE("identity in the third slot kills the product") {
    CHECK(centered_rhs(inst.space, inst.a, inst.b,
                       LinearOperator::identity(3), inst.x) ==
          doctest::Approx(0.0).epsilon(1e-14));
  }
  SUBCASE("projection instance") {
    CHECK(centered_rhs(inst.space, inst.a, inst.b, inst.c, inst.x) ==
          doctest::Approx(kRhsProjection).epsilon(1e-13));
  }
  SUBCASE("two-point cancellation") {
    const auto r2 = TriProductSpace::unit(2);
    const auto x = r2.cube_normalize(r2.state({1.0, 1.0}));
    CHECK(centered_rhs(r2, LinearOperator::diagonal({1.0, 0.0}),
                       LinearOperator::diagonal({0.0, 1.0}),
                       LinearOperator::diagonal({1.0, -1.0}),
                       x) == doctest::Approx(0.0).epsilon(1e-15));
  }
}

TEST_CASE("expanded_rhs") {
  const Projection3 inst;
  SUBCASE("all zero operators") {
    const auto zero = LinearOperator::zero(3);
    CHECK(expanded_rhs(inst.space, zero, zero, zero, inst.x) == 0.0);
  }
  SUBCASE("all identity operators") {
    const auto id = LinearOperator::identity(3);
    CHECK(expanded_rhs(inst.space, id, id, id, inst.x) ==
          doctest::Approx(0.0).epsilon(1e-13));
  }
  SUBCASE("projection instance matches the centered form and the oracle") {
    const double got = expanded_rhs(inst.space, inst.a, inst.b, inst.c, inst.x);
    CHECK(got == doctest::Approx(kRhsProjection).epsilon(1e-13));
    const oracle::Vec w{1.0L, 1.0L, 1.0L};
    const double via_oracle = static_cast<double>(oracle::expanded_rhs(
        w, oracle::diag_mat({1.0, 0.0, 0.0}), oracle::diag_mat({0.0, 1.0, 0.0}),
        oracle::diag_mat({0.0, 0.0, 1.0}), oracle::to_vec(inst.x.coords())));
    CHECK(got == doctest::Approx(via_oracle).epsilon(1e-13));
  }
}

TEST_CASE("amgm_bound") {
  CHECK(amgm_bound(0.0, 0.0, 0.0) == 0.0);
  const double d = 0.37;
  CHECK(amgm_bound(d, d, d) == doctest::Approx(d * d * d).epsilon(1e-15));
  const double dp = std::cbrt(10.0 / 81.0);
  CHECK(amgm_bound(dp, dp, dp) ==
        doctest::Approx(10.0 / 81.0).epsilon(1e-13));
  CHECK_THROWS_AS(amgm_bound(-0.1, 1.0, 1.0), PreconditionError);
}

TEST_CASE("verify_chain on the projection instance") {
  const Projection3 inst;
  const ChainReport report =
      verify_chain(inst.space, inst.a, inst.b, inst.c, inst.x);
  CHECK(report.a == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  CHECK(report.lhs_product == doctest::Approx(kLhsProjection).epsilon(1e-13));
  CHECK(report.amgm_bound == doctest::Approx(kLhsProjection).epsilon(1e-13));
  CHECK(report.rhs_expanded == doctest::Approx(kRhsProjection).epsilon(1e-13));
  CHECK(report.rhs_centered == doctest::Approx(kRhsProjection).epsilon(1e-13));
  CHECK(report.identity_deviation <= 1e-10 * report.identity_scale);
  CHECK(report.chain_ok);
  CHECK_FALSE(report.degenerate_tight);
  CHECK(report.margin ==
        doctest::Approx(kLhsProjection - kRhsProjection).epsilon(1e-12));
}

TEST_CASE("verify_chain eigenstate instance is degenerate-tight") {
  const auto r3 = TriProductSpace::unit(3);
  const auto e1 = r3.basis_state(0);
  const auto d1 = LinearOperator::diagonal({2.0, -1.0, 0.5});
  const auto d2 = LinearOperator::diagonal({0.1, 3.0, -2.0});
  const ChainReport report = verify_chain(r3, d1, d2, d1, e1);
  CHECK(report.delta_a == 0.0);
  CHECK(report.lhs_product == 0.0);
  CHECK(report.rhs_expanded == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(report.chain_ok);
  CHECK(report.degenerate_tight);
}

TEST_CASE("verify_chain rejects non-self-adjoint operators") {
  const auto r2 = TriProductSpace::unit(2);
  const auto swap = LinearOperator::dense({{0.0, 1.0}, {1.0, 0.0}});
  const auto id = LinearOperator::identity(2);
  const auto x = r2.cube_normalize(r2.state({1.0, 0.5}));
  CHECK_THROWS_AS(verify_chain(r2, swap, id, id, x), RejectedInstanceError);
  try {
    verify_chain(r2, swap, id, id, x);
  } catch (const RejectedInstanceError& e) {
    CHECK(e.operator_name() == "A");
    CHECK(e.witness().i == 2);
    CHECK(e.witness().j == 1);
    CHECK(e.witness().k == 1);
  }
}

TEST_CASE("operator order invariance") {
  const Projection3 inst;
  SUBCASE("projections have all seven values zero") {
    const auto report = operator_order_invariance(inst.space, inst.a, inst.b,
                                                  inst.c, inst.x);
    for (double v : report.values) CHECK(v == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(report.max_deviation <= 1e-12 * report.scale);
  }
  SUBCASE("equal diagonals give the cubic moment") {
    const auto d = LinearOperator::diagonal({1.0, 2.0, 3.0});
    const auto report =
        operator_order_invariance(inst.space, d, d, d, inst.x);
    for (double v : report.values)
      CHECK(v == doctest::Approx(12.0).epsilon(1e-13));  // (1+8+27)/3
    CHECK(report.max_deviation <= 1e-12 * report.scale);
  }
}

TEST_CASE("chain properties over random diagonal instances") {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    InstanceGenConfig gen;
    gen.dimension = 2 + (seed % 7);
    gen.weights = (seed % 2 == 0) ? WeightMode::kUnit : WeightMode::kRandom;
    gen.seed = derive_seed(1234, seed);
    const RandomInstance inst = random_instance(gen);
    const ChainReport report =
        verify_chain(inst.space, inst.operators[0], inst.operators[1],
                     inst.operators[2], inst.state);
    CHECK(report.chain_ok);
    CHECK(report.amgm_bound + 1e-12 >= report.lhs_product * (1.0 - 1e-9));
    CHECK(report.identity_deviation <= 1e-10 * report.identity_scale);
    const auto order =
        operator_order_invariance(inst.space, inst.operators[0],
                                  inst.operators[1], inst.operators[2],
                                  inst.state);
    CHECK(order.max_deviation <= 1e-10 * order.scale);
  }
}

TEST_CASE("shift invariance and scale covariance") {
  Sampler rng(77);
  for (int trial = 0; trial < 100; ++trial) {
    InstanceGenConfig gen;
    gen.dimension = 2 + (trial % 5);
    gen.seed = derive_seed(4321, static_cast<std::uint64_t>(trial));
    const RandomInstance inst = random_instance(gen);
    const auto& [space, ops, x] = inst;
    const double mu = rng.uniform(-3.0, 3.0);
    const double lambda = rng.uniform(-3.0, 3.0);

    const auto shifted = ops[0].shifted(mu);
    const double mean_base = mean3(space, ops[0], x);
    const double mean_shift = mean3(space, shifted, x);
    CHECK(std::abs(mean_shift - (mean_base + mu)) <=
          1e-9 * (1.0 + std::abs(mean_base) + std::abs(mu)));

    const double delta_base = delta3(space, ops[0], x);
    CHECK(std::abs(delta3(space, shifted, x) - delta_base) <=
          1e-9 * (1.0 + delta_base));

    const auto rhs_base = expanded_rhs_detailed(space, ops[0], ops[1], ops[2], x);
    const auto rhs_shift = expanded_rhs_detailed(space, shifted, ops[1], ops[2], x);
    CHECK(std::abs(rhs_shift.value - rhs_base.value) <=
          1e-9 * (1.0 + rhs_base.value + rhs_base.scale + rhs_shift.scale));

    const double centered_base = centered_rhs(space, ops[0], ops[1], ops[2], x);
    const double centered_shift = centered_rhs(space, shifted, ops[1], ops[2], x);
    CHECK(std::abs(centered_shift - centered_base) <=
          1e-9 * (1.0 + centered_base + rhs_base.scale));

    const auto scaled = ops[0].scaled(lambda);
    CHECK(std::abs(delta3(space, scaled, x) - std::abs(lambda) * delta_base) <=
          1e-9 * (1.0 + std::abs(lambda) * delta_base));
    const double centered_scaled = centered_rhs(space, scaled, ops[1], ops[2], x);
    CHECK(std::abs(centered_scaled - std::abs(lambda) * centered_base) <=
          1e-9 * (1.0 + std::abs(lambda) * centered_base + rhs_base.scale));
  }
}

TEST_CASE("eigenstate collapse zeroes both bound forms") {
  const auto r4 = TriProductSpace::unit(4);
  const auto e3 = r4.basis_state(2);
  const auto a = LinearOperator::diagonal({1.0, 2.0, 3.0, 4.0});
  const auto b = LinearOperator::diagonal({-1.0, 0.5, 2.0, 1.0});
  CHECK(delta3(r4, a, e3) == 0.0);
  CHECK(centered_rhs(r4, a, b, a, e3) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(expanded_rhs(r4, a, b, a, e3) == doctest::Approx(0.0).epsilon(1e-14));
}

}  // TEST_SUITE
