#include "triup/linear_operator.hpp"

#include <cmath>

#include "doctest.h"
#include "oracle.hpp"
#include "triup/errors.hpp"
#include "triup/rng.hpp"
#include "triup/tri_product_space.hpp"

using namespace triup;

namespace {

LinearOperator swap2() { return LinearOperator::dense({{0.0, 1.0}, {1.0, 0.0}}); }

LinearOperator random_diagonal_op(Sampler& rng, std::size_t n) {
  std::vector<double> d(n);
  for (double& v : d) v = rng.uniform(-2.0, 2.0);
  return LinearOperator::diagonal(std::move(d));
}

// dense matrix with at least one off-diagonal entry of magnitude >= 0.1
LinearOperator random_offdiagonal_op(Sampler& rng, std::size_t n) {
  std::vector<double> flat(n * n);
  for (double& v : flat) v = rng.uniform(-1.0, 1.0);
  const std::size_t i = static_cast<std::size_t>(rng.uniform(0.0, 1.0) * n) % n;
  std::size_t j = (i + 1) % n;
  double big = rng.uniform(0.1, 1.0);
  if (rng.unit() < 0.5) big = -big;
  flat[i * n + j] = big;
  return LinearOperator::dense(n, std::move(flat));
}

oracle::Mat to_oracle(const LinearOperator& op) {
  const std::size_t n = op.dimension();
  oracle::Mat m(n, oracle::Vec(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m[i][j] = op.entry(i, j);
  return m;
}

}  // namespace

TEST_SUITE("operators") {

TEST_CASE("apply") {
  const std::vector<double> x{1.0, 1.0};
  CHECK(LinearOperator::identity(2).apply_raw(x) == x);
  CHECK(LinearOperator::diagonal({2.0, 3.0}).apply_raw(x) ==
        std::vector<double>{2.0, 3.0});
  CHECK(swap2().apply_raw(std::vector<double>{1.0, 0.0}) ==
        std::vector<double>{0.0, 1.0});
  CHECK_THROWS_AS(LinearOperator::identity(3).apply_raw(x), DimensionError);
}

TEST_CASE("apply rewraps states with a fresh cube sum") {
  const auto r2 = TriProductSpace::unit(2);
  const auto x = r2.state({1.0, 1.0});
  const auto y = apply(r2, LinearOperator::diagonal({2.0, 3.0}), x);
  CHECK(y.coords() == std::vector<double>{2.0, 3.0});
  CHECK(y.cube_sum() == r2.eval3(y, y, y));
}

TEST_CASE("compose") {
  const auto ab = compose(LinearOperator::diagonal({2.0, 3.0}),
                          LinearOperator::diagonal({5.0, 7.0}));
  CHECK(ab.is_diagonal());
  CHECK(ab.diagonal_entries() == std::vector<double>{10.0, 21.0});

  const auto a = swap2();
  const auto ai = compose(a, LinearOperator::identity(2));
  const std::vector<double> probe{0.25, -1.5};
  CHECK(ai.apply_raw(probe) == a.apply_raw(probe));

  const auto involution = compose(a, a);
  CHECK(involution.apply_raw(probe) == probe);

  CHECK_THROWS_AS(compose(a, LinearOperator::identity(3)), DimensionError);
}

TEST_CASE("compose is associative on random vectors") {
  Sampler rng(23);
  const std::size_t n = 4;
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> fa(n * n), fb(n * n), fc(n * n), x(n);
    for (double& v : fa) v = rng.signed_unit();
    for (double& v : fb) v = rng.signed_unit();
    for (double& v : fc) v = rng.signed_unit();
    for (double& v : x) v = rng.signed_unit();
    const auto a = LinearOperator::dense(n, fa);
    const auto b = LinearOperator::dense(n, fb);
    const auto c = LinearOperator::dense(n, fc);
    const auto left = compose(compose(a, b), c).apply_raw(x);
    const auto right = compose(a, compose(b, c)).apply_raw(x);
    for (std::size_t i = 0; i < n; ++i)
      CHECK(std::abs(left[i] - right[i]) <=
            1e-10 * (1.0 + std::abs(left[i]) + std::abs(right[i])));
  }
}

TEST_CASE("shifted and scaled") {
  const auto a = LinearOperator::diagonal({1.0, -2.0});
  CHECK(a.shifted(3.0).diagonal_entries() == std::vector<double>{4.0, 1.0});
  CHECK(a.scaled(-2.0).diagonal_entries() == std::vector<double>{-2.0, 4.0});
  const auto d = swap2().shifted(1.0);
  CHECK(d.entry(0, 0) == 1.0);
  CHECK(d.entry(0, 1) == 1.0);
}

TEST_CASE("diagonal operators are 3-self-adjoint") {
  const auto space = TriProductSpace::pointwise({1.0, 0.5, 2.0});
  const auto check =
      check_3_self_adjoint(space, LinearOperator::diagonal({1.0, -7.0, 0.3}));
  CHECK(check.ok);
  CHECK_FALSE(check.witness.has_value());
  CHECK(check.max_discrepancy == 0.0);

  CHECK(check_3_self_adjoint(space, LinearOperator::zero(3)).ok);
}

TEST_CASE("the swap matrix fails with the canonical witness (2,1,1)") {
  const auto r2 = TriProductSpace::unit(2);
  const auto check = check_3_self_adjoint(r2, swap2());
  CHECK_FALSE(check.ok);
  REQUIRE(check.witness.has_value());
  const SelfAdjointnessWitness& w = *check.witness;
  CHECK(w.i == 2);
  CHECK(w.j == 1);
  CHECK(w.k == 1);
  CHECK(w.op_first == 1.0);   // <A e_2, e_1, e_1>
  CHECK(w.op_second == 0.0);  // <e_2, A e_1, e_1>
  CHECK(w.op_third == 0.0);
  CHECK(w.discrepancy == 1.0);
}

TEST_CASE("diagonal characterization over seeded random operators") {
  Sampler rng(41);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + (rng.next_u64() % 7);  // 2..8
    const auto space = TriProductSpace::unit(n);

    const auto diag_check =
        check_3_self_adjoint(space, random_diagonal_op(rng, n));
    CHECK(diag_check.ok);

    const auto dense_op = random_offdiagonal_op(rng, n);
    const auto dense_check = check_3_self_adjoint(space, dense_op);
    CHECK_FALSE(dense_check.ok);
    REQUIRE(dense_check.witness.has_value());

    // cross-check every reported slot value against the closed form
    const SelfAdjointnessWitness& w = *dense_check.witness;
    const oracle::SlotValues expected = oracle::closed_form_slots(
        oracle::Vec(n, 1.0L), to_oracle(dense_op), w.i, w.j, w.k);
    CHECK(w.op_first ==
          doctest::Approx(static_cast<double>(expected.first)).epsilon(1e-14));
    CHECK(w.op_second ==
          doctest::Approx(static_cast<double>(expected.second)).epsilon(1e-14));
    CHECK(w.op_third ==
          doctest::Approx(static_cast<double>(expected.third)).epsilon(1e-14));
    CHECK(w.discrepancy > dense_check.tolerance);
  }
}

TEST_CASE("self-adjointness is preserved by linear combinations") {
  const auto space = TriProductSpace::pointwise({1.0, 2.0, 0.5, 1.5});
  Sampler rng(53);
  for (int trial = 0; trial < 20; ++trial) {
    const auto a = random_diagonal_op(rng, 4);
    const auto b = random_diagonal_op(rng, 4);
    const auto combo = linear_combination(rng.uniform(-3.0, 3.0), a,
                                          rng.uniform(-3.0, 3.0), b);
    CHECK(check_3_self_adjoint(space, combo).ok);
  }
}

TEST_CASE("witness values come from the generic evaluation route") {
  // weighted space: the witness must carry the weight factor
  const auto space = TriProductSpace::pointwise({3.0, 2.0});
  const auto check = check_3_self_adjoint(space, swap2());
  REQUIRE(check.witness.has_value());
  const SelfAdjointnessWitness& w = *check.witness;
  const oracle::SlotValues expected = oracle::closed_form_slots(
      {3.0L, 2.0L}, to_oracle(swap2()), w.i, w.j, w.k);
  CHECK(w.op_first == static_cast<double>(expected.first));
  CHECK(w.op_second == static_cast<double>(expected.second));
  CHECK(w.op_third == static_cast<double>(expected.third));
}

}  // TEST_SUITE
