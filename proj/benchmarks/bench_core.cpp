#include <benchmark/benchmark.h>

#include <vector>

#include "triup/linear_operator.hpp"
#include "triup/rng.hpp"
#include "triup/sharpness.hpp"
#include "triup/tri_product_space.hpp"
#include "triup/uncertainty.hpp"

namespace {

using namespace triup;

std::vector<double> random_coords(std::size_t n, std::uint64_t seed) {
  Sampler rng(seed);
  std::vector<double> v(n);
  for (double& c : v) c = rng.signed_unit();
  return v;
}

void BM_eval3(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const auto space = TriProductSpace::unit(n);
  const auto x = random_coords(n, 1);
  const auto y = random_coords(n, 2);
  const auto z = random_coords(n, 3);
  for (auto _ : state)
    benchmark::DoNotOptimize(space.eval3(x, y, z));
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_eval3)->Arg(16)->Arg(256)->Arg(4096);

void BM_norm(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const auto space = TriProductSpace::unit(n);
  const auto x = random_coords(n, 4);
  for (auto _ : state)
    benchmark::DoNotOptimize(space.norm(x));
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_norm)->Arg(256)->Arg(4096);

void BM_check_selfadjoint_diagonal(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const auto space = TriProductSpace::unit(n);
  const auto op = LinearOperator::diagonal(random_coords(n, 5));
  for (auto _ : state)
    benchmark::DoNotOptimize(check_3_self_adjoint(space, op).ok);
}
BENCHMARK(BM_check_selfadjoint_diagonal)->Arg(8)->Arg(16)->Arg(64);

void BM_verify_chain(benchmark::State& state) {
  InstanceGenConfig gen;
  gen.dimension = static_cast<std::size_t>(state.range(0));
  gen.seed = 6;
  const RandomInstance inst = random_instance(gen);
  for (auto _ : state)
    benchmark::DoNotOptimize(
        verify_chain(inst.space, inst.operators[0], inst.operators[1],
                     inst.operators[2], inst.state)
            .chain_ok);
}
BENCHMARK(BM_verify_chain)->Arg(4)->Arg(8)->Arg(16);

void BM_random_instance(benchmark::State& state) {
  InstanceGenConfig gen;
  gen.dimension = static_cast<std::size_t>(state.range(0));
  gen.weights = WeightMode::kRandom;
  std::uint64_t seed = 0;
  for (auto _ : state) {
    gen.seed = seed++;
    benchmark::DoNotOptimize(random_instance(gen).state.cube_sum());
  }
}
BENCHMARK(BM_random_instance)->Arg(8)->Arg(16);

void BM_optimize_state(benchmark::State& state) {
  const auto space = TriProductSpace::unit(3);
  const auto a = LinearOperator::diagonal({1.0, 0.0, 0.0});
  const auto b = LinearOperator::diagonal({0.0, 1.0, 0.0});
  const auto c = LinearOperator::diagonal({0.0, 0.0, 1.0});
  OptimizerConfig config;
  config.restarts = 4;
  config.max_iterations = 100;
  config.seed = 7;
  for (auto _ : state)
    benchmark::DoNotOptimize(
        optimize_state(space, a, b, c, config).best_ratio);
}
BENCHMARK(BM_optimize_state);

}  // namespace

BENCHMARK_MAIN();
