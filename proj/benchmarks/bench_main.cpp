#include <benchmark/benchmark.h>

#include <cmath>

#include "robustqp/convexity.hpp"
#include "robustqp/homogenize.hpp"
#include "robustqp/linalg.hpp"
#include "robustqp/oracle.hpp"
#include "robustqp/rng.hpp"
#include "robustqp/search.hpp"
#include "robustqp/worked_example.hpp"

namespace {

using namespace robustqp;

// f = x^2/2 over the band x^2 in [1, 4]
RobustInstance shell_1d() {
  RobustInstance inst;
  inst.objective.Q = SymmetricMatrix::identity(1);
  inst.objective.c = {0.0};
  inst.constraint.B1 = SymmetricMatrix::identity(1).scaled(2.0);
  inst.constraint.B2 = SymmetricMatrix(1);
  inst.constraint.b1 = {0.0};
  inst.constraint.b2 = {0.0};
  inst.constraint.mu = {-1.0, 1.0};
  inst.constraint.delta = {-1.0, 1.0};
  inst.constraint.alpha = 1.0;
  inst.constraint.beta = 4.0;
  return inst;
}

SymmetricMatrix random_symmetric(int n, std::uint64_t seed) {
  Rng rng(seed);
  SymmetricMatrix m(n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) m.set(i, j, rng.uniform(-1.0, 1.0));
  return m;
}

void eigen_decomposition(benchmark::State& state) {
  const SymmetricMatrix m = random_symmetric(static_cast<int>(state.range(0)), 42);
  for (auto _ : state) benchmark::DoNotOptimize(sym_eigen(m));
}
BENCHMARK(eigen_decomposition)->Arg(8)->Arg(32)->Arg(64)->Unit(benchmark::kMicrosecond);

void robust_range_corners(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const WorkedExample ex = build_worked_example(n);
  Rng rng(7);
  Vector x(static_cast<std::size_t>(n));
  for (auto& v : x) v = rng.uniform(-1.0, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(robust_range(ex.instance.constraint, x));
}
BENCHMARK(robust_range_corners)->Arg(5)->Arg(16)->Unit(benchmark::kMicrosecond);

void one_sided_certificate_search(benchmark::State& state) {
  const WorkedExample ex = build_worked_example(5);
  SearchBudget budget;
  budget.mu_grid = static_cast<int>(state.range(0));
  budget.delta_grid = budget.mu_grid;
  for (auto _ : state)
    benchmark::DoNotOptimize(search_one_sided_certificate(ex.instance, ex.xbar, budget));
}
BENCHMARK(one_sided_certificate_search)->Arg(11)->Arg(101)->Unit(benchmark::kMicrosecond);

void two_sided_certificate_search(benchmark::State& state) {
  const RobustInstance inst = shell_1d();
  const Vector xbar{-1.0};
  SearchBudget budget;
  budget.mu_grid = static_cast<int>(state.range(0));
  budget.delta_grid = budget.mu_grid;
  for (auto _ : state)
    benchmark::DoNotOptimize(search_optimality_certificate(inst, xbar, budget));
}
BENCHMARK(two_sided_certificate_search)->Arg(101)->Unit(benchmark::kMicrosecond);

void oracle_random_sampling(benchmark::State& state) {
  const WorkedExample ex = build_worked_example(5);
  const int samples = static_cast<int>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(brute_force_min(ex.instance, 1.0, 0, samples, 3));
  state.SetItemsProcessed(state.iterations() * samples);
}
BENCHMARK(oracle_random_sampling)->Arg(20000)->Unit(benchmark::kMillisecond);

void pd_combination_search(benchmark::State& state) {
  const WorkedExample ex = build_worked_example(5);
  const HomogenizedSet hs = homogenize(ex.instance, ex.gamma);
  const auto gens = omega_mu_generators(hs, false);
  for (auto _ : state) benchmark::DoNotOptimize(find_pd_combination(gens));
}
BENCHMARK(pd_combination_search)->Unit(benchmark::kMicrosecond);

void image_falsifier(benchmark::State& state) {
  const std::vector<SymmetricMatrix> triple{
      SymmetricMatrix::diagonal({1.0, 0.0}), SymmetricMatrix::diagonal({0.0, 1.0}),
      SymmetricMatrix::from_rows({{0.0, 0.5}, {0.5, 0.0}})};
  for (auto _ : state)
    benchmark::DoNotOptimize(falsify_image_convexity(triple, 4, 41, 5, 0));
}
BENCHMARK(image_falsifier)->Unit(benchmark::kMillisecond);

void alternative_decision(benchmark::State& state) {
  const RobustInstance inst = shell_1d();
  SearchBudget budget;
  budget.sample_count = 20000;
  budget.box_halfwidth = 3.0;
  for (auto _ : state) benchmark::DoNotOptimize(decide_alternative(inst, -0.4, budget));
}
BENCHMARK(alternative_decision)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
