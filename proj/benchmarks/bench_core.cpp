#include <benchmark/benchmark.h>

#include "lpstruct/energy/energy_lp.hpp"
#include "lpstruct/harness/instances.hpp"
#include "lpstruct/lp/random_lp.hpp"
#include "lpstruct/lp/revised_simplex.hpp"
#include "lpstruct/lp/simplex.hpp"
#include "lpstruct/rng.hpp"
#include "lpstruct/sp/graph.hpp"
#include "lpstruct/sp/shortest_path.hpp"
#include "lpstruct/structure/matrix_exp.hpp"
#include "lpstruct/structure/notears.hpp"

using namespace lpstruct;

namespace {

lp::LinearProgram bench_lp(std::size_t size) {
  lp::RandomLpRanges r;
  r.a = {-1.0, 1.0};
  r.var_upper = 10.0;
  return lp::random_lp(size, size, r, 42);
}

void BM_DenseSimplex(benchmark::State& state) {
  const auto lp = bench_lp(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(lp::solve(lp));
}
BENCHMARK(BM_DenseSimplex)->Arg(4)->Arg(16)->Arg(64);

void BM_EnergySolve(benchmark::State& state) {
  const auto s = harness::default_scenario(static_cast<std::size_t>(state.range(0)), 0);
  energy::SolveOptions opt;
  opt.path = state.range(1) ? energy::SolverPath::sparse : energy::SolverPath::dense;
  for (auto _ : state) benchmark::DoNotOptimize(energy::solve_energy(s.config, s.series, opt));
}
BENCHMARK(BM_EnergySolve)->Args({24, 0})->Args({24, 1})->Args({168, 0})->Args({168, 1})->Unit(benchmark::kMillisecond);

void BM_ShortestPathLp(benchmark::State& state) {
  const auto g = sp::random_dag(10, 25, 3);
  for (auto _ : state) benchmark::DoNotOptimize(sp::solve_sp(g));
}
BENCHMARK(BM_ShortestPathLp);

void BM_MatrixExp(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(0));
  Rng rng(1);
  Matrix m(d, d);
  for (auto& v : m.flat()) v = rng.uniform(-0.5, 0.5);
  for (auto _ : state) benchmark::DoNotOptimize(structure::matrix_exp(m));
}
BENCHMARK(BM_MatrixExp)->Arg(4)->Arg(12)->Arg(28);

void BM_Learn(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(0));
  Rng rng(2);
  Matrix x(1000, d);
  for (std::size_t i = 0; i < x.rows(); ++i)
    for (std::size_t j = 0; j < d; ++j) x(i, j) = rng.uniform(-1.0, 1.0) + (j ? 0.8 * x(i, j - 1) : 0.0);
  std::vector<std::string> labels;
  for (std::size_t j = 0; j < d; ++j) labels.push_back("v:x" + std::to_string(j));
  for (auto _ : state) benchmark::DoNotOptimize(structure::learn(x, labels));
}
BENCHMARK(BM_Learn)->Arg(3)->Arg(8)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
