#include <benchmark/benchmark.h>

#include <random>

#include "dismetrics/solvers.hpp"

using namespace dismetrics;

namespace {

PointSet cloud(Eigen::Index n, Eigen::Index d, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  PointSet p(n, d);
  for (Eigen::Index k = 0; k < p.size(); ++k) p.data()[k] = nd(rng);
  return p;
}

void BM_EnclosingBall(benchmark::State& state) {
  const PointSet p = cloud(state.range(0), state.range(1), 1);
  for (auto _ : state) benchmark::DoNotOptimize(smallest_enclosing_ball(p).radius);
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_EnclosingBall)->Args({121, 1})->Args({121, 3})->Args({1331, 3})->Args({10000, 3});

void BM_GeometricMedian(benchmark::State& state) {
  const PointSet p = cloud(state.range(0), state.range(1), 2);
  for (auto _ : state) benchmark::DoNotOptimize(geometric_median(p).mad);
}
BENCHMARK(BM_GeometricMedian)->Args({121, 1})->Args({121, 3})->Args({1331, 3});

void BM_MinimaxFit(benchmark::State& state) {
  const PointSet x = cloud(state.range(0), 3, 3);
  const PointSet y = cloud(state.range(0), 3, 4);
  for (auto _ : state) benchmark::DoNotOptimize(affine_fit(x, y, FitObjective::minimax).objective);
}
BENCHMARK(BM_MinimaxFit)->Arg(100)->Arg(1331)->Unit(benchmark::kMillisecond);

void BM_LeastAbsFit(benchmark::State& state) {
  const PointSet x = cloud(state.range(0), 3, 5);
  const PointSet y = cloud(state.range(0), 3, 6);
  for (auto _ : state) benchmark::DoNotOptimize(affine_fit(x, y, FitObjective::least_abs).objective);
}
BENCHMARK(BM_LeastAbsFit)->Arg(1331)->Unit(benchmark::kMillisecond);

}  // namespace
