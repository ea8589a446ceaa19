#include <benchmark/benchmark.h>

#include "dismetrics/metrics.hpp"
#include "dismetrics/synth.hpp"

using namespace dismetrics;

namespace {

const Dataset& identity_dataset() {
  static const Dataset ds = encode(EncoderKind::identity, Generator(GeneratorSpec{}));
  return ds;
}

void BM_Contraction(benchmark::State& state) {
  const auto& t = identity_dataset().table;
  const EvalOptions opts{static_cast<unsigned>(state.range(0))};
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        contraction_metric(t, Aggregator::mean, ContractionScope::whole, Aggregator::max, opts).overall);
  }
}
BENCHMARK(BM_Contraction)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_ProductApproximation(benchmark::State& state) {
  const auto& t = identity_dataset().table;
  const auto inner = static_cast<Aggregator>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(product_via_approximation(t, inner).report.overall);
}
BENCHMARK(BM_ProductApproximation)
    ->Arg(static_cast<int>(Aggregator::max))
    ->Arg(static_cast<int>(Aggregator::mean))
    ->Arg(static_cast<int>(Aggregator::second_moment))
    ->Unit(benchmark::kMillisecond);

void BM_ProductConstancy(benchmark::State& state) {
  const auto& t = identity_dataset().table;
  for (auto _ : state) benchmark::DoNotOptimize(product_via_constancy(t, Aggregator::mean).overall);
}
BENCHMARK(BM_ProductConstancy)->Unit(benchmark::kMillisecond);

void BM_SummaryTable(benchmark::State& state) {
  const Generator gen(GeneratorSpec{});
  for (auto _ : state) {
    for (EncoderKind k : all_encoders()) {
      const Dataset ds = encode(k, gen);
      for (Aggregator a : {Aggregator::max, Aggregator::mean, Aggregator::second_moment}) {
        benchmark::DoNotOptimize(product_via_approximation(ds.table, a).report.overall);
      }
      for (Aggregator a : {Aggregator::max, Aggregator::mean}) {
        benchmark::DoNotOptimize(product_via_constancy(ds.table, a).overall);
        benchmark::DoNotOptimize(contraction_metric(ds.table, a).overall);
      }
      for (FitObjective f : {FitObjective::minimax, FitObjective::least_abs, FitObjective::least_squares}) {
        benchmark::DoNotOptimize(left_inverse_metric(ds.table, f).report.overall);
      }
    }
  }
}
BENCHMARK(BM_SummaryTable)->Unit(benchmark::kMillisecond)->Iterations(1);

}  // namespace
