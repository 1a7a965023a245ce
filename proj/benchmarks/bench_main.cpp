#include <benchmark/benchmark.h>

#include <vector>

#include "fcpp/estimators.hpp"
#include "fcpp/mlf.hpp"
#include "fcpp/pot.hpp"
#include "fcpp/simulate.hpp"
#include "fcpp/stable.hpp"

namespace {

using namespace fcpp;

// A sample with exactly k inter-exceedance times from the timing scenario.
IetSample sample_with_k(std::size_t k, std::uint64_t replicate = 0) {
  const ScenarioSpec spec{0.8, {WaitingKind::kMittagLeffler, 0.8}, 50 * (k + 1), 7, 0.02};
  const EventSeries s = build_series(spec, replicate);
  return extract_iets(s, threshold_from_fraction(s, spec.frac));
}

void BM_MlfValue(benchmark::State& state) {
  const double beta = static_cast<double>(state.range(0)) / 100.0;
  const MittagLefflerFunction e(beta);
  std::vector<double> xs;
  for (double x = 0.01; x < 1e4; x *= 1.2) xs.push_back(x);
  for (auto _ : state) {
    double sum = 0.0;
    for (double x : xs) sum += e.value(x);
    benchmark::DoNotOptimize(sum);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(xs.size()));
}
BENCHMARK(BM_MlfValue)->Arg(30)->Arg(60)->Arg(90)->Arg(100);

void BM_MlCdf(benchmark::State& state) {
  const MlDistribution d({0.7, 3.0});
  double t = 0.0;
  for (auto _ : state) {
    t = t > 1e3 ? 0.01 : t * 1.1 + 0.01;
    benchmark::DoNotOptimize(d.cdf(t));
  }
}
BENCHMARK(BM_MlCdf);

void BM_MlSample(benchmark::State& state) {
  RandomStream rng(1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(draw_ml({0.8, 1.0}, rng));
  }
}
BENCHMARK(BM_MlSample);

void BM_CmmodDistance(benchmark::State& state) {
  const IetSample s = sample_with_k(static_cast<std::size_t>(state.range(0)));
  const FcppParams p{0.8, 0.8, 100.0};
  for (auto _ : state) {
    benchmark::DoNotOptimize(cmmod_distance(s, p));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_CmmodDistance)->Arg(100)->Arg(200)->Arg(400)->Arg(800)->Arg(1600)->Complexity(benchmark::oN);

void BM_FitCmmod(benchmark::State& state) {
  const IetSample s = sample_with_k(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(fit_cmmod(s));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_FitCmmod)
    ->Arg(100)
    ->Arg(200)
    ->Arg(400)
    ->Arg(800)
    ->Unit(benchmark::kMillisecond)
    ->Complexity(benchmark::oN);

void BM_OtherEstimators(benchmark::State& state) {
  const IetSample s = sample_with_k(800);
  for (auto _ : state) {
    benchmark::DoNotOptimize(interval_estimator(s));
    benchmark::DoNotOptimize(log_moment_estimator(s));
    benchmark::DoNotOptimize(ml_mle(s));
  }
}
BENCHMARK(BM_OtherEstimators)->Unit(benchmark::kMillisecond);

void BM_BuildSeries(benchmark::State& state) {
  const ScenarioSpec spec{0.7, {WaitingKind::kMittagLeffler, 0.8}, 10000, 3, 0.02};
  std::uint64_t r = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_series(spec, r++));
  }
}
BENCHMARK(BM_BuildSeries)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
