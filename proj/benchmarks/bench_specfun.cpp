// ./monowave_benchmarks --benchmark_filter=Bessel

#include <benchmark/benchmark.h>

#include "monowave/specfun.hpp"

namespace monowave {
namespace {

void BM_BesselSeriesRegime(benchmark::State& state) {
  const specfun::BesselOrder nu(static_cast<double>(state.range(0)));
  double x = 0.5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(specfun::bessel_j(nu, x));
    x = x < 11.5 ? x + 0.37 : 0.5;
  }
}
BENCHMARK(BM_BesselSeriesRegime)->Arg(0)->Arg(5)->Arg(20);

void BM_BesselRecurrenceRegime(benchmark::State& state) {
  const specfun::BesselOrder nu(static_cast<double>(state.range(0)));
  double x = 12.5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(specfun::bessel_j(nu, x));
    x = x < 60.0 ? x + 0.91 : 12.5;
  }
}
BENCHMARK(BM_BesselRecurrenceRegime)->Arg(0)->Arg(5)->Arg(20);

void BM_BesselSequence(benchmark::State& state) {
  const auto count = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(specfun::bessel_j_sequence(specfun::BesselOrder(0.5), count, 17.3));
  }
}
BENCHMARK(BM_BesselSequence)->Arg(8)->Arg(64);

void BM_FourierTransformHarmonic(benchmark::State& state) {
  const specfun::HarmonicIndex idx{2, static_cast<int>(state.range(0)), 1};
  const Point x{3.0, -4.0, 12.0};
  for (auto _ : state) benchmark::DoNotOptimize(specfun::ft_sph_harm(idx, x));
}
BENCHMARK(BM_FourierTransformHarmonic)->Arg(0)->Arg(6);

}  // namespace
}  // namespace monowave
