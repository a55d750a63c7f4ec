#include <benchmark/benchmark.h>

#include <random>

#include "monowave/stats.hpp"

namespace monowave {
namespace {

EmpiricalTopologyMeasure random_measure(std::mt19937_64& rng, int support) {
  std::uniform_int_distribution<std::int64_t> count(1, 100000);
  EmpiricalTopologyMeasure m;
  m.add(TopologyType::circle(), count(rng));
  for (int g = 0; g + 1 < support; ++g) m.add(TopologyType::surface(g), count(rng));
  return m;
}

void BM_Discrepancy(benchmark::State& state) {
  std::mt19937_64 rng(3);
  const auto support = static_cast<int>(state.range(0));
  const auto a = random_measure(rng, support);
  const auto b = random_measure(rng, support);
  for (auto _ : state) benchmark::DoNotOptimize(discrepancy(a, b));
}
BENCHMARK(BM_Discrepancy)->Arg(2)->Arg(12)->Arg(64);

void BM_BootstrapMedianOrder(benchmark::State& state) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u;
  std::vector<double> a(30), b(30);
  for (auto& x : a) x = u(rng);
  for (auto& x : b) x = u(rng);
  for (auto _ : state) benchmark::DoNotOptimize(bootstrap_median_order(a, b, 2000, 1));
}
BENCHMARK(BM_BootstrapMedianOrder)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace monowave
