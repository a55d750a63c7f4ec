#include <benchmark/benchmark.h>

#include "monowave/ensemble.hpp"
#include "monowave/grid.hpp"
#include "monowave/nodal.hpp"

namespace monowave {
namespace {

WaveSample plane_wave(int n, int N) {
  FieldSpec s;
  s.dim = n;
  s.kind = FieldKind::kPlaneWave;
  s.direction_count = N;
  s.seed = 1;
  return sample(s);
}

void BM_Rasterize2d(benchmark::State& state) {
  const WaveSample w = plane_wave(2, static_cast<int>(state.range(0)));
  const Box box = Box::cube(2, 20 * kPi);
  for (auto _ : state) benchmark::DoNotOptimize(rasterize(w, box, kDefaultSpacing));
}
BENCHMARK(BM_Rasterize2d)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_Rasterize3d(benchmark::State& state) {
  const WaveSample w = plane_wave(3, 256);
  const Box box = Box::cube(3, static_cast<double>(state.range(0)) * kPi);
  for (auto _ : state) benchmark::DoNotOptimize(rasterize(w, box, kDefaultSpacing));
}
BENCHMARK(BM_Rasterize3d)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_MarchingSquares(benchmark::State& state) {
  const ScalarGrid g =
      rasterize(plane_wave(2, 256), Box::cube(2, static_cast<double>(state.range(0)) * kPi),
                kDefaultSpacing);
  for (auto _ : state) benchmark::DoNotOptimize(extract_components_2d(g));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(g.size()));
}
BENCHMARK(BM_MarchingSquares)->Arg(20)->Arg(60)->Unit(benchmark::kMillisecond);

void BM_MarchingTetrahedra(benchmark::State& state) {
  const ScalarGrid g =
      rasterize(plane_wave(3, 256), Box::cube(3, static_cast<double>(state.range(0)) * kPi),
                kDefaultSpacing);
  for (auto _ : state) benchmark::DoNotOptimize(extract_components_3d(g));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(g.size()));
}
BENCHMARK(BM_MarchingTetrahedra)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace monowave
