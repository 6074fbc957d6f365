#include <benchmark/benchmark.h>

#include "torsion/classify.hpp"
#include "torsion/subspace.hpp"
#include "torsion/surface.hpp"

using namespace torsion;

namespace {

Execution mode(const benchmark::State& state) {
  return state.range(0) ? Execution::parallel() : Execution::serial();
}

void BM_KernelImageSweep(benchmark::State& state) {
  const GroupSpec spec(Family::SU, 4);
  for (auto _ : state) {
    auto r = sweep("kernel_image_identity", 200, 1, mode(state), [&](std::size_t, std::uint64_t s) {
      return verify_kernel_image_identity(random_torsion_element(spec, 6, s).element, 6).trials.at(0);
    });
    benchmark::DoNotOptimize(r);
  }
}

void BM_Sl2Census(benchmark::State& state) {
  for (auto _ : state) {
    auto r = sl2_component_census(6, 2000, 1, mode(state));
    benchmark::DoNotOptimize(r);
  }
}

void BM_ClusterCensus(benchmark::State& state) {
  for (auto _ : state) {
    auto r = cluster_census({Family::SO, 5}, 4, 500, 1, mode(state));
    benchmark::DoNotOptimize(r);
  }
}

void BM_TangentCone(benchmark::State& state) {
  const auto points = sample_surface(0.0, 2.0, 100000, 1);
  for (auto _ : state) {
    auto r = tangent_cone_bound_check(points, mode(state));
    benchmark::DoNotOptimize(r);
  }
}

void BM_Catalog(benchmark::State& state) {
  for (auto _ : state) {
    auto c = catalog_components({Family::U, 4}, 6, {}, mode(state));
    benchmark::DoNotOptimize(c);
  }
}

}  // namespace

// Arg 0: serial reference, 1: OpenMP
BENCHMARK(BM_KernelImageSweep)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_Sl2Census)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_ClusterCensus)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_TangentCone)->Arg(0)->Arg(1)->Unit(benchmark::kMicrosecond)->UseRealTime();
BENCHMARK(BM_Catalog)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
