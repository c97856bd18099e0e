// Serial reference against the OpenMP kernels on the same inputs.
#include "vk/leaf_eval.hpp"
#include "vk/robin.hpp"
#include "vk/smoothness.hpp"

#include <benchmark/benchmark.h>

using namespace vk;

namespace {

Exec exec_of(const benchmark::State& state) { return state.range(0) ? Exec::parallel : Exec::serial; }

void label(benchmark::State& state) {
  state.SetLabel(state.range(0) ? "openmp x" + std::to_string(worker_count()) : "serial");
}

void BM_leaf_sphere(benchmark::State& state) {
  const ConvexBody body = make_superellipse(2.0);
  for (auto _ : state) benchmark::DoNotOptimize(build_leaf_sphere(body, 32, exec_of(state)));
  label(state);
}

void BM_scan(benchmark::State& state) {
  const ConvexBody body = make_superellipse(4.0);
  for (auto _ : state) benchmark::DoNotOptimize(scan_bad_parameters(body, {32}, kMarginTol, exec_of(state)));
  label(state);
}

void BM_level_set(benchmark::State& state) {
  const ConvexBody body = make_stadium(2.0, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(level_set(body, 1.5, 32, exec_of(state)));
  label(state);
}

void BM_boundary_measure(benchmark::State& state) {
  const ConvexBody body = make_disk();
  for (auto _ : state) benchmark::DoNotOptimize(ma_boundary_measure(body, 32, 16, exec_of(state)));
  label(state);
}

}  // namespace

BENCHMARK(BM_leaf_sphere)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_scan)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_level_set)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_boundary_measure)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
