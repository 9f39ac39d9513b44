#include <benchmark/benchmark.h>

#include "stab/constructions.hpp"
#include "stab/depth.hpp"
#include "stab/fan.hpp"
#include "stab/stab_count.hpp"

using namespace stab;

static void planar_fast(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  PointSet s = build_random_sphere(n, 2, 1);
  for (auto _ : state) benchmark::DoNotOptimize(count_containing_planar_fast(s, origin(2)));
  state.SetComplexityN(n);
}
BENCHMARK(planar_fast)->RangeMultiplier(2)->Range(32, 1024)->Complexity();

static void planar_brute(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  PointSet s = build_random_sphere(n, 2, 1);
  for (auto _ : state) benchmark::DoNotOptimize(count_containing(s, origin(2)));
  state.SetComplexityN(n);
}
BENCHMARK(planar_brute)->RangeMultiplier(2)->Range(16, 64)->Complexity();

static void brute_3d(benchmark::State& state) {
  PointSet s = build_random_sphere(static_cast<int>(state.range(0)), 3, 2);
  for (auto _ : state) benchmark::DoNotOptimize(count_containing(s, origin(3)));
}
BENCHMARK(brute_3d)->Arg(16)->Arg(24);

static void tukey_depth(benchmark::State& state) {
  const int d = static_cast<int>(state.range(1));
  PointSet s = build_random_ball(static_cast<int>(state.range(0)), d, 3);
  for (auto _ : state) benchmark::DoNotOptimize(depth(s, origin(d)));
}
BENCHMARK(tukey_depth)->Args({50, 2})->Args({200, 2})->Args({30, 3});

static void fan_test_map(benchmark::State& state) {
  const int d = static_cast<int>(state.range(1));
  SampledMass mass = sampled_mass(build_random_ball(static_cast<int>(state.range(0)), d, 4));
  Frame f = d == 2 ? frame_2d(0.3) : frame_3d(0.7, 1.1, 0.4);
  for (auto _ : state) benchmark::DoNotOptimize(test_map(mass, f));
}
BENCHMARK(fan_test_map)->Args({600, 2})->Args({1000, 3});

static void fan_solve_2d(benchmark::State& state) {
  PointSet s = build_random_ball(static_cast<int>(state.range(0)), 2, 5);
  for (auto _ : state) benchmark::DoNotOptimize(solve_equipartition_fan(s, 2));
}
BENCHMARK(fan_solve_2d)->Arg(600)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
