#include <benchmark/benchmark.h>

#include "aperim/approximation.hpp"
#include "aperim/bounds.hpp"
#include "aperim/harness.hpp"
#include "aperim/perimeter.hpp"
#include "aperim/rng.hpp"

namespace {

using namespace aperim;

PointList ball_points(int n, int count, std::uint64_t seed) {
  Rng rng(seed);
  PointList pts;
  for (int i = 0; i < count; ++i) pts.push_back(rng.in_ball(n));
  return pts;
}

void BM_Hull(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const PointList pts = ball_points(n, static_cast<int>(state.range(1)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(ConvexPolytope::hull(pts));
}
BENCHMARK(BM_Hull)->Args({2, 1000})->Args({3, 200})->Args({4, 60});

void BM_ProjectPoint(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const ConvexPolytope p = ConvexPolytope::hull(ball_points(n, 40, 2));
  Rng rng(3);
  for (auto _ : state) benchmark::DoNotOptimize(project_point(p, 2.0 * rng.on_sphere(n)));
}
BENCHMARK(BM_ProjectPoint)->Arg(2)->Arg(3)->Arg(4);

void BM_Perimeter(benchmark::State& state) {
  const ConvexPolytope p = ConvexPolytope::hull(ball_points(3, 200, 4));
  const Gauge phi = asymmetric_simplex_gauge(3);
  for (auto _ : state) benchmark::DoNotOptimize(perimeter(p, phi));
}
BENCHMARK(BM_Perimeter);

void BM_TheoremBound(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const NestedPair pair = random_nested_pair(n, 5);
  const Gauge phi = asymmetric_simplex_gauge(n);
  for (auto _ : state) benchmark::DoNotOptimize(theorem_bound(pair.inner, pair.outer, phi));
}
BENCHMARK(BM_TheoremBound)->Arg(2)->Arg(3)->Arg(4);

void BM_CampaignCase(benchmark::State& state) {
  FuzzConfig cfg;
  cfg.dim = static_cast<int>(state.range(0));
  std::uint64_t id = 0;
  for (auto _ : state) benchmark::DoNotOptimize(run_case(cfg, id++));
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_CampaignCase)->Arg(2)->Arg(3)->Arg(4);

void BM_GridApproximation(benchmark::State& state) {
  const ConvexPolytope e = ConvexPolytope::hull(ball_points(3, 12, 6));
  const int k = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(grid_approximation(e, k));
}
BENCHMARK(BM_GridApproximation)->Arg(4)->Arg(8);

}  // namespace

BENCHMARK_MAIN();
