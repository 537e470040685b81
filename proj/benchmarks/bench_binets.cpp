#include <benchmark/benchmark.h>

#include "binets/consistency3d.hpp"
#include "binets/constructors.hpp"
#include "binets/curvature.hpp"
#include "binets/lifts.hpp"

using namespace binets;

namespace {

void BM_PropagatePrincipal(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const CauchyData d = random_cauchy_data(1, n, n);
  for (auto _ : state) benchmark::DoNotOptimize(propagate_principal(d));
  state.SetComplexityN(n * n);
}
BENCHMARK(BM_PropagatePrincipal)->RangeMultiplier(2)->Range(8, 64)->Complexity();

void BM_CheckPrincipal(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Binet b = random_principal_binet(2, n, n);
  for (auto _ : state) benchmark::DoNotOptimize(check_principal(b));
  state.SetComplexityN(n * n);
}
BENCHMARK(BM_CheckPrincipal)->RangeMultiplier(2)->Range(8, 64)->Complexity();

void BM_MoebiusLift(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Binet b = random_principal_binet(3, n, n);
  for (auto _ : state) benchmark::DoNotOptimize(moebius_lift(b, 0.0));
}
BENCHMARK(BM_MoebiusLift)->Arg(10)->Arg(32);

void BM_LieLift(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Binet b = random_principal_binet(4, n, n);
  for (auto _ : state) benchmark::DoNotOptimize(lie_lift(b, 0.0, 1.0));
}
BENCHMARK(BM_LieLift)->Arg(10)->Arg(32);

void BM_CurvatureSpheres(benchmark::State& state) {
  const Binet b = random_principal_binet(5, 10, 10);
  const MoebiusLift l = moebius_lift(b, 0.0);
  const BiStarNet planes = box_planes(b);
  std::vector<CellEdge> edges;
  for (const auto& e : vertex_edges(b.window()))
    if (planes.has(e.first) && planes.has(e.second)) edges.push_back(e);
  for (auto _ : state)
    for (const auto& e : edges) benchmark::DoNotOptimize(curvature_sphere(l, e));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(edges.size()));
}
BENCHMARK(BM_CurvatureSpheres);

void BM_CompletePolarCube(benchmark::State& state) {
  const PolarCubeSample s = random_polar_cube(6);
  for (auto _ : state) benchmark::DoNotOptimize(complete_polar_cube(s.data));
}
BENCHMARK(BM_CompletePolarCube);

void BM_ExtendToZ3(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Z3InitialData init = project_initial_data(random_polar_initial_data(7, Window::grid3(n, n, n)));
  for (auto _ : state) benchmark::DoNotOptimize(extend_principal_to_z3(init));
}
BENCHMARK(BM_ExtendToZ3)->Arg(4)->Arg(6);

}  // namespace

BENCHMARK_MAIN();
