#include "knotinv/conformal.hpp"
#include "knotinv/indicatrix.hpp"
#include "knotinv/invariants.hpp"

#include <benchmark/benchmark.h>

using namespace knotinv;

namespace {

const ClosedCurve& trefoil() {
  static const ClosedCurve k = make_preset("trefoil");
  return k;
}

void BM_Writhe(benchmark::State& state) {
  const QuadratureConfig q{static_cast<std::size_t>(state.range(0)), 0, 1e-6};
  for (auto _ : state) benchmark::DoNotOptimize(writhe(trefoil(), q).value);
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Writhe)->RangeMultiplier(2)->Range(256, 2048)->Complexity(benchmark::oNSquared)->Unit(benchmark::kMillisecond);

void BM_TotalTorsion(benchmark::State& state) {
  const QuadratureConfig q{static_cast<std::size_t>(state.range(0)), 0, 1e-6};
  for (auto _ : state) benchmark::DoNotOptimize(total_torsion(trefoil(), q).value);
}
BENCHMARK(BM_TotalTorsion)->RangeMultiplier(4)->Range(256, 4096)->Unit(benchmark::kMicrosecond);

void BM_LinkingHopf(benchmark::State& state) {
  const auto a = make_preset("circle");
  const auto b = transform_curve(a, Eigen::AngleAxisd(M_PI / 2, Vec3::UnitX()).toRotationMatrix(), Vec3(1, 0, 0));
  const QuadratureConfig q{static_cast<std::size_t>(state.range(0)), 0, 1e-6};
  for (auto _ : state) benchmark::DoNotOptimize(linking_number(a, b, q).lk);
}
BENCHMARK(BM_LinkingHopf)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);

void BM_SelfLinking(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(self_linking(trefoil(), 0.01).lk);
}
BENCHMARK(BM_SelfLinking)->Unit(benchmark::kMillisecond);

void BM_AngleVariation(benchmark::State& state) {
  const Vec3 p = find_admissible_center(trefoil(), 64, default_tube_delta(trefoil()));
  const QuadratureConfig q{static_cast<std::size_t>(state.range(0)), 0, 1e-6};
  for (auto _ : state) benchmark::DoNotOptimize(angle_variation(trefoil(), p, q).value);
}
BENCHMARK(BM_AngleVariation)->RangeMultiplier(4)->Range(256, 4096)->Unit(benchmark::kMicrosecond);

void BM_TubeDistance(benchmark::State& state) {
  const Vec3 p = find_admissible_center(trefoil(), 64, default_tube_delta(trefoil()));
  for (auto _ : state) benchmark::DoNotOptimize(curvature_tube_distance(trefoil(), p, 1024).distance);
}
BENCHMARK(BM_TubeDistance)->Unit(benchmark::kMicrosecond);

void BM_WritheSurfaceArea(benchmark::State& state) {
  const QuadratureConfig q{static_cast<std::size_t>(state.range(0)), 0, 1e-6};
  for (auto _ : state) benchmark::DoNotOptimize(writhe_surface_area(trefoil(), q).value);
}
BENCHMARK(BM_WritheSurfaceArea)->Arg(512)->Arg(1024)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
