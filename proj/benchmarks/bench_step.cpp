#include <benchmark/benchmark.h>

#include "axibilayer/evolution.hpp"

using namespace axibilayer;

namespace {

SchemeState sphere_state(int J, const PhysicalParams& p) {
  return make_initial_data(perturbed_sphere(J, J / 2), p);
}

void BM_Assemble(benchmark::State& st) {
  PhysicalParams p;
  p.kbar = {-1, -1};
  const auto s = sphere_state(st.range(0), p);
  for (auto _ : st)
    benchmark::DoNotOptimize(assemble(s, p, 1e-4, ConservationMode::free));
}
BENCHMARK(BM_Assemble)->Arg(16)->Arg(64)->Arg(256);

void BM_FreeStep(benchmark::State& st) {
  PhysicalParams p;
  p.kbar = {-1, -1};
  const auto s = sphere_state(st.range(0), p);
  for (auto _ : st)
    benchmark::DoNotOptimize(newton_conserve(s, p, 1e-4, ConservationMode::free, {}));
}
BENCHMARK(BM_FreeStep)->Arg(16)->Arg(64)->Arg(256);

void BM_ConservingStep(benchmark::State& st) {
  PhysicalParams p;
  p.kbar = {-0.5, -4};
  // holding areas and volume on a sphere has no solution; use a spheroid
  const int J = static_cast<int>(st.range(0));
  const auto s = make_initial_data(spheroid(J, J, 0.9, 0.5, 4 * 3.141592653589793), p);
  const auto targets = measure_targets(s.X);
  for (auto _ : st)
    benchmark::DoNotOptimize(
        newton_conserve(s, p, 1e-4, ConservationMode::area_volume, targets));
}
BENCHMARK(BM_ConservingStep)->Arg(16)->Arg(64)->Arg(256);

}  // namespace

BENCHMARK_MAIN();
