#include <cmath>
#include <vector>

#include <benchmark/benchmark.h>

#include "nvfix/group_action.hpp"
#include "nvfix/numerics.hpp"
#include "nvfix/torus2.hpp"

using namespace nvfix;

namespace {

// S_n from a transposition and an n-cycle.
void BM_GenerateSymmetricGroup(benchmark::State &state) {
  const int n = static_cast<int>(state.range(0));
  std::vector<int> cycle(n);
  for (int k = 0; k < n; ++k)
    cycle[k] = (k + 1) % n + 1;
  const std::vector<Permutation> gens{Permutation::parse("(1 2)", n),
                                      Permutation::from_images(cycle)};
  for (auto _ : state)
    benchmark::DoNotOptimize(generate_group(gens, n).order());
}
BENCHMARK(BM_GenerateSymmetricGroup)->DenseRange(4, 7);

void BM_TorusEnumerate(benchmark::State &state) {
  const Int k = state.range(0);
  const IntMatrix2 Q = int_matrix(2, 0, 0, 1);
  const IntMatrix2 M = int_matrix(k, 1, -1, k);
  const RationalVec2 c{Rational(1, 3), Rational(1, 7)};
  for (auto _ : state)
    benchmark::DoNotOptimize(enumerate_coincidences(Q, M, c).size());
  state.counters["count"] = static_cast<double>(std::llabs(lefschetz_coincidence(Q, M)));
}
BENCHMARK(BM_TorusEnumerate)->Arg(3)->Arg(10)->Arg(30);

void BM_WindingNumber(benchmark::State &state) {
  const int k = static_cast<int>(state.range(0));
  const auto field = [k](double t) { return Vec2(std::cos(k * t), std::sin(k * t)); };
  for (auto _ : state)
    benchmark::DoNotOptimize(winding_number(field, 1.0));
}
BENCHMARK(BM_WindingNumber)->Arg(1)->Arg(5)->Arg(20);

// Full fixed point scan of f2 at a given resolution (in units of 1e-3).
void BM_FindFixedPointsF2(benchmark::State &state) {
  GridSpec grid;
  grid.resolution = static_cast<double>(state.range(0)) * 1e-3;
  grid.cluster_radius = 5 * grid.resolution;
  const auto map = to_surface_map(CatalogMap::f2());
  for (auto _ : state)
    benchmark::DoNotOptimize(find_fixed_points(map, grid).total_count);
}
BENCHMARK(BM_FindFixedPointsF2)->Arg(20)->Arg(5)->Unit(benchmark::kMillisecond);

void BM_CoincidenceWP(benchmark::State &state) {
  GridSpec grid;
  grid.resolution = static_cast<double>(state.range(0)) * 1e-3;
  grid.cluster_radius = 5 * grid.resolution;
  const auto pts = rp2_arc_points(2);
  const auto w1 = CatalogMap::wp(pts[0]), w2 = CatalogMap::wp(pts[1]);
  for (auto _ : state)
    benchmark::DoNotOptimize(coincidence_min_distance(w1, w2, grid).min);
}
BENCHMARK(BM_CoincidenceWP)->Arg(20)->Arg(5)->Unit(benchmark::kMillisecond);

} // namespace
BENCHMARK_MAIN();
