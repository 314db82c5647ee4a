#include <benchmark/benchmark.h>

#include <numbers>
#include <random>

#include "stratdisc/closedform.hpp"
#include "stratdisc/discrepancy.hpp"
#include "stratdisc/sampling.hpp"

using namespace stratdisc;

namespace {

void BM_AnchoredBoxMeasure(benchmark::State& state) {
  const Partition partition = build_partition(PartitionSpec(3, 2, critical_angle()));
  const Cell& prism = partition.cells[0];
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  std::vector<double> x(2);
  for (auto _ : state) {
    x[0] = dist(rng);
    x[1] = dist(rng);
    benchmark::DoNotOptimize(anchored_box_measure(prism, x));
  }
}
BENCHMARK(BM_AnchoredBoxMeasure);

void BM_GenerateStratified(benchmark::State& state) {
  const Partition partition = build_partition(
      PartitionSpec(static_cast<int>(state.range(0)), 2, critical_angle()));
  std::uint64_t rep = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(generate_stratified(partition, SeedSpec{7, rep++}));
  }
  state.SetItemsProcessed(state.iterations() *
                          static_cast<std::int64_t>(partition.cells.size()));
}
BENCHMARK(BM_GenerateStratified)->Arg(3)->Arg(8)->Arg(32);

void BM_L2SquaredExact(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  PointSet points{2, {}};
  for (int i = 0; i < 2 * n; ++i) points.coords.push_back(dist(rng));
  for (auto _ : state) {
    benchmark::DoNotOptimize(l2_squared_exact(points));
  }
}
BENCHMARK(BM_L2SquaredExact)->Arg(9)->Arg(100)->Arg(1000);

void BM_DifferenceQuadrature(benchmark::State& state) {
  const Partition tilted = build_partition(PartitionSpec(3, 2, critical_angle()));
  const Partition jittered =
      build_partition(PartitionSpec(3, 2, std::numbers::pi / 2.0));
  const QuadratureSpec quad{static_cast<int>(state.range(0)), true};
  for (auto _ : state) {
    benchmark::DoNotOptimize(expected_difference_quadrature(tilted, jittered, quad));
  }
}
BENCHMARK(BM_DifferenceQuadrature)->Arg(256)->Arg(1024);

void BM_BuildingBlockB(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(building_block_B(0.35, QuadratureSpec{256, true}));
  }
}
BENCHMARK(BM_BuildingBlockB);

}  // namespace

BENCHMARK_MAIN();
