// Serial reference against the OpenMP kernels: the all-active-sets secrecy
// sweep and the per-(user, file) leakage grid.

#include <benchmark/benchmark.h>

#include "hpcc/engine.hpp"

using namespace hpcc;

namespace {

const gf::Field kField = gf::Field::gf256();

HpPda instance(int which) {
  switch (which) {
    case 0:
      return man_hppda(6, 4, 2);
    case 1:
      return tdesign_hppda(catalog("sqs-8-4-1"), {2, 2});
    default:
      return man_hppda(8, 4, 2);
  }
}

template <SweepResult (*Sweep)(const HpPda&, int, const gf::Field&, const SweepOptions&)>
void BM_Sweep(benchmark::State& state) {
  const HpPda h = instance(static_cast<int>(state.range(0)));
  const SweepOptions opts{5, 1, 2};
  std::uint64_t deliveries = 0;
  for (auto _ : state) {
    const SweepResult r = Sweep(h, h.params().K, kField, opts);
    deliveries += r.deliveries;
    benchmark::DoNotOptimize(r);
  }
  state.counters["deliveries/s"] = benchmark::Counter(static_cast<double>(deliveries), benchmark::Counter::kIsRate);
}

template <std::vector<std::vector<int>> (*Grid)(const Placement&, const Delivery&)>
void BM_Grid(benchmark::State& state) {
  const HpPda h = instance(static_cast<int>(state.range(0)));
  const int K = h.params().K, Kp = h.params().Kp;
  std::mt19937_64 rng(3);
  const Placement p = place(h, K, kField, 2, rng);
  Subset active;
  std::vector<int> demands;
  for (int j = 1; j <= Kp; ++j) {
    active.push_back(j);
    demands.push_back(j);
  }
  const Delivery d = deliver(p, active, demands);
  for (auto _ : state) benchmark::DoNotOptimize(Grid(p, d));
}

}  // namespace

BENCHMARK_TEMPLATE(BM_Sweep, secrecy_sweep_serial)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);
BENCHMARK_TEMPLATE(BM_Sweep, secrecy_sweep_parallel)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);
BENCHMARK_TEMPLATE(BM_Grid, leakage_grid_serial)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);
BENCHMARK_TEMPLATE(BM_Grid, leakage_grid_parallel)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
