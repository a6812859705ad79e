#include <benchmark/benchmark.h>

#include "wus/drx.hpp"
#include "wus/optimizer.hpp"
#include "wus/sweep.hpp"

#ifdef WUS_HAVE_OPENMP
#include <omp.h>
#endif

namespace {

const wus::PowerProfile kProfile = wus::PowerProfile::reference(1.1);
const wus::TimingParams kTiming = wus::TimingParams::reference(1.0);

template <bool Parallel>
void BM_GridSearch(benchmark::State& state) {
  const wus::TrafficModel traffic{0.08};
  const wus::Constraint c{75.0};
  const double t_w_max = static_cast<double>(state.range(0));
  for (auto _ : state) {
    wus::OptimizationResult r =
        Parallel ? wus::grid_search_oracle(kProfile, kTiming, traffic, c, t_w_max, 20.0)
                 : wus::grid_search_oracle_serial(kProfile, kTiming, traffic, c, t_w_max, 20.0);
    benchmark::DoNotOptimize(r.t_w_star);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0) * 20);
}

template <bool Parallel>
void BM_DrxGrid(benchmark::State& state) {
  const wus::DrxPowerTable table;
  const wus::DrxGrid grid = wus::DrxGrid::reduced();
  const wus::TrafficModel traffic{0.05};
  const wus::SimConfig sim{wus::HorizonKind::Time, static_cast<double>(state.range(0)), -1.0, 7, 0, 16};
  for (auto _ : state) {
    auto evals = Parallel ? wus::evaluate_drx_grid(table, kTiming, traffic, grid, sim)
                          : wus::evaluate_drx_grid_serial(table, kTiming, traffic, grid, sim);
    benchmark::DoNotOptimize(evals.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(grid.configs().size()));
}

void BM_AnalyticSweep(benchmark::State& state) {
  const std::vector<double> ttis{1.0, 0.5, 0.25, 0.125};
  const std::vector<double> d_max{30.0, 75.0, 500.0};
  std::vector<double> lambdas;
  for (int i = 1; i <= state.range(0); ++i) lambdas.push_back(0.005 * i);
  for (auto _ : state) {
    auto pts = wus::analytic_sweep(kProfile, kTiming, wus::ChannelErrorModel::ideal(), ttis,
                                   d_max, lambdas);
    benchmark::DoNotOptimize(pts.data());
  }
}

}  // namespace

BENCHMARK(BM_GridSearch<false>)->Name("grid_search/serial")->Arg(500)->Arg(2500)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GridSearch<true>)->Name("grid_search/omp")->Arg(500)->Arg(2500)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DrxGrid<false>)->Name("drx_grid/serial")->Arg(20000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DrxGrid<true>)->Name("drx_grid/omp")->Arg(20000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_AnalyticSweep)->Arg(30)->Unit(benchmark::kMillisecond);

int main(int argc, char** argv) {
  benchmark::Initialize(&argc, argv);
#ifdef WUS_HAVE_OPENMP
  benchmark::AddCustomContext("omp_max_threads", std::to_string(omp_get_max_threads()));
#endif
  benchmark::RunSpecifiedBenchmarks();
  benchmark::Shutdown();
  return 0;
}
