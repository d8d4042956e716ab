#include <benchmark/benchmark.h>

#include <vector>

#include "gmx/risk.hpp"
#include "gmx/simulation.hpp"

namespace {

std::vector<double> theta_grid(double m, int n) {
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) out[i] = m * double(i) / double(n - 1);
  return out;
}

void bm_risk_grid(benchmark::State& state, gmx::Exec exec) {
  const auto rule = gmx::ShrinkageRule::model1(0.5, 2.28384);
  const auto like = rule.likelihood();
  const auto thetas = theta_grid(2.28384, 513);
  for (auto _ : state) {
    auto r = gmx::risk_grid(thetas, rule, like, exec);
    benchmark::DoNotOptimize(r.data());
  }
}

void bm_simulation(benchmark::State& state, gmx::Exec exec) {
  gmx::SimulationConfig cfg;
  cfg.signals = {"heavisine"};
  cfg.n = 1024;
  cfg.snr = {0.2};
  cfg.replications = 8;
  cfg.rules = {gmx::DenoiseRule::model1, gmx::DenoiseRule::model2};
  cfg.seed = 7;
  for (auto _ : state) {
    auto rep = gmx::run_simulation(cfg, exec);
    benchmark::DoNotOptimize(rep.cells.data());
  }
}

}  // namespace

BENCHMARK_CAPTURE(bm_risk_grid, serial, gmx::Exec::serial)
    ->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(bm_risk_grid, parallel, gmx::Exec::parallel)
    ->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(bm_simulation, serial, gmx::Exec::serial)
    ->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(bm_simulation, parallel, gmx::Exec::parallel)
    ->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
