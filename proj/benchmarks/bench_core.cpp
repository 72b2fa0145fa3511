#include <cmath>
#include <vector>

#include <benchmark/benchmark.h>

#include "ulik/gaussian_approx.hpp"
#include "ulik/lognormal_sum.hpp"
#include "ulik/scenario.hpp"
#include "ulik/simulator.hpp"

namespace {

using namespace ulik;

void BM_ContainsIrregular(benchmark::State& state) {
  const Region region = irregular_region({0.0, 0.0}, 0.02);
  RngStream rng(1);
  std::vector<Point> probes;
  for (int i = 0; i < 4096; ++i) probes.push_back({rng.uniform(-0.03, 0.03), rng.uniform(-0.03, 0.03)});
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(region.contains(probes[i++ & 4095]));
}
BENCHMARK(BM_ContainsIrregular);

void BM_ContainsHotspotCell(benchmark::State& state) {
  const NetworkScenario s = gen_hotspot(HotspotDropSpec{});
  const Region& region = s.victim().ue_region;
  const Point c = s.victim().bs;
  RngStream rng(2);
  std::vector<Point> probes;
  for (int i = 0; i < 4096; ++i)
    probes.push_back({c.x + rng.uniform(-0.02, 0.02), c.y + rng.uniform(-0.02, 0.02)});
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(region.contains(probes[i++ & 4095]));
}
BENCHMARK(BM_ContainsHotspotCell);

void BM_RegionMoments(benchmark::State& state) {
  const NetworkScenario s = gen_single_interferer(0.02, RegionShape::kIrregular);
  const Cell& c = *s.interferers()[0];
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(region_moments(c.ue_region, s.victim().bs, c.bs, s.channel, s.power, n,
                                            RngStream(1), {1, 64}));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_RegionMoments)->Arg(100'000);

void BM_GhRule(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(gh_rule(static_cast<int>(state.range(0))));
}
BENCHMARK(BM_GhRule)->Arg(12)->Arg(40);

void BM_FitSum(benchmark::State& state) {
  const GaussHermiteRule rule = gh_rule(12);
  std::vector<GaussianApprox> comps;
  RngStream rng(3);
  for (int i = 0; i < state.range(0); ++i) comps.push_back({rng.uniform(-110.0, -80.0), rng.uniform(195.0, 230.0)});
  for (auto _ : state) benchmark::DoNotOptimize(fit_sum(comps, 1.0, 0.1, rule));
}
BENCHMARK(BM_FitSum)->Arg(1)->Arg(83);

void BM_SimulateRealization(benchmark::State& state) {
  HotspotDropSpec spec;
  spec.n_cells = static_cast<int>(state.range(0));
  spec.area_width = spec.area_height = 0.5 * std::sqrt(spec.n_cells / 84.0);
  const Simulator sim(gen_hotspot(spec), SimConfig{});
  std::vector<double> per_cell(sim.interferer_count());
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(sim.realize(i++, per_cell));
}
BENCHMARK(BM_SimulateRealization)->Arg(2)->Arg(84);

}  // namespace

BENCHMARK_MAIN();
