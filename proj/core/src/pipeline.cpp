#include "ulik/pipeline.hpp"

#include "ulik/error.hpp"

namespace ulik {

AnalysisResult analyze(const NetworkScenario& scenario, const AnalysisOptions& options) {
  if (options.samples == 0) throw Error(Errc::kInvalidArgument, "samples must be >= 1");
  const GaussHermiteRule rule = gh_rule(options.m0);
  const Point victim_bs = scenario.victim().bs;

  AnalysisResult out;
  out.options = options;
  out.shadow = combined_shadow_stats(scenario.channel, scenario.power);
  out.surrogate = lognormal_exp_gaussian(out.shadow);

  const RngStream root(options.seed);
  const SamplingOptions sampling{options.threads, 64};
  std::vector<GaussianApprox> components;
  for (const Cell* cell : scenario.interferers()) {
    try {
      CellAnalysis row;
      row.cell_id = cell->id;
      row.moments = region_moments(cell->ue_region, victim_bs, cell->bs, scenario.channel,
                                   scenario.power, options.samples,
                                   root.substream(static_cast<std::uint64_t>(cell->id)), sampling);
      row.tau = tau(row.moments, out.surrogate.g, options.tau_threshold);
      row.q = interferer_gaussian(scenario.power.p0_dbm, row.moments, out.surrogate.g);
      components.push_back(row.q);
      out.cells.push_back(row);
    } catch (const Error& e) {
      throw Error(e.code(), "cell " + std::to_string(cell->id) + ": " + e.detail());
    }
  }

  FitOptions fit_options;
  fit_options.scale = options.scale;
  out.fit = fit_sum(components, options.s1, options.s2, rule, fit_options);
  return out;
}

}  // namespace ulik
