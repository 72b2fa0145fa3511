#include "cli.hpp"

#include <chrono>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ulik/distribution.hpp"
#include "ulik/error.hpp"
#include "ulik/pipeline.hpp"
#include "ulik/report_io.hpp"
#include "ulik/scenario_io.hpp"
#include "ulik/simulator.hpp"

namespace ulik::cli {
namespace fs = std::filesystem;
namespace {

class UsageError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir))
    throw Error(Errc::kIoError, "cannot create output directory " + dir.string());
}

struct AnalyzeArgs {
  std::string scenario;
  std::string out;
  std::size_t samples = 1'000'000;
  int m0 = 12;
  double s1 = 1.0;
  double s2 = 0.1;
  double tau_threshold = kDefaultTauThreshold;
  std::uint64_t seed = 1;
  unsigned threads = 0;
  std::string design_scale = "relative";
  bool lenient = false;
};

int cmd_analyze(const AnalyzeArgs& a, std::ostream& out, std::ostream& err) {
  const Stopwatch clock;
  if (a.samples == 0) throw UsageError("--samples must be at least 1");
  const NetworkScenario scenario = load_scenario_file(a.scenario, {a.lenient});
  AnalysisOptions options;
  options.samples = a.samples;
  options.m0 = a.m0;
  options.s1 = a.s1;
  options.s2 = a.s2;
  options.tau_threshold = a.tau_threshold;
  options.seed = a.seed;
  options.threads = a.threads;
  options.scale = a.design_scale == "absolute" ? DesignScale::kAbsolute
                                               : DesignScale::kRelativeToFit;
  const AnalysisResult result = analyze(scenario, options);

  const fs::path dir(a.out);
  ensure_dir(dir);
  write_report_csv(dir / "report.csv", result);
  write_fit_csv(dir / "fit.csv", fs::path(a.scenario).stem().string(), result);
  write_cdf_csv(dir / "cdf.csv",
                cdf_curve(GaussianApprox{result.fit.mu_q, result.fit.var_q}, nullptr));

  double tau_max = 0.0;
  std::size_t failures = 0;
  for (const CellAnalysis& c : result.cells) {
    tau_max = std::max(tau_max, c.tau.tau);
    if (!c.tau.passes) {
      ++failures;
      err << "warning: cell " << c.cell_id << " tau=" << format_double(c.tau.tau)
          << " exceeds threshold " << format_double(c.tau.threshold) << '\n';
    }
  }
  if (result.surrogate.accuracy_warning)
    err << "warning: shadowing variance " << format_double(result.shadow.variance)
        << " dB^2 <= 36; fading surrogate may be inaccurate\n";
  if (!result.fit.converged)
    err << "warning: lognormal fit did not converge (residuals "
        << format_double(result.fit.residuals[0]) << ", "
        << format_double(result.fit.residuals[1]) << ")\n";

  out << "cells=" << result.cells.size() << '\n'
      << "tau_max=" << format_double(tau_max) << '\n'
      << "tau_failures=" << failures << '\n'
      << "mu_q=" << format_double(result.fit.mu_q) << '\n'
      << "var_q=" << format_double(result.fit.var_q) << '\n'
      << "converged=" << (result.fit.converged ? "true" : "false") << '\n';
  err << "analyze: " << clock.seconds() << " s\n";
  return kExitOk;
}

struct SimulateArgs {
  std::string scenario;
  std::string out;
  std::size_t samples = 1'000'000;
  std::uint64_t seed = 1;
  bool per_cell = false;
  unsigned threads = 0;
  bool lenient = false;
};

int cmd_simulate(const SimulateArgs& a, std::ostream& out, std::ostream& err) {
  const Stopwatch clock;
  if (a.samples == 0) throw UsageError("--samples must be at least 1");
  const NetworkScenario scenario = load_scenario_file(a.scenario, {a.lenient});
  SimConfig config;
  config.n_samples = a.samples;
  config.seed = a.seed;
  config.record_per_cell = a.per_cell;
  config.threads = a.threads;
  const SimResult result = simulate(scenario, config);

  const fs::path dir(a.out);
  ensure_dir(dir);
  write_cdf_csv(dir / "cdf.csv", cdf_curve(std::nullopt, &result.aggregate_dbm));
  write_sample_dump(dir / "samples.bin", result.aggregate_dbm.samples());
  for (const auto& [id, dist] : result.per_cell_db) {
    const std::string stem = "cell_" + std::to_string(id);
    write_sample_dump(dir / (stem + ".bin"), dist.samples());
    write_cdf_csv(dir / (stem + "_cdf.csv"), cdf_curve(std::nullopt, &dist));
  }
  out << "samples=" << result.aggregate_dbm.size() << '\n'
      << "mean_dbm=" << format_double(result.aggregate_dbm.mean()) << '\n'
      << "median_dbm=" << format_double(result.aggregate_dbm.quantile(0.5)) << '\n';
  err << "simulate: " << clock.seconds() << " s\n";
  return kExitOk;
}

struct CompareArgs {
  std::string analysis;
  std::string empirical;
  std::string out;
};

double ks_against_curve(const std::vector<CdfPoint>& curve, const GaussianApprox& g) {
  double d = 0.0;
  for (const CdfPoint& p : curve) {
    if (!p.empirical) throw Error(Errc::kIoError, "CDF file has no empirical_cdf column");
    d = std::max(d, std::fabs(*p.empirical - gaussian_cdf(g, p.value_dbm)));
  }
  return d;
}

int cmd_compare(const CompareArgs& a, std::ostream& out, std::ostream& err) {
  const Stopwatch clock;
  const fs::path analysis(a.analysis);
  const std::vector<ReportRow> rows = read_report_csv(analysis / "report.csv");
  const FitRow fit = read_fit_csv(analysis / "fit.csv");
  const GaussianApprox aggregate{fit.mu_q, fit.var_q};

  struct Entry {
    std::string scope;
    std::optional<std::int64_t> cell;
    double ks;
  };
  std::vector<Entry> entries;
  const fs::path source(a.empirical);
  if (fs::is_directory(source)) {
    const EmpiricalDistribution samples(read_sample_dump(source / "samples.bin"),
                                        ValueDomain::kDbm);
    entries.push_back({"aggregate", std::nullopt,
                       ks_distance(samples, gaussian_cdf_function(aggregate))});
    for (const ReportRow& r : rows) {
      const fs::path dump = source / ("cell_" + std::to_string(r.cell_id) + ".bin");
      if (!fs::exists(dump)) continue;
      const EmpiricalDistribution cell(read_sample_dump(dump), ValueDomain::kDbm);
      entries.push_back(
          {"cell", r.cell_id, ks_distance(cell, gaussian_cdf_function({r.mu_qb, r.var_qb}))});
    }
  } else {
    std::ifstream probe(source);
    std::string header;
    if (!probe || !std::getline(probe, header))
      throw Error(Errc::kIoError, "cannot read " + source.string());
    if (header.rfind("value_dbm", 0) != 0)
      throw Error(Errc::kDomainMismatch,
                  source.string() + " is not a dBm CDF (first column must be value_dbm)");
    entries.push_back({"aggregate", std::nullopt, ks_against_curve(read_cdf_csv(source), aggregate)});
  }

  const fs::path dir = a.out.empty() ? analysis : fs::path(a.out);
  ensure_dir(dir);
  std::ofstream csv(dir / "comparison.csv", std::ios::binary | std::ios::trunc);
  if (!csv) throw Error(Errc::kIoError, "cannot write " + (dir / "comparison.csv").string());
  csv << "scope,cell_id,ks\n";
  std::optional<double> percell_max;
  for (const Entry& e : entries) {
    csv << e.scope << ',' << (e.cell ? std::to_string(*e.cell) : std::string()) << ','
        << format_double(e.ks) << '\n';
    if (e.cell) percell_max = std::max(percell_max.value_or(0.0), e.ks);
  }
  if (!csv.flush()) throw Error(Errc::kIoError, "failed writing comparison.csv");

  out << "KS_aggregate=" << format_double(entries.front().ks) << '\n';
  if (percell_max) out << "KS_percell_max=" << format_double(*percell_max) << '\n';
  err << "compare: " << clock.seconds() << " s\n";
  return kExitOk;
}

struct GenerateArgs {
  std::string out;
  std::optional<double> r;  // per-generator default when unset
  std::string shape = "disk";
  int n_cells = 84;
  double width = 0.5;
  double height = 0.5;
  double min_spacing = -1.0;
  std::uint64_t max_attempts = 1'000'000;
  std::uint64_t seed = 1;
  int rings = 1;
  double pitch = 0.05;
  ChannelParams channel;
  PowerControl power;
};

int cmd_generate(const std::string& kind, const GenerateArgs& a, std::ostream& out) {
  NetworkScenario s;
  if (kind == "single") {
    s = gen_single_interferer(a.r.value_or(0.01), a.shape == "irregular" ? RegionShape::kIrregular
                                                          : RegionShape::kDisk,
                              a.seed, a.channel, a.power);
  } else if (kind == "hotspot") {
    HotspotDropSpec spec;
    spec.n_cells = a.n_cells;
    if (a.r) spec.radius_r = *a.r;
    spec.area_width = a.width;
    spec.area_height = a.height;
    spec.min_bs_bs_distance = a.min_spacing;
    spec.max_attempts = a.max_attempts;
    spec.seed = a.seed;
    spec.channel = a.channel;
    spec.power = a.power;
    s = gen_hotspot(spec);
  } else {
    s = gen_hex_grid(a.rings, a.pitch, a.r.value_or(0.02), a.channel, a.power);
  }
  save_scenario_file(s, a.out);
  out << "cells=" << s.cells.size() << '\n' << "victim_cell_id=" << s.victim_cell_id << '\n';
  return kExitOk;
}

void add_channel_flags(CLI::App* cmd, GenerateArgs& g) {
  cmd->add_option("--a-db", g.channel.a_db, "Path loss at 1 km (dB)")->capture_default_str();
  cmd->add_option("--alpha", g.channel.alpha, "Path loss slope (dB/decade)")->capture_default_str();
  cmd->add_option("--sigma-shad-sq", g.channel.sigma_shad_sq, "Shadowing variance (dB^2)")
      ->capture_default_str();
  cmd->add_option("--p0", g.power.p0_dbm, "Power basis P0 (dBm)")->capture_default_str();
  cmd->add_option("--eta", g.power.eta, "FPC factor")->capture_default_str();
  cmd->add_option("--out", g.out, "Scenario JSON to write")->required();
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Uplink interference analysis for small-cell networks"};
  app.name("ulik");
  app.require_subcommand(1);

  AnalyzeArgs an;
  auto* analyze_cmd = app.add_subcommand("analyze", "Analytic interference model of a scenario");
  analyze_cmd->add_option("scenario", an.scenario, "Scenario JSON")->required();
  analyze_cmd->add_option("--out", an.out, "Output directory")->required();
  analyze_cmd->add_option("--samples", an.samples, "Integration points per cell")
      ->capture_default_str();
  analyze_cmd->add_option("--m0", an.m0, "Gauss-Hermite order")
      ->check(CLI::Range(2, 64))
      ->capture_default_str();
  analyze_cmd->add_option("--s1", an.s1, "First MGF design point")->capture_default_str();
  analyze_cmd->add_option("--s2", an.s2, "Second MGF design point")->capture_default_str();
  analyze_cmd->add_option("--tau-threshold", an.tau_threshold, "Pass threshold for tau")
      ->capture_default_str();
  analyze_cmd->add_option("--seed", an.seed, "Integration seed")->capture_default_str();
  analyze_cmd->add_option("--threads", an.threads, "Worker threads (0 = all cores)")
      ->capture_default_str();
  analyze_cmd->add_option("--design-scale", an.design_scale, "relative | absolute")
      ->check(CLI::IsMember({"relative", "absolute"}))
      ->capture_default_str();
  analyze_cmd->add_flag("--lenient", an.lenient, "Ignore unknown scenario fields");

  SimulateArgs sim;
  auto* simulate_cmd = app.add_subcommand("simulate", "Monte Carlo interference samples");
  simulate_cmd->add_option("scenario", sim.scenario, "Scenario JSON")->required();
  simulate_cmd->add_option("--out", sim.out, "Output directory")->required();
  simulate_cmd->add_option("--samples", sim.samples, "Realizations")->capture_default_str();
  simulate_cmd->add_option("--seed", sim.seed, "Simulation seed")->capture_default_str();
  simulate_cmd->add_flag("--per-cell", sim.per_cell, "Also write per-interferer samples");
  simulate_cmd->add_option("--threads", sim.threads, "Worker threads (0 = all cores)")
      ->capture_default_str();
  simulate_cmd->add_flag("--lenient", sim.lenient, "Ignore unknown scenario fields");

  CompareArgs cmp;
  auto* compare_cmd = app.add_subcommand("compare", "KS distances between analysis and simulation");
  compare_cmd->add_option("analysis_dir", cmp.analysis, "Directory written by analyze")->required();
  compare_cmd->add_option("empirical", cmp.empirical,
                          "Directory written by simulate, or an empirical cdf.csv")
      ->required();
  compare_cmd->add_option("--out", cmp.out, "Output directory (default: analysis_dir)");

  GenerateArgs gen;
  std::string gen_kind;
  auto* generate_cmd = app.add_subcommand("generate", "Write a generated scenario");
  generate_cmd->require_subcommand(1);
  auto* single_cmd = generate_cmd->add_subcommand("single", "One interferer at 1.5 r");
  single_cmd->add_option("--r", gen.r, "UE area radius (km) [0.01]");
  single_cmd->add_option("--shape", gen.shape, "disk | irregular")
      ->check(CLI::IsMember({"disk", "irregular"}))
      ->capture_default_str();
  add_channel_flags(single_cmd, gen);
  auto* hotspot_cmd = generate_cmd->add_subcommand("hotspot", "Random hotspot drop");
  hotspot_cmd->add_option("--n-cells", gen.n_cells, "Number of cells")->capture_default_str();
  hotspot_cmd->add_option("--r", gen.r, "UE area radius (km) [0.02]");
  hotspot_cmd->add_option("--width", gen.width, "Drop area width (km)")->capture_default_str();
  hotspot_cmd->add_option("--height", gen.height, "Drop area height (km)")->capture_default_str();
  hotspot_cmd->add_option("--min-spacing", gen.min_spacing, "Min BS spacing (km; default 1.5 r)");
  hotspot_cmd->add_option("--max-attempts", gen.max_attempts, "Placement attempts")
      ->capture_default_str();
  hotspot_cmd->add_option("--seed", gen.seed, "Drop seed")->capture_default_str();
  add_channel_flags(hotspot_cmd, gen);
  auto* hex_cmd = generate_cmd->add_subcommand("hex", "Hexagonal lattice");
  hex_cmd->add_option("--rings", gen.rings, "Rings around the victim")->capture_default_str();
  hex_cmd->add_option("--pitch", gen.pitch, "BS spacing (km)")->capture_default_str();
  hex_cmd->add_option("--r", gen.r, "UE area radius (km) [0.02]");
  add_channel_flags(hex_cmd, gen);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    std::ostringstream o;
    std::ostringstream m;
    const int code = app.exit(e, o, m);
    out << o.str();
    err << m.str();
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*analyze_cmd) return cmd_analyze(an, out, err);
    if (*simulate_cmd) return cmd_simulate(sim, out, err);
    if (*compare_cmd) return cmd_compare(cmp, out, err);
    if (*single_cmd) return cmd_generate("single", gen, out);
    if (*hotspot_cmd) return cmd_generate("hotspot", gen, out);
    if (*hex_cmd) return cmd_generate("hex", gen, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace ulik::cli
