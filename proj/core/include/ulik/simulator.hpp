#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <vector>

#include "ulik/distribution.hpp"
#include "ulik/scenario.hpp"

namespace ulik {

struct SimConfig {
  std::size_t n_samples = 1'000'000;
  std::uint64_t seed = 1;
  bool record_per_cell = false;
  unsigned threads = 0;      // 0 = hardware concurrency; never changes results
  bool unit_fading = false;  // test hook: H = 1 instead of exp(1)
};

struct SimResult {
  EmpiricalDistribution aggregate_dbm;
  std::map<std::int64_t, EmpiricalDistribution> per_cell_db;  // filled when record_per_cell
};

/// Monte Carlo sampler of the uplink interference at the victim BS.
///
/// Realization i, cell c and variate kind each get their own counter-based
/// substream, so results do not depend on the worker count.
class Simulator {
 public:
  /// Throws kInvalidArgument for n_samples == 0 or a scenario without interferers.
  Simulator(const NetworkScenario& scenario, SimConfig config);

  /// Draws realization `index`: per-interferer dBm values go to `per_cell`
  /// (one slot per interferer, declaration order); returns the aggregate dBm.
  double realize(std::size_t index, std::span<double> per_cell) const;

  SimResult run() const;

  std::size_t interferer_count() const { return interferers_.size(); }
  std::int64_t interferer_id(std::size_t k) const { return interferers_[k].id; }

 private:
  struct Source {
    std::int64_t id;
    Point bs;
    Region region;
  };

  double realize(std::size_t index, std::span<double> per_cell,
                 std::vector<RejectionSampler>& samplers) const;

  std::vector<Source> interferers_;
  Point victim_bs_;
  ChannelParams channel_;
  PowerControl power_;
  SimConfig config_;
};

SimResult simulate(const NetworkScenario& scenario, const SimConfig& config);

/// Samples of S + 10 log10(H), S ~ N(0, sigma_s_sq), H ~ exp(1), in dB.
EmpiricalDistribution simulate_shadow_fading_product(double sigma_s_sq, std::size_t n,
                                                     std::uint64_t seed, unsigned threads = 0);

/// Raw dump: "ULIKSMP1", little-endian uint64 count, little-endian float64 values.
void write_sample_dump(const std::filesystem::path& path, std::span<const double> values);
std::vector<double> read_sample_dump(const std::filesystem::path& path);

}  // namespace ulik
