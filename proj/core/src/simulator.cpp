#include "ulik/simulator.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>

#include "ulik/channel.hpp"
#include "ulik/error.hpp"
#include "ulik/parallel.hpp"

namespace ulik {
namespace {

constexpr std::uint64_t kPositionTag = 1;
constexpr std::uint64_t kShadowTag = 2;
constexpr std::uint64_t kFadingTag = 3;
constexpr std::size_t kChunks = 64;
constexpr char kDumpMagic[8] = {'U', 'L', 'I', 'K', 'S', 'M', 'P', '1'};

/// 10 log10 of a sum of 10^{x/10}, scaled by the largest term.
double db_sum(std::span<const double> values) {
  const double peak = *std::max_element(values.begin(), values.end());
  double acc = 0.0;
  for (double v : values) acc += std::pow(10.0, (v - peak) / 10.0);
  return peak + 10.0 * std::log10(acc);
}

template <typename T>
void put_le(std::ostream& out, T value) {
  unsigned char bytes[sizeof(T)];
  auto bits = std::bit_cast<std::conditional_t<sizeof(T) == 8, std::uint64_t, std::uint32_t>>(value);
  for (std::size_t i = 0; i < sizeof(T); ++i) bytes[i] = static_cast<unsigned char>(bits >> (8 * i));
  out.write(reinterpret_cast<const char*>(bytes), sizeof(T));
}

std::uint64_t get_le64(std::istream& in) {
  unsigned char bytes[8];
  if (!in.read(reinterpret_cast<char*>(bytes), 8))
    throw Error(Errc::kIoError, "truncated sample dump");
  std::uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | bytes[i];
  return v;
}

}  // namespace

Simulator::Simulator(const NetworkScenario& scenario, SimConfig config)
    : victim_bs_(scenario.victim().bs),
      channel_(scenario.channel),
      power_(scenario.power),
      config_(config) {
  if (config_.n_samples == 0) throw Error(Errc::kInvalidArgument, "n_samples must be >= 1");
  for (const Cell* c : scenario.interferers()) interferers_.push_back({c->id, c->bs, c->ue_region});
  if (interferers_.empty()) throw Error(Errc::kInvalidArgument, "scenario has no interferers");
}

double Simulator::realize(std::size_t index, std::span<double> per_cell) const {
  std::vector<RejectionSampler> samplers;
  for (const Source& s : interferers_) samplers.emplace_back(s.region);
  return realize(index, per_cell, samplers);
}

double Simulator::realize(std::size_t index, std::span<double> per_cell,
                          std::vector<RejectionSampler>& samplers) const {
  const RngStream realization = RngStream(config_.seed).substream(index);
  const double sigma = std::sqrt(channel_.sigma_shad_sq);
  for (std::size_t k = 0; k < interferers_.size(); ++k) {
    const Source& src = interferers_[k];
    const RngStream cell = realization.substream(static_cast<std::uint64_t>(src.id));
    RngStream position = cell.substream(kPositionTag);
    RngStream shadow = cell.substream(kShadowTag);
    RngStream fading = cell.substream(kFadingTag);

    const Point ue = samplers[k].draw(position);
    const double s_bb = sigma * shadow.normal();
    const double s_b1 = sigma * shadow.normal();
    const double h = config_.unit_fading ? 1.0 : fading.exponential();
    per_cell[k] = interference_db(power_, channel_, distance(ue, src.bs), distance(ue, victim_bs_),
                                  s_bb, s_b1, h);
  }
  return db_sum(per_cell.first(interferers_.size()));
}

SimResult Simulator::run() const {
  const std::size_t n = config_.n_samples;
  const std::size_t cells = interferers_.size();
  std::vector<double> aggregate(n);
  std::vector<double> per_cell(config_.record_per_cell ? n * cells : 0);

  parallel_for(kChunks, config_.threads, [&](std::size_t chunk) {
    std::vector<RejectionSampler> samplers;
    for (const Source& s : interferers_) samplers.emplace_back(s.region);
    std::vector<double> scratch(cells);
    for (std::size_t i = chunk * n / kChunks, end = (chunk + 1) * n / kChunks; i < end; ++i) {
      aggregate[i] = realize(i, scratch, samplers);
      if (config_.record_per_cell)
        for (std::size_t k = 0; k < cells; ++k) per_cell[k * n + i] = scratch[k];
    }
  });

  SimResult result{EmpiricalDistribution(std::move(aggregate), ValueDomain::kDbm), {}};
  if (config_.record_per_cell) {
    for (std::size_t k = 0; k < cells; ++k) {
      std::vector<double> column(per_cell.begin() + static_cast<std::ptrdiff_t>(k * n),
                                 per_cell.begin() + static_cast<std::ptrdiff_t>((k + 1) * n));
      result.per_cell_db.emplace(interferers_[k].id,
                                 EmpiricalDistribution(std::move(column), ValueDomain::kDbm));
    }
  }
  return result;
}

SimResult simulate(const NetworkScenario& scenario, const SimConfig& config) {
  return Simulator(scenario, config).run();
}

EmpiricalDistribution simulate_shadow_fading_product(double sigma_s_sq, std::size_t n,
                                                     std::uint64_t seed, unsigned threads) {
  if (n == 0) throw Error(Errc::kInvalidArgument, "n must be >= 1");
  if (!(sigma_s_sq >= 0.0)) throw Error(Errc::kInvalidArgument, "variance must be >= 0");
  const double sigma = std::sqrt(sigma_s_sq);
  const RngStream root(seed);
  std::vector<double> values(n);
  parallel_for(kChunks, threads, [&](std::size_t chunk) {
    for (std::size_t i = chunk * n / kChunks, end = (chunk + 1) * n / kChunks; i < end; ++i) {
      const RngStream draw = root.substream(i);
      RngStream shadow = draw.substream(kShadowTag);
      RngStream fading = draw.substream(kFadingTag);
      values[i] = sigma * shadow.normal() + 10.0 * std::log10(fading.exponential());
    }
  });
  return {std::move(values), ValueDomain::kDbm};
}

void write_sample_dump(const std::filesystem::path& path, std::span<const double> values) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(Errc::kIoError, "cannot open " + path.string() + " for writing");
  out.write(kDumpMagic, sizeof kDumpMagic);
  put_le<std::uint64_t>(out, values.size());
  for (double v : values) put_le<double>(out, v);
  if (!out) throw Error(Errc::kIoError, "failed writing " + path.string());
}

std::vector<double> read_sample_dump(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::kIoError, "cannot open " + path.string());
  char magic[8];
  if (!in.read(magic, 8) || std::memcmp(magic, kDumpMagic, 8) != 0)
    throw Error(Errc::kIoError, path.string() + " is not a sample dump");
  const std::uint64_t count = get_le64(in);
  std::vector<double> values;
  values.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) values.push_back(std::bit_cast<double>(get_le64(in)));
  return values;
}

}  // namespace ulik
