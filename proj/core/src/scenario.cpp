#include "ulik/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "ulik/error.hpp"

namespace ulik {
namespace {

void fail_cell(std::int64_t id, const std::string& why) {
  throw Error(Errc::kValidationError, "cell " + std::to_string(id) + ": " + why);
}

}  // namespace

const Cell& NetworkScenario::victim() const {
  for (const Cell& c : cells)
    if (c.id == victim_cell_id) return c;
  throw Error(Errc::kValidationError,
              "victim cell " + std::to_string(victim_cell_id) + " is not in the scenario");
}

std::vector<const Cell*> NetworkScenario::interferers() const {
  std::vector<const Cell*> out;
  for (const Cell& c : cells)
    if (c.id != victim_cell_id) out.push_back(&c);
  return out;
}

NetworkScenario make_scenario(std::vector<CellSpec> cells, std::int64_t victim_cell_id,
                              const ChannelParams& channel, const PowerControl& power,
                              double min_bs_ue_distance_km,
                              std::map<std::string, std::string> metadata) {
  try {
    channel.validate();
    power.validate();
  } catch (const Error& e) {
    throw Error(Errc::kValidationError, e.detail());
  }
  if (!(min_bs_ue_distance_km >= 0.0) || !std::isfinite(min_bs_ue_distance_km))
    throw Error(Errc::kValidationError, "min_bs_ue_distance_km must be non-negative");
  if (cells.size() < 2) throw Error(Errc::kValidationError, "a scenario needs at least 2 cells");

  NetworkScenario s;
  s.victim_cell_id = victim_cell_id;
  s.channel = channel;
  s.power = power;
  s.min_bs_ue_distance_km = min_bs_ue_distance_km;
  s.metadata = std::move(metadata);

  std::set<std::int64_t> ids;
  for (CellSpec& spec : cells) {
    if (!ids.insert(spec.id).second) fail_cell(spec.id, "duplicate cell id");
    if (!std::isfinite(spec.bs.x) || !std::isfinite(spec.bs.y))
      fail_cell(spec.id, "BS position must be finite");
    Region ue = min_bs_ue_distance_km > 0.0
                    ? Region::difference(spec.region, Region::disk(spec.bs, min_bs_ue_distance_km))
                    : spec.region;
    try {
      RejectionSampler sampler(ue);
      RngStream probe(0x5eedULL, static_cast<std::uint64_t>(spec.id));
      sampler.draw(probe);
    } catch (const Error& e) {
      fail_cell(spec.id, std::string("UE region is empty or unbounded after exclusion (") +
                             e.detail() + ")");
    }
    s.cells.push_back(Cell{spec.id, spec.bs, std::move(spec.region), std::move(ue)});
  }
  if (!ids.contains(victim_cell_id))
    throw Error(Errc::kValidationError,
                "victim cell " + std::to_string(victim_cell_id) + " is not in the scenario");
  return s;
}

Region irregular_region(Point bs, double r) {
  const Region square = Region::polygon(
      {{bs.x - r, bs.y - r}, {bs.x + r, bs.y - r}, {bs.x + r, bs.y + r}, {bs.x - r, bs.y + r}});
  const Region disk = Region::disk(bs, r);
  const Region ellipse =
      Region::ellipse({bs.x + 0.2 * r, bs.y + 0.1 * r}, r, 0.6 * r, std::numbers::pi / 6.0);
  return Region::intersection({square, disk, ellipse});
}

NetworkScenario gen_single_interferer(double r, RegionShape shape, std::uint64_t seed,
                                      const ChannelParams& channel, const PowerControl& power) {
  if (!(r > 0.0) || !std::isfinite(r)) throw Error(Errc::kInvalidArgument, "r must be positive");
  const Point victim{0.0, 0.0};
  const Point interferer{1.5 * r, 0.0};
  const Region region =
      shape == RegionShape::kDisk ? Region::disk(interferer, r) : irregular_region(interferer, r);
  std::map<std::string, std::string> meta{
      {"generator", "single"},
      {"shape", shape == RegionShape::kDisk ? "disk" : "irregular"},
      {"seed", std::to_string(seed)}};
  return make_scenario({{1, victim, Region::disk(victim, r)}, {2, interferer, region}}, 1, channel,
                       power, kDefaultMinBsUeDistanceKm, std::move(meta));
}

Region nearest_bs_region(const std::vector<Point>& bs, std::size_t index, double r) {
  const Point b = bs[index];
  std::vector<Region> closer;
  for (std::size_t j = 0; j < bs.size(); ++j) {
    if (j == index) continue;
    const double d = distance(b, bs[j]);
    if (!(d < 2.0 * r)) continue;
    if (d == 0.0) throw Error(Errc::kInvalidArgument, "coincident base stations");
    const Point normal = (1.0 / d) * (bs[j] - b);
    closer.push_back(Region::half_plane(0.5 * (b + bs[j]), normal));
  }
  const Region disk = Region::disk(b, r);
  if (closer.empty()) return disk;
  return Region::difference(disk, Region::union_of(std::move(closer)));
}

NetworkScenario gen_hotspot(const HotspotDropSpec& spec) {
  if (spec.n_cells < 2) throw Error(Errc::kInvalidArgument, "hotspot drop needs n_cells >= 2");
  if (!(spec.radius_r > 0.0) || !(spec.area_width > 0.0) || !(spec.area_height > 0.0))
    throw Error(Errc::kInvalidArgument, "hotspot radius and area must be positive");
  const double spacing = spec.min_bs_bs_distance < 0.0 ? 1.5 * spec.radius_r
                                                      : spec.min_bs_bs_distance;
  const double density = spec.n_cells * std::numbers::pi * 0.25 * spacing * spacing /
                         (spec.area_width * spec.area_height);
  if (!(density < 0.5))
    throw Error(Errc::kInvalidArgument,
                "hotspot packing density " + std::to_string(density) + " is not below 0.5");

  RngStream rng(spec.seed);
  std::vector<Point> bs;
  std::uint64_t attempts = 0;
  while (bs.size() < static_cast<std::size_t>(spec.n_cells)) {
    if (attempts++ >= spec.max_attempts)
      throw Error(Errc::kPlacementFailure, "placed " + std::to_string(bs.size()) + " of " +
                                               std::to_string(spec.n_cells) + " BSs in " +
                                               std::to_string(spec.max_attempts) + " attempts");
    const Point p{spec.area_width * rng.uniform_open(), spec.area_height * rng.uniform_open()};
    const bool clear = std::all_of(bs.begin(), bs.end(),
                                   [&](Point q) { return distance(p, q) >= spacing; });
    if (clear) bs.push_back(p);
  }

  const Point centre{0.5 * spec.area_width, 0.5 * spec.area_height};
  std::size_t victim = 0;
  for (std::size_t i = 1; i < bs.size(); ++i)
    if (distance(bs[i], centre) < distance(bs[victim], centre)) victim = i;

  std::vector<CellSpec> cells;
  for (std::size_t i = 0; i < bs.size(); ++i)
    cells.push_back({static_cast<std::int64_t>(i + 1), bs[i], nearest_bs_region(bs, i, spec.radius_r)});
  std::map<std::string, std::string> meta{{"generator", "hotspot"},
                                          {"n_cells", std::to_string(spec.n_cells)},
                                          {"seed", std::to_string(spec.seed)}};
  return make_scenario(std::move(cells), static_cast<std::int64_t>(victim + 1), spec.channel,
                       spec.power, kDefaultMinBsUeDistanceKm, std::move(meta));
}

NetworkScenario gen_hex_grid(int n_rings, double pitch, double r, const ChannelParams& channel,
                             const PowerControl& power) {
  if (n_rings < 1) throw Error(Errc::kInvalidArgument, "hex grid needs at least one ring");
  if (!(pitch > 0.0) || !(r > 0.0)) throw Error(Errc::kInvalidArgument, "pitch and r must be positive");

  // Axial coordinates, ring by ring, each ring walked counter-clockwise.
  std::vector<Point> bs{{0.0, 0.0}};
  const int dq[6] = {-1, -1, 0, 1, 1, 0};
  const int dr[6] = {1, 0, -1, -1, 0, 1};
  for (int ring = 1; ring <= n_rings; ++ring) {
    int q = ring;
    int s = 0;
    for (int side = 0; side < 6; ++side) {
      for (int step = 0; step < ring; ++step) {
        bs.push_back({pitch * (q + 0.5 * s), pitch * (std::numbers::sqrt3 / 2.0) * s});
        q += dq[side];
        s += dr[side];
      }
    }
  }
  std::vector<CellSpec> cells;
  for (std::size_t i = 0; i < bs.size(); ++i)
    cells.push_back({static_cast<std::int64_t>(i + 1), bs[i], nearest_bs_region(bs, i, r)});
  std::map<std::string, std::string> meta{{"generator", "hex"},
                                          {"n_rings", std::to_string(n_rings)}};
  return make_scenario(std::move(cells), 1, channel, power, kDefaultMinBsUeDistanceKm,
                       std::move(meta));
}

}  // namespace ulik
