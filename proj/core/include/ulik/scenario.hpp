#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ulik/channel.hpp"
#include "ulik/geometry.hpp"

namespace ulik {

inline constexpr double kDefaultMinBsUeDistanceKm = 0.005;

struct Cell {
  std::int64_t id = 0;
  Point bs;
  Region region;     // UE area as declared
  Region ue_region;  // region minus the exclusion disk around bs; used for sampling

  /// Equality on the declared data (id, bs, region).
  friend bool operator==(const Cell& a, const Cell& b) {
    return a.id == b.id && a.bs == b.bs && a.region == b.region;
  }
};

/// Declared cell, before the exclusion disk is applied.
struct CellSpec {
  std::int64_t id = 0;
  Point bs;
  Region region;
};

struct NetworkScenario {
  std::vector<Cell> cells;
  std::int64_t victim_cell_id = 0;
  ChannelParams channel;
  PowerControl power;
  double min_bs_ue_distance_km = kDefaultMinBsUeDistanceKm;
  std::map<std::string, std::string> metadata;

  const Cell& victim() const;
  /// Every cell except the victim, in declaration order.
  std::vector<const Cell*> interferers() const;

  friend bool operator==(const NetworkScenario&, const NetworkScenario&) = default;
};

/// Validates and assembles a scenario: unique ids, victim present, at least
/// two cells, valid channel/power parameters, and every region nonempty after
/// removing the disk of radius min_bs_ue_distance_km around its own BS.
/// Throws kValidationError naming the offending cell.
NetworkScenario make_scenario(std::vector<CellSpec> cells, std::int64_t victim_cell_id,
                              const ChannelParams& channel, const PowerControl& power,
                              double min_bs_ue_distance_km = kDefaultMinBsUeDistanceKm,
                              std::map<std::string, std::string> metadata = {});

enum class RegionShape {
  kDisk,
  /// Intersection of a square (side 2r), a disk (radius r) and an ellipse
  /// (semi-axes r, 0.6r, rotated 30 degrees, centered at BS + (0.2r, 0.1r)).
  kIrregular,
};

/// Irregular UE region used for the single-interferer experiment.
Region irregular_region(Point bs, double r);

/// Victim BS (id 1) at the origin, interferer (id 2) at (1.5 r, 0) with a UE
/// region of radius-r extent. Victim region is a disk of radius r.
NetworkScenario gen_single_interferer(double r, RegionShape shape, std::uint64_t seed = 1,
                                      const ChannelParams& channel = {},
                                      const PowerControl& power = {});

struct HotspotDropSpec {
  int n_cells = 84;
  double radius_r = 0.02;  // km
  double area_width = 0.5;   // km
  double area_height = 0.5;  // km
  double min_bs_bs_distance = -1.0;  // km; negative selects 1.5 r
  std::uint64_t max_attempts = 1'000'000;
  std::uint64_t seed = 1;
  ChannelParams channel;
  PowerControl power;
};

/// Uniform BS drop with minimum spacing; each cell's region is its disk minus
/// the parts closer to another BS. The cell nearest the area centre is the
/// victim. Throws kPlacementFailure when attempts run out and
/// kInvalidArgument for infeasible packing (expected density >= 0.5).
NetworkScenario gen_hotspot(const HotspotDropSpec& spec);

/// Hexagonal lattice with `n_rings` rings around the victim (id 1).
/// Throws kInvalidArgument for n_rings < 1.
NetworkScenario gen_hex_grid(int n_rings, double pitch, double r, const ChannelParams& channel = {},
                             const PowerControl& power = {});

/// Disk of radius r at bs[index] minus the half-planes closer to any other
/// BS within 2 r.
Region nearest_bs_region(const std::vector<Point>& bs, std::size_t index, double r);

}  // namespace ulik
