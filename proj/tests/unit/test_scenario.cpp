#include <cmath>
#include <random>
#include <string>

#include <gtest/gtest.h>

#include "test_support.hpp"
#include "ulik/error.hpp"
#include "ulik/scenario.hpp"
#include "ulik/scenario_io.hpp"

namespace ulik {
namespace {

const char* kMinimal = R"({
  "format_version": 1,
  "victim_cell_id": 1,
  "min_bs_ue_distance_km": 0.005,
  "channel": {"A_db": 103.8, "alpha": 20.9, "sigma_shad_sq": 100, "n_antennas": 4},
  "power": {"p0_dbm": -76, "eta": 0.8},
  "cells": [
    {"id": 1, "bs_km": [0, 0], "region": {"type": "disk", "center": [0, 0], "radius": 0.01}},
    {"id": 2, "bs_km": [0.015, 0], "region": {"type": "disk", "center": [0.015, 0], "radius": 0.01}}
  ]
})";

Error error_of(const std::string& text, LoadOptions options = {}) {
  try {
    load_scenario(text, options);
  } catch (const Error& e) {
    return e;
  }
  ADD_FAILURE() << "expected an error";
  return Error(Errc::kIoError, "none");
}

std::string replace(std::string s, const std::string& from, const std::string& to) {
  const auto pos = s.find(from);
  EXPECT_NE(pos, std::string::npos) << from;
  return s.replace(pos, from.size(), to);
}

TEST(LoadScenario, MinimalDocument) {
  const NetworkScenario s = load_scenario(kMinimal);
  ASSERT_EQ(s.cells.size(), 2u);
  EXPECT_EQ(s.victim().id, 1);
  EXPECT_EQ(s.interferers().size(), 1u);
  EXPECT_EQ(s.channel.n_antennas, 4);
  EXPECT_EQ(s.power.eta, 0.8);
  // Exclusion disk removed from the UE region, not from the declared one.
  EXPECT_TRUE(s.cells[1].region.contains({0.015, 0}));
  EXPECT_FALSE(s.cells[1].ue_region.contains({0.015, 0}));
  EXPECT_FALSE(s.cells[1].ue_region.contains({0.019, 0}));
  EXPECT_TRUE(s.cells[1].ue_region.contains({0.021, 0}));
}

TEST(LoadScenario, MissingVictimIsSchemaError) {
  const Error e = error_of(replace(kMinimal, "\"victim_cell_id\": 1,", ""));
  EXPECT_EQ(e.code(), Errc::kSchemaError);
  EXPECT_NE(std::string(e.what()).find("victim_cell_id"), std::string::npos);
}

TEST(LoadScenario, FieldPathsInSchemaErrors) {
  Error e = error_of(replace(kMinimal, "\"radius\": 0.01}}\n  ]", "\"radius\": \"big\"}}\n  ]"));
  EXPECT_EQ(e.code(), Errc::kSchemaError);
  EXPECT_NE(std::string(e.what()).find("cells[1].region.radius"), std::string::npos) << e.what();
  e = error_of(replace(kMinimal, "\"type\": \"disk\", \"center\": [0, 0]", "\"type\": \"blob\", \"center\": [0, 0]"));
  EXPECT_NE(std::string(e.what()).find("cells[0].region.type"), std::string::npos) << e.what();
  e = error_of(replace(kMinimal, "\"bs_km\": [0, 0]", "\"bs_km\": [0]"));
  EXPECT_NE(std::string(e.what()).find("cells[0].bs_km"), std::string::npos) << e.what();
  EXPECT_EQ(error_of("{not json").code(), Errc::kSchemaError);
  EXPECT_EQ(error_of(replace(kMinimal, "\"format_version\": 1", "\"format_version\": 2")).code(),
            Errc::kSchemaError);
}

TEST(LoadScenario, UnknownFieldsStrictAndLenient) {
  const std::string doc = replace(kMinimal, "\"eta\": 0.8}", "\"eta\": 0.8, \"pmax\": 23}");
  const Error e = error_of(doc);
  EXPECT_EQ(e.code(), Errc::kSchemaError);
  EXPECT_NE(std::string(e.what()).find("power.pmax"), std::string::npos);
  EXPECT_NO_THROW(load_scenario(doc, {true}));
}

TEST(LoadScenario, RegionInsideExclusionNamesCell) {
  const Error e = error_of(replace(kMinimal, "\"center\": [0.015, 0], \"radius\": 0.01",
                                   "\"center\": [0.015, 0], \"radius\": 0.004"));
  EXPECT_EQ(e.code(), Errc::kValidationError);
  EXPECT_NE(std::string(e.what()).find("cell 2"), std::string::npos) << e.what();
}

TEST(LoadScenario, InvalidGeometryNamesCell) {
  const Error e = error_of(replace(kMinimal, "\"center\": [0.015, 0], \"radius\": 0.01",
                                   "\"center\": [0.015, 0], \"radius\": -0.01"));
  EXPECT_EQ(e.code(), Errc::kValidationError);
  EXPECT_NE(std::string(e.what()).find("cell 2"), std::string::npos) << e.what();
}

TEST(LoadScenario, SemanticValidation) {
  EXPECT_EQ(error_of(replace(kMinimal, "\"victim_cell_id\": 1", "\"victim_cell_id\": 9")).code(),
            Errc::kValidationError);
  EXPECT_EQ(error_of(replace(kMinimal, "{\"id\": 2", "{\"id\": 1")).code(),
            Errc::kValidationError);
  EXPECT_EQ(error_of(replace(kMinimal, "\"eta\": 0.8", "\"eta\": 1.5")).code(),
            Errc::kValidationError);
}

TEST(LoadScenario, MissingFileIsIoError) {
  try {
    load_scenario_file("/nonexistent/scenario.json");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::kIoError);
  }
}

TEST(RoundTrip, GeneratedScenariosSurviveSaveLoad) {
  HotspotDropSpec small;
  small.n_cells = 12;
  small.area_width = small.area_height = 0.15;
  const NetworkScenario scenarios[] = {
      gen_single_interferer(0.02, RegionShape::kDisk),
      gen_single_interferer(0.01, RegionShape::kIrregular),
      gen_hotspot(small),
      gen_hex_grid(1, 0.03, 0.02),
  };
  for (const NetworkScenario& s : scenarios) {
    const NetworkScenario back = load_scenario(save_scenario(s));
    EXPECT_TRUE(back == s);
    EXPECT_EQ(save_scenario(back), save_scenario(s));
  }
}

TEST(RoundTrip, AllRegionKindsAndAwkwardNumbers) {
  const Point bs{0.1 / 3.0, -1e-3};
  const Region r = Region::union_of(
      {Region::difference(Region::ellipse(bs, 0.03, 0.01 / 7.0, 0.123456789), Region::disk(bs, 1e-3)),
       Region::intersection({Region::polygon({{0.01, 0.0}, {0.05, 0.0}, {0.03, 0.02}}),
                             Region::half_plane({0.0, 0.0}, {0.6, 0.8})})});
  const NetworkScenario s = make_scenario(
      {{1, {0, 0}, Region::disk({0, 0}, 0.01)}, {7, bs, r}}, 1, {103.8, 20.9, 64.0, 2}, {-80.5, 0.7},
      0.005, {{"note", "x"}});
  const NetworkScenario back = load_scenario(save_scenario(s));
  EXPECT_TRUE(back == s);
  EXPECT_EQ(back.metadata.at("note"), "x");
}

TEST(GenerateSingle, Geometry) {
  const NetworkScenario s4 = gen_single_interferer(0.04, RegionShape::kDisk);
  EXPECT_NEAR(distance(s4.victim().bs, s4.interferers()[0]->bs), 0.06, 1e-15);
  const NetworkScenario s1 = gen_single_interferer(0.01, RegionShape::kDisk);
  EXPECT_EQ(s1.interferers()[0]->bs, (Point{0.015, 0.0}));
  EXPECT_EQ(s1.victim().bs, (Point{0.0, 0.0}));
}

TEST(GenerateSingle, IrregularRegionIsNonemptySubsetOfDisk) {
  for (double r : {0.01, 0.02, 0.04}) {
    const NetworkScenario s = gen_single_interferer(r, RegionShape::kIrregular);
    const Cell& c = *s.interferers()[0];
    RngStream rng(1);
    const RegionStats st = estimate_stats(c.ue_region, rng, 20000);
    EXPECT_GT(st.area, 0.0);
    EXPECT_LT(st.area, 3.1416 * r * r);
    for (const Point& p : sample_uniform(c.ue_region, rng, 2000))
      ASSERT_LE(distance(p, c.bs), r * (1 + 1e-12));
  }
}

TEST(GenerateHotspot, FarApartCellsKeepFullDisks) {
  HotspotDropSpec spec;
  spec.n_cells = 2;
  spec.radius_r = 0.02;
  spec.area_width = spec.area_height = 10.0;
  spec.min_bs_bs_distance = 1.0;
  const NetworkScenario s = gen_hotspot(spec);
  for (const Cell& c : s.cells)
    EXPECT_TRUE(std::holds_alternative<Disk>(c.region.node().shape));
}

TEST(GenerateHotspot, BisectorClippingMakesRegionsDisjoint) {
  const std::vector<Point> bs = {{0, 0}, {0.03, 0.01}};
  const Region a = nearest_bs_region(bs, 0, 0.02);
  const Region b = nearest_bs_region(bs, 1, 0.02);
  RngStream rng(5);
  for (const Point& p : sample_uniform(a, rng, 20000)) {
    ASSERT_FALSE(b.contains(p));
    ASSERT_LE(distance(p, bs[0]), distance(p, bs[1]));
  }
  for (const Point& p : sample_uniform(b, rng, 20000)) ASSERT_FALSE(a.contains(p));
}

TEST(GenerateHotspot, DefaultDropHas84NonemptyDisjointCells) {
  HotspotDropSpec spec;
  spec.radius_r = 0.02;
  const NetworkScenario s = gen_hotspot(spec);
  ASSERT_EQ(s.cells.size(), 84u);
  // make_scenario already proved every UE region nonempty; check disjointness
  // with 1e5 uniform probes over the drop area.
  std::mt19937_64 gen(99);
  std::uniform_real_distribution<double> ux(-0.05, 0.55);
  int shared = 0;
  for (int i = 0; i < 100000; ++i) {
    const Point p{ux(gen), ux(gen)};
    int owners = 0;
    for (const Cell& c : s.cells) owners += c.region.contains(p) ? 1 : 0;
    if (owners > 1) ++shared;
  }
  EXPECT_EQ(shared, 0);
  // Victim is the BS closest to the area centre.
  for (const Cell& c : s.cells)
    EXPECT_LE(distance(s.victim().bs, {0.25, 0.25}), distance(c.bs, {0.25, 0.25}));
  for (std::size_t i = 0; i < s.cells.size(); ++i)
    for (std::size_t j = i + 1; j < s.cells.size(); ++j)
      ASSERT_GE(distance(s.cells[i].bs, s.cells[j].bs), 0.03);
}

TEST(GenerateHotspot, DeterministicPerSeed) {
  HotspotDropSpec spec;
  spec.n_cells = 30;
  const NetworkScenario a = gen_hotspot(spec);
  const NetworkScenario b = gen_hotspot(spec);
  EXPECT_TRUE(a == b);
  spec.seed = 2;
  EXPECT_FALSE(a == gen_hotspot(spec));
}

TEST(GenerateHotspot, Failures) {
  HotspotDropSpec spec;
  spec.max_attempts = 10;
  try {
    gen_hotspot(spec);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::kPlacementFailure);
  }
  spec = HotspotDropSpec{};
  spec.n_cells = 400;
  try {
    gen_hotspot(spec);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::kInvalidArgument);
  }
}

TEST(GenerateHex, RingGeometry) {
  EXPECT_THROW(gen_hex_grid(0, 0.05, 0.02), Error);
  const NetworkScenario s = gen_hex_grid(1, 0.05, 0.02);
  ASSERT_EQ(s.cells.size(), 7u);
  EXPECT_EQ(s.victim().bs, (Point{0, 0}));
  for (const Cell* c : s.interferers()) EXPECT_NEAR(distance(c->bs, {0, 0}), 0.05, 1e-15);
  EXPECT_EQ(gen_hex_grid(2, 0.05, 0.02).cells.size(), 19u);
}

TEST(GenerateHex, TangentDisksAreNotClipped) {
  const NetworkScenario s = gen_hex_grid(1, 0.04, 0.02);
  for (const Cell& c : s.cells) EXPECT_TRUE(std::holds_alternative<Disk>(c.region.node().shape));
  const NetworkScenario clipped = gen_hex_grid(1, 0.03, 0.02);
  for (const Cell& c : clipped.cells)
    EXPECT_TRUE(std::holds_alternative<Difference>(c.region.node().shape));
}

}  // namespace
}  // namespace ulik
