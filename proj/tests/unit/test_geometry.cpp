#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "ulik/error.hpp"
#include "ulik/geometry.hpp"

namespace ulik {
namespace {

Region unit_disk() { return Region::disk({0, 0}, 1.0); }

Errc code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an Error";
  return Errc::kIoError;
}

TEST(Contains, DiskCentreAndOutside) {
  EXPECT_TRUE(unit_disk().contains({0, 0}));
  EXPECT_FALSE(unit_disk().contains({2, 0}));
  EXPECT_TRUE(unit_disk().contains({1, 0}));  // boundary
}

TEST(Contains, Annulus) {
  const Region annulus = Region::difference(unit_disk(), Region::disk({0, 0}, 0.5));
  EXPECT_TRUE(annulus.contains({0.75, 0}));
  EXPECT_FALSE(annulus.contains({0.25, 0}));
  EXPECT_FALSE(annulus.contains({0.5, 0}));  // boundary of the removed disk
}

TEST(Contains, RotatedEllipse) {
  const Region e = Region::ellipse({1, 1}, 2.0, 0.5, std::numbers::pi / 2.0);
  EXPECT_TRUE(e.contains({1, 2.9}));
  EXPECT_FALSE(e.contains({2.9, 1}));
  EXPECT_TRUE(e.contains({1.5, 1}));
}

TEST(Contains, PolygonIncludingBoundary) {
  const Region tri = Region::polygon({{0, 0}, {2, 0}, {0, 2}});
  EXPECT_TRUE(tri.contains({0.5, 0.5}));
  EXPECT_TRUE(tri.contains({1, 1}));  // on the hypotenuse
  EXPECT_TRUE(tri.contains({0, 0}));  // vertex
  EXPECT_FALSE(tri.contains({1.5, 1.5}));
  const Region concave = Region::polygon({{0, 0}, {4, 0}, {4, 4}, {2, 1}, {0, 4}});
  EXPECT_FALSE(concave.contains({2, 3}));
  EXPECT_TRUE(concave.contains({1, 1}));
}

TEST(Contains, HalfPlane) {
  const Region h = Region::half_plane({1, 0}, {1, 0});
  EXPECT_TRUE(h.contains({1, 5}));
  EXPECT_TRUE(h.contains({3, -5}));
  EXPECT_FALSE(h.contains({0.999, 0}));
}

TEST(BoundingBox, Examples) {
  EXPECT_EQ(Region::disk({1, 1}, 0.5).bounding_box(), (Box{{0.5, 0.5}, {1.5, 1.5}}));
  const Region u = Region::union_of({unit_disk(), Region::disk({3, 0}, 1.0)});
  EXPECT_EQ(u.bounding_box(), (Box{{-1, -1}, {4, 1}}));
  const Region i = Region::intersection({unit_disk(), Region::half_plane({0, 0}, {1, 0})});
  const Box b = i.bounding_box();
  EXPECT_GE(b.lo.x, -1.0);
  EXPECT_GE(b.lo.y, -1.0);
  EXPECT_LE(b.hi.x, 1.0);
  EXPECT_LE(b.hi.y, 1.0);
  EXPECT_EQ(b.lo.x, 0.0);  // axis-aligned half-plane tightens the box
}

TEST(BoundingBox, RotatedEllipseAndHalfPlanes) {
  const Box b = Region::ellipse({0, 0}, 2.0, 1.0, std::numbers::pi / 2.0).bounding_box();
  EXPECT_NEAR(b.hi.x, 1.0, 1e-12);
  EXPECT_NEAR(b.hi.y, 2.0, 1e-12);
  EXPECT_FALSE(Region::half_plane({0, 0}, {std::sqrt(0.5), std::sqrt(0.5)}).bounding_box().bounded());
  EXPECT_EQ(Region::half_plane({0, 2}, {0, -1}).bounding_box().hi.y, 2.0);
}

TEST(BoundingBox, ContainsMemberPoints) {
  const Region r = Region::difference(
      Region::intersection({Region::ellipse({0.3, -0.2}, 1.5, 0.7, 0.4),
                            Region::polygon({{-1, -1}, {2, -1}, {2, 1}, {-1, 1}})}),
      Region::disk({0.5, 0}, 0.3));
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> u(-3, 3);
  for (int i = 0; i < 100000; ++i) {
    const Point p{u(gen), u(gen)};
    if (r.contains(p)) ASSERT_TRUE(r.bounding_box().contains(p));
  }
}

TEST(Validation, RejectsInvalidPrimitives) {
  EXPECT_EQ(code_of([] { Region::disk({0, 0}, 0.0); }), Errc::kInvalidGeometry);
  EXPECT_EQ(code_of([] { Region::disk({0, 0}, -1.0); }), Errc::kInvalidGeometry);
  EXPECT_EQ(code_of([] { Region::disk({NAN, 0}, 1.0); }), Errc::kInvalidGeometry);
  EXPECT_EQ(code_of([] { Region::ellipse({0, 0}, 1.0, 2.0, 0.0); }), Errc::kInvalidGeometry);
  EXPECT_EQ(code_of([] { Region::ellipse({0, 0}, 1.0, 0.0, 0.0); }), Errc::kInvalidGeometry);
  EXPECT_EQ(code_of([] { Region::polygon({{0, 0}, {1, 0}}); }), Errc::kInvalidGeometry);
  EXPECT_EQ(code_of([] { Region::polygon({{0, 0}, {1, 1}, {2, 2}}); }), Errc::kInvalidGeometry);
  EXPECT_EQ(code_of([] { Region::polygon({{0, 0}, {0, 1}, {1, 0}}); }), Errc::kInvalidGeometry);
  EXPECT_EQ(code_of([] { Region::polygon({{0, 0}, {2, 2}, {2, 0}, {0, 2}}); }),
            Errc::kInvalidGeometry);  // bow tie
  EXPECT_EQ(code_of([] { Region::half_plane({0, 0}, {2, 0}); }), Errc::kInvalidGeometry);
  EXPECT_EQ(code_of([] { Region::union_of({}); }), Errc::kInvalidGeometry);
}

TEST(Region, StructuralEquality) {
  const Region a = Region::difference(unit_disk(), Region::half_plane({0, 0}, {0, 1}));
  const Region b = Region::difference(unit_disk(), Region::half_plane({0, 0}, {0, 1}));
  const Region c = Region::difference(unit_disk(), Region::half_plane({0, 0}, {0, -1}));
  EXPECT_EQ(a, b);
  EXPECT_FALSE(a == c);
}

TEST(Region, CombinatorsMatchBooleanAlgebra) {
  const Region a = Region::ellipse({0.2, 0.1}, 1.2, 0.6, 0.7);
  const Region b = Region::polygon({{-1, -0.5}, {1, -0.8}, {0.9, 1}, {-0.7, 0.6}});
  const Region c = Region::disk({0.5, 0.5}, 0.4);
  const Region inter = Region::intersection({a, b, c});
  const Region uni = Region::union_of({a, b, c});
  const Region diff = Region::difference(a, b);
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> u(-2, 2);
  for (int i = 0; i < 100000; ++i) {
    const Point p{u(gen), u(gen)};
    const bool ia = a.contains(p), ib = b.contains(p), ic = c.contains(p);
    ASSERT_EQ(inter.contains(p), ia && ib && ic);
    ASSERT_EQ(uni.contains(p), ia || ib || ic);
    ASSERT_EQ(diff.contains(p), ia && !ib);
  }
}

TEST(Sampling, PointsLieInRegion) {
  RngStream rng(1);
  const auto pts = sample_uniform(unit_disk(), rng, 100000);
  ASSERT_EQ(pts.size(), 100000u);
  for (const Point& p : pts) ASSERT_TRUE(unit_disk().contains(p));
}

TEST(Sampling, DiskCentroidNearCentre) {
  // Uniform unit disk: each coordinate has variance 1/4, so the 3-sigma CLT
  // band at n = 1e6 is 0.0015; the 0.005 bound is comfortably wide.
  const auto pts = sample_uniform_parallel(unit_disk(), RngStream(2), 1'000'000);
  double sx = 0.0, sy = 0.0;
  for (const Point& p : pts) {
    sx += p.x;
    sy += p.y;
  }
  EXPECT_NEAR(sx / 1e6, 0.0, 0.005);
  EXPECT_NEAR(sy / 1e6, 0.0, 0.005);
}

TEST(Sampling, EmptyRegionIsReported) {
  const Region empty = Region::difference(unit_disk(), Region::disk({0, 0}, 2.0));
  RngStream rng(1);
  EXPECT_EQ(code_of([&] { sample_uniform(empty, rng, 1); }), Errc::kEmptyRegion);
}

TEST(Sampling, UnboundedRegionIsReported) {
  RngStream rng(1);
  EXPECT_EQ(code_of([&] { sample_uniform(Region::half_plane({0, 0}, {1, 0}), rng, 1); }),
            Errc::kUnboundedRegion);
}

TEST(Sampling, ThinButNonemptyRegionSucceeds) {
  // Acceptance about 2e-3: well above the 1e-4 floor.
  const Region sliver = Region::intersection(
      {Region::polygon({{0, 0}, {1, 0}, {1, 1}, {0, 1}}), Region::disk({0, 0}, 0.05)});
  RngStream rng(4);
  EXPECT_EQ(sample_uniform(sliver, rng, 1000).size(), 1000u);
}

TEST(Sampling, DeterministicAcrossThreadCounts) {
  const Region r = Region::difference(unit_disk(), Region::disk({0.2, 0}, 0.3));
  const RngStream rng(77);
  const auto a = sample_uniform_parallel(r, rng, 50001, {1, 64});
  const auto b = sample_uniform_parallel(r, rng, 50001, {3, 64});
  const auto c = sample_uniform_parallel(r, rng, 50001, {8, 64});
  EXPECT_EQ(a, b);
  EXPECT_EQ(a, c);
  RngStream s1(5), s2(5);
  EXPECT_EQ(sample_uniform(r, s1, 1000), sample_uniform(r, s2, 1000));
}

TEST(Integrate, ConstantIsExact) {
  const Region r = Region::intersection({unit_disk(), Region::half_plane({0.1, 0}, {1, 0})});
  const auto est = integrate(r, [](Point) { return 3.25; }, 10000, RngStream(1));
  EXPECT_EQ(est.mean, 3.25);
  EXPECT_EQ(est.std_error, 0.0);
}

TEST(Integrate, SymmetricAndSecondMoment) {
  const auto x = integrate(unit_disk(), [](Point p) { return p.x; }, 1'000'000, RngStream(8));
  EXPECT_NEAR(x.mean, 0.0, 4.0 * x.std_error);
  // E[x^2 + y^2] over the uniform unit disk = int_0^1 r^2 2r dr = 1/2.
  const auto r2 = integrate(unit_disk(), [](Point p) { return p.x * p.x + p.y * p.y; },
                            1'000'000, RngStream(9));
  EXPECT_NEAR(r2.mean, 0.5, 4.0 * r2.std_error);
  EXPECT_LT(r2.std_error, 1e-3);
}

TEST(Stats, DiskAreaWithinThreeStandardErrors) {
  const double r = 0.3;
  RngStream rng(12);
  const RegionStats s = estimate_stats(Region::disk({1, 2}, r), rng, 200000);
  EXPECT_GT(s.area, 0.0);
  EXPECT_NEAR(s.area, std::numbers::pi * r * r, 3.0 * s.area_std_error);
  EXPECT_NEAR(s.centroid.x, 1.0, 0.005);
  EXPECT_NEAR(s.centroid.y, 2.0, 0.005);
  EXPECT_EQ(s.sample_count, 200000u);
}

}  // namespace
}  // namespace ulik
