#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <variant>
#include <vector>

#include "ulik/rng.hpp"

namespace ulik {

/// Planar position in km.
struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

inline Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
inline Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
inline Point operator*(double s, Point p) { return {s * p.x, s * p.y}; }
inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
double distance(Point a, Point b);

/// Axis-aligned box; may be unbounded (infinite coordinates) or empty (lo > hi).
struct Box {
  Point lo;
  Point hi;

  bool empty() const { return !(lo.x <= hi.x && lo.y <= hi.y); }
  bool bounded() const;
  double area() const;
  bool contains(Point p) const { return p.x >= lo.x && p.x <= hi.x && p.y >= lo.y && p.y <= hi.y; }

  static Box everything();
  static Box hull(const Box& a, const Box& b);
  static Box overlap(const Box& a, const Box& b);

  friend bool operator==(const Box&, const Box&) = default;
};

struct RegionNode;

/// Immutable constructive-geometry tree describing a UE distribution area.
///
/// Regions are cheap to copy (shared immutable nodes) and safe to share across
/// threads. Construct through the factories, which validate every invariant
/// and throw Error(kInvalidGeometry) otherwise. Boundary points are members.
class Region {
 public:
  static Region disk(Point center, double radius);
  static Region ellipse(Point center, double semi_major, double semi_minor, double rotation);
  static Region polygon(std::vector<Point> vertices);
  static Region half_plane(Point point, Point normal);
  static Region intersection(std::vector<Region> children);
  static Region union_of(std::vector<Region> children);
  static Region difference(Region left, Region right);

  bool contains(Point p) const;
  /// Axis-aligned box containing every member point. Intersection returns the
  /// overlap of child boxes, Union their hull, Difference the left box.
  const Box& bounding_box() const { return box_; }

  const RegionNode& node() const { return *node_; }

  friend bool operator==(const Region& a, const Region& b);

 private:
  explicit Region(std::shared_ptr<const RegionNode> node);

  std::shared_ptr<const RegionNode> node_;
  Box box_;
};

struct Disk {
  Point center;
  double radius = 0.0;
  friend bool operator==(const Disk&, const Disk&) = default;
};

struct Ellipse {
  Point center;
  double semi_major = 0.0;
  double semi_minor = 0.0;
  double rotation = 0.0;  // radians, counter-clockwise from +x
  friend bool operator==(const Ellipse&, const Ellipse&) = default;
};

/// Simple polygon, vertices counter-clockwise, implicitly closed.
struct Polygon {
  std::vector<Point> vertices;
  friend bool operator==(const Polygon&, const Polygon&) = default;
};

/// { p : (p - point) . normal >= 0 }, normal of unit length.
struct HalfPlane {
  Point point;
  Point normal;
  friend bool operator==(const HalfPlane&, const HalfPlane&) = default;
};

struct Intersection {
  std::vector<Region> children;
  friend bool operator==(const Intersection&, const Intersection&) = default;
};

struct Union {
  std::vector<Region> children;
  friend bool operator==(const Union&, const Union&) = default;
};

struct Difference {
  Region left;
  Region right;
  friend bool operator==(const Difference&, const Difference&) = default;
};

struct RegionNode {
  std::variant<Disk, Ellipse, Polygon, HalfPlane, Intersection, Union, Difference> shape;
  friend bool operator==(const RegionNode&, const RegionNode&) = default;
};

/// Rejection-sampling parameters shared by every sampler.
inline constexpr double kMinAcceptance = 1e-4;
inline constexpr std::uint64_t kAcceptanceProbeTrials = 10'000'000;

/// Draws uniform points from a region by rejection from its bounding box.
///
/// Throws kUnboundedRegion for infinite boxes and kEmptyRegion for empty boxes
/// or when, after kAcceptanceProbeTrials trials, fewer than kMinAcceptance of
/// them were accepted.
class RejectionSampler {
 public:
  explicit RejectionSampler(Region region);

  Point draw(RngStream& rng);

  const Region& region() const { return region_; }
  std::uint64_t trials() const { return trials_; }
  std::uint64_t accepted() const { return accepted_; }

 private:
  Region region_;
  Box box_;
  std::uint64_t trials_ = 0;
  std::uint64_t accepted_ = 0;
};

/// Sequential sampling from one stream.
std::vector<Point> sample_uniform(const Region& region, RngStream& rng, std::size_t n);

struct SamplingOptions {
  unsigned threads = 0;        // 0 = hardware concurrency
  std::size_t streams = 64;    // fixed chunk count; results depend on it, not on threads
};

/// Parallel sampling: point range of chunk k comes from rng.substream(k), so
/// the output is identical for any thread count.
std::vector<Point> sample_uniform_parallel(const Region& region, const RngStream& rng,
                                           std::size_t n, const SamplingOptions& options = {});

struct IntegralEstimate {
  double mean = 0.0;
  double std_error = 0.0;
};

/// Monte Carlo average of f over the uniform distribution on `region` (not
/// the unnormalized area integral). f must be thread-safe.
IntegralEstimate integrate(const Region& region, const std::function<double(Point)>& f,
                           std::size_t n, const RngStream& rng,
                           const SamplingOptions& options = {});

struct RegionStats {
  double area = 0.0;  // km^2
  double area_std_error = 0.0;
  Point centroid;
  std::size_t sample_count = 0;
};

RegionStats estimate_stats(const Region& region, RngStream& rng, std::size_t n);

}  // namespace ulik
