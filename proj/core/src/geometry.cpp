#include "ulik/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ulik/error.hpp"
#include "ulik/parallel.hpp"

namespace ulik {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kUnitNormalTolerance = 1e-12;

bool finite(Point p) { return std::isfinite(p.x) && std::isfinite(p.y); }

void require(bool ok, const std::string& message) {
  if (!ok) throw Error(Errc::kInvalidGeometry, message);
}

bool on_segment(Point p, Point a, Point b) {
  if (cross(b - a, p - a) != 0.0) return false;
  return p.x >= std::min(a.x, b.x) && p.x <= std::max(a.x, b.x) && p.y >= std::min(a.y, b.y) &&
         p.y <= std::max(a.y, b.y);
}

int orientation(Point a, Point b, Point c) {
  const double v = cross(b - a, c - a);
  return (v > 0.0) - (v < 0.0);
}

bool segments_intersect(Point a, Point b, Point c, Point d) {
  const int o1 = orientation(a, b, c);
  const int o2 = orientation(a, b, d);
  const int o3 = orientation(c, d, a);
  const int o4 = orientation(c, d, b);
  if (o1 != o2 && o3 != o4) return true;
  return (o1 == 0 && on_segment(c, a, b)) || (o2 == 0 && on_segment(d, a, b)) ||
         (o3 == 0 && on_segment(a, c, d)) || (o4 == 0 && on_segment(b, c, d));
}

double signed_area(const std::vector<Point>& v) {
  double twice = 0.0;
  for (std::size_t i = 0, n = v.size(); i < n; ++i) twice += cross(v[i], v[(i + 1) % n]);
  return 0.5 * twice;
}

bool polygon_contains(const Polygon& poly, Point p) {
  const auto& v = poly.vertices;
  bool inside = false;
  for (std::size_t i = 0, n = v.size(), j = n - 1; i < n; j = i++) {
    if (on_segment(p, v[j], v[i])) return true;
    if ((v[i].y > p.y) != (v[j].y > p.y)) {
      const double x_cross = v[j].x + (p.y - v[j].y) * (v[i].x - v[j].x) / (v[i].y - v[j].y);
      if (p.x < x_cross) inside = !inside;
    }
  }
  return inside;
}

struct Contains {
  Point p;

  bool operator()(const Disk& d) const {
    const double dx = p.x - d.center.x;
    const double dy = p.y - d.center.y;
    return dx * dx + dy * dy <= d.radius * d.radius;
  }
  bool operator()(const Ellipse& e) const {
    const double dx = p.x - e.center.x;
    const double dy = p.y - e.center.y;
    const double c = std::cos(e.rotation);
    const double s = std::sin(e.rotation);
    const double u = (dx * c + dy * s) / e.semi_major;
    const double v = (-dx * s + dy * c) / e.semi_minor;
    return u * u + v * v <= 1.0;
  }
  bool operator()(const Polygon& poly) const { return polygon_contains(poly, p); }
  bool operator()(const HalfPlane& h) const { return dot(p - h.point, h.normal) >= 0.0; }
  bool operator()(const Intersection& node) const {
    return std::all_of(node.children.begin(), node.children.end(),
                       [this](const Region& r) { return r.contains(p); });
  }
  bool operator()(const Union& node) const {
    return std::any_of(node.children.begin(), node.children.end(),
                       [this](const Region& r) { return r.contains(p); });
  }
  bool operator()(const Difference& node) const {
    return node.left.contains(p) && !node.right.contains(p);
  }
};

struct BoundingBox {
  Box operator()(const Disk& d) const {
    return {{d.center.x - d.radius, d.center.y - d.radius},
            {d.center.x + d.radius, d.center.y + d.radius}};
  }
  Box operator()(const Ellipse& e) const {
    const double c = std::cos(e.rotation);
    const double s = std::sin(e.rotation);
    const double a2 = e.semi_major * e.semi_major;
    const double b2 = e.semi_minor * e.semi_minor;
    const double hx = std::sqrt(a2 * c * c + b2 * s * s);
    const double hy = std::sqrt(a2 * s * s + b2 * c * c);
    return {{e.center.x - hx, e.center.y - hy}, {e.center.x + hx, e.center.y + hy}};
  }
  Box operator()(const Polygon& poly) const {
    Box box{{kInf, kInf}, {-kInf, -kInf}};
    for (const Point& v : poly.vertices) {
      box.lo = {std::min(box.lo.x, v.x), std::min(box.lo.y, v.y)};
      box.hi = {std::max(box.hi.x, v.x), std::max(box.hi.y, v.y)};
    }
    return box;
  }
  Box operator()(const HalfPlane& h) const {
    Box box = Box::everything();
    if (h.normal.y == 0.0) {
      if (h.normal.x > 0.0) box.lo.x = h.point.x;
      if (h.normal.x < 0.0) box.hi.x = h.point.x;
    } else if (h.normal.x == 0.0) {
      if (h.normal.y > 0.0) box.lo.y = h.point.y;
      if (h.normal.y < 0.0) box.hi.y = h.point.y;
    }
    return box;
  }
  Box operator()(const Intersection& node) const {
    Box box = Box::everything();
    for (const Region& child : node.children) box = Box::overlap(box, child.bounding_box());
    return box;
  }
  Box operator()(const Union& node) const {
    Box box{{kInf, kInf}, {-kInf, -kInf}};
    for (const Region& child : node.children) box = Box::hull(box, child.bounding_box());
    return box;
  }
  Box operator()(const Difference& node) const { return node.left.bounding_box(); }
};

}  // namespace

double distance(Point a, Point b) { return std::hypot(a.x - b.x, a.y - b.y); }

bool Box::bounded() const {
  return std::isfinite(lo.x) && std::isfinite(lo.y) && std::isfinite(hi.x) && std::isfinite(hi.y);
}

double Box::area() const { return empty() ? 0.0 : (hi.x - lo.x) * (hi.y - lo.y); }

Box Box::everything() { return {{-kInf, -kInf}, {kInf, kInf}}; }

Box Box::hull(const Box& a, const Box& b) {
  if (a.empty()) return b;
  if (b.empty()) return a;
  return {{std::min(a.lo.x, b.lo.x), std::min(a.lo.y, b.lo.y)},
          {std::max(a.hi.x, b.hi.x), std::max(a.hi.y, b.hi.y)}};
}

Box Box::overlap(const Box& a, const Box& b) {
  return {{std::max(a.lo.x, b.lo.x), std::max(a.lo.y, b.lo.y)},
          {std::min(a.hi.x, b.hi.x), std::min(a.hi.y, b.hi.y)}};
}

Region::Region(std::shared_ptr<const RegionNode> node)
    : node_(std::move(node)), box_(std::visit(BoundingBox{}, node_->shape)) {}

Region Region::disk(Point center, double radius) {
  require(finite(center), "disk center must be finite");
  require(std::isfinite(radius) && radius > 0.0, "disk radius must be positive");
  return Region(std::make_shared<const RegionNode>(RegionNode{Disk{center, radius}}));
}

Region Region::ellipse(Point center, double semi_major, double semi_minor, double rotation) {
  require(finite(center) && std::isfinite(rotation), "ellipse parameters must be finite");
  require(std::isfinite(semi_major) && std::isfinite(semi_minor) && semi_minor > 0.0 &&
              semi_major >= semi_minor,
          "ellipse requires semi_major >= semi_minor > 0");
  return Region(std::make_shared<const RegionNode>(
      RegionNode{Ellipse{center, semi_major, semi_minor, rotation}}));
}

Region Region::polygon(std::vector<Point> vertices) {
  const std::size_t n = vertices.size();
  require(n >= 3, "polygon needs at least 3 vertices");
  for (const Point& v : vertices) require(finite(v), "polygon vertices must be finite");
  for (std::size_t i = 0; i < n; ++i)
    require(!(vertices[i] == vertices[(i + 1) % n]), "polygon has repeated consecutive vertices");
  const double area = signed_area(vertices);
  require(area != 0.0, "polygon vertices are collinear");
  require(area > 0.0, "polygon vertices must be counter-clockwise");
  for (std::size_t i = 0; i < n; ++i) {
    const Point a = vertices[i];
    const Point b = vertices[(i + 1) % n];
    for (std::size_t j = i + 1; j < n; ++j) {
      const Point c = vertices[j];
      const Point d = vertices[(j + 1) % n];
      const bool adjacent = j == i + 1 || (i == 0 && j == n - 1);
      if (adjacent) {
        // Neighbouring edges share one vertex; they may only touch there.
        const Point shared = j == i + 1 ? b : a;
        const Point other_first = j == i + 1 ? a : b;
        const Point other_second = j == i + 1 ? d : c;
        require(!(orientation(other_first, shared, other_second) == 0 &&
                  dot(other_first - shared, other_second - shared) > 0.0),
                "polygon edges fold back on each other");
      } else {
        require(!segments_intersect(a, b, c, d), "polygon is not simple");
      }
    }
  }
  return Region(std::make_shared<const RegionNode>(RegionNode{Polygon{std::move(vertices)}}));
}

Region Region::half_plane(Point point, Point normal) {
  require(finite(point) && finite(normal), "half-plane parameters must be finite");
  require(std::fabs(std::hypot(normal.x, normal.y) - 1.0) <= kUnitNormalTolerance,
          "half-plane normal must have unit length");
  return Region(std::make_shared<const RegionNode>(RegionNode{HalfPlane{point, normal}}));
}

Region Region::intersection(std::vector<Region> children) {
  require(!children.empty(), "intersection needs at least one child");
  return Region(std::make_shared<const RegionNode>(RegionNode{Intersection{std::move(children)}}));
}

Region Region::union_of(std::vector<Region> children) {
  require(!children.empty(), "union needs at least one child");
  return Region(std::make_shared<const RegionNode>(RegionNode{Union{std::move(children)}}));
}

Region Region::difference(Region left, Region right) {
  return Region(std::make_shared<const RegionNode>(
      RegionNode{Difference{std::move(left), std::move(right)}}));
}

bool Region::contains(Point p) const { return std::visit(Contains{p}, node_->shape); }

bool operator==(const Region& a, const Region& b) {
  return a.node_ == b.node_ || *a.node_ == *b.node_;
}

RejectionSampler::RejectionSampler(Region region)
    : region_(std::move(region)), box_(region_.bounding_box()) {
  if (!box_.bounded()) throw Error(Errc::kUnboundedRegion, "region has an unbounded bounding box");
  if (box_.empty() || !(box_.area() > 0.0))
    throw Error(Errc::kEmptyRegion, "region bounding box is empty");
}

Point RejectionSampler::draw(RngStream& rng) {
  const double width = box_.hi.x - box_.lo.x;
  const double height = box_.hi.y - box_.lo.y;
  for (;;) {
    ++trials_;
    const Point p{box_.lo.x + width * rng.uniform_open(), box_.lo.y + height * rng.uniform_open()};
    if (region_.contains(p)) {
      ++accepted_;
      return p;
    }
    if (trials_ >= kAcceptanceProbeTrials &&
        static_cast<double>(accepted_) < kMinAcceptance * static_cast<double>(trials_)) {
      throw Error(Errc::kEmptyRegion,
                  "rejection acceptance below " + std::to_string(kMinAcceptance) + " after " +
                      std::to_string(trials_) + " trials");
    }
  }
}

std::vector<Point> sample_uniform(const Region& region, RngStream& rng, std::size_t n) {
  RejectionSampler sampler(region);
  std::vector<Point> points;
  points.reserve(n);
  for (std::size_t i = 0; i < n; ++i) points.push_back(sampler.draw(rng));
  return points;
}

std::vector<Point> sample_uniform_parallel(const Region& region, const RngStream& rng,
                                           std::size_t n, const SamplingOptions& options) {
  const std::size_t streams = std::max<std::size_t>(options.streams, 1);
  RejectionSampler prototype(region);  // validates the box once up front
  std::vector<Point> points(n);
  parallel_for(streams, options.threads, [&](std::size_t k) {
    const std::size_t begin = k * n / streams;
    const std::size_t end = (k + 1) * n / streams;
    if (begin == end) return;
    RejectionSampler sampler(prototype.region());
    RngStream sub = rng.substream(k);
    for (std::size_t i = begin; i < end; ++i) points[i] = sampler.draw(sub);
  });
  return points;
}

IntegralEstimate integrate(const Region& region, const std::function<double(Point)>& f,
                           std::size_t n, const RngStream& rng, const SamplingOptions& options) {
  if (n == 0) throw Error(Errc::kInvalidArgument, "integrate needs at least one sample");
  const std::vector<Point> points = sample_uniform_parallel(region, rng, n, options);
  std::vector<double> values(n);
  const std::size_t streams = std::max<std::size_t>(options.streams, 1);
  parallel_for(streams, options.threads, [&](std::size_t k) {
    for (std::size_t i = k * n / streams, end = (k + 1) * n / streams; i < end; ++i)
      values[i] = f(points[i]);
  });

  // Accumulate deviations from a pilot value: exact for constant integrands.
  const double pilot = values.front();
  double sum = 0.0;
  double sum_sq = 0.0;
  for (double v : values) {
    const double d = v - pilot;
    sum += d;
    sum_sq += d * d;
  }
  const double count = static_cast<double>(n);
  IntegralEstimate out;
  out.mean = pilot + sum / count;
  if (n > 1) {
    const double var = std::max(0.0, (sum_sq - sum * sum / count) / (count - 1.0));
    out.std_error = std::sqrt(var / count);
  }
  return out;
}

RegionStats estimate_stats(const Region& region, RngStream& rng, std::size_t n) {
  if (n == 0) throw Error(Errc::kInvalidArgument, "estimate_stats needs at least one sample");
  RejectionSampler sampler(region);
  double sx = 0.0;
  double sy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Point p = sampler.draw(rng);
    sx += p.x;
    sy += p.y;
  }
  const double trials = static_cast<double>(sampler.trials());
  const double acceptance = static_cast<double>(sampler.accepted()) / trials;
  const double box_area = region.bounding_box().area();
  RegionStats stats;
  stats.area = acceptance * box_area;
  stats.area_std_error = box_area * std::sqrt(acceptance * (1.0 - acceptance) / trials);
  stats.centroid = {sx / static_cast<double>(n), sy / static_cast<double>(n)};
  stats.sample_count = n;
  return stats;
}

}  // namespace ulik
