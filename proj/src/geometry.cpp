#include "arealstat/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "arealstat/errors.hpp"

namespace arealstat {

namespace {

constexpr double kPi = std::numbers::pi;

struct RingMoments {
  double signed_area = 0.0;
  double mx = 0.0;  // first moment about x (signed consistently with area)
  double my = 0.0;
};

RingMoments ring_moments(const Ring& ring) {
  RingMoments m;
  const std::size_t n = ring.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point& a = ring[i];
    const Point& b = ring[(i + 1) % n];
    const double cross = a.x * b.y - b.x * a.y;
    m.signed_area += cross;
    m.mx += (a.x + b.x) * cross;
    m.my += (a.y + b.y) * cross;
  }
  m.signed_area *= 0.5;
  m.mx /= 6.0;
  m.my /= 6.0;
  return m;
}

std::size_t count_distinct(const Ring& ring) {
  std::size_t distinct = 0;
  for (std::size_t i = 0; i < ring.size(); ++i) {
    bool dup = false;
    for (std::size_t j = 0; j < i; ++j) {
      if (ring[i].x == ring[j].x && ring[i].y == ring[j].y) {
        dup = true;
        break;
      }
    }
    if (!dup) ++distinct;
  }
  return distinct;
}

void validate_ring(const Ring& ring) {
  if (count_distinct(ring) < 3)
    throw InvalidGeometryError("polygon ring has fewer than 3 distinct vertices");
}

bool on_segment(Point p, Point a, Point b) {
  const double abx = b.x - a.x, aby = b.y - a.y;
  const double apx = p.x - a.x, apy = p.y - a.y;
  if (abx * apy - aby * apx != 0.0) return false;
  const double dot = apx * abx + apy * aby;
  return dot >= 0.0 && dot <= abx * abx + aby * aby;
}

bool on_ring_boundary(const Ring& ring, Point p) {
  const std::size_t n = ring.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (on_segment(p, ring[i], ring[(i + 1) % n])) return true;
  }
  return false;
}

// Even-odd crossing parity for one ring; boundary handled separately.
bool ring_crossings_odd(const Ring& ring, Point p) {
  bool inside = false;
  const std::size_t n = ring.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point& a = ring[i];
    const Point& b = ring[(i + 1) % n];
    if ((a.y > p.y) != (b.y > p.y)) {
      const double x_int = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
      if (p.x < x_int) inside = !inside;
    }
  }
  return inside;
}

bool polygon_contains(const Polygon& poly, Point p) {
  if (on_ring_boundary(poly.outer, p)) return true;
  for (const Ring& h : poly.holes) {
    if (on_ring_boundary(h, p)) return true;
  }
  bool inside = ring_crossings_odd(poly.outer, p);
  for (const Ring& h : poly.holes) {
    if (ring_crossings_odd(h, p)) inside = !inside;
  }
  return inside;
}

// Angular measure of the circle (center, r) lying outside the rectangle,
// by inclusion-exclusion over the four edges and four corners. Exact as
// long as 2r <= min(width, height), which rules out overlapping exclusions
// from opposite edges.
double rect_outside_angle(const Rect& rc, Point c, double r) {
  const double left = c.x - rc.xmin;
  const double right = rc.xmax - c.x;
  const double bottom = c.y - rc.ymin;
  const double top = rc.ymax - c.y;

  double outside = 0.0;
  for (double d : {left, right, bottom, top}) {
    if (d < r) outside += 2.0 * std::acos(std::clamp(d / r, 0.0, 1.0));
  }
  const double r2 = r * r;
  for (auto [u, v] : {std::pair{left, bottom}, std::pair{left, top},
                      std::pair{right, bottom}, std::pair{right, top}}) {
    if (u * u + v * v < r2) {
      outside -= kPi / 2.0 - std::asin(std::clamp(u / r, 0.0, 1.0)) -
                 std::asin(std::clamp(v / r, 0.0, 1.0));
    }
  }
  return outside;
}

}  // namespace

double distance(Point a, Point b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return std::sqrt(dx * dx + dy * dy);
}

Region::Region(std::vector<Polygon> polygons) : polygons_(std::move(polygons)) {
  if (polygons_.empty()) throw InvalidGeometryError("region has no polygons");
  double xmin = std::numeric_limits<double>::infinity();
  double ymin = xmin;
  double xmax = -xmin;
  double ymax = -xmin;
  for (const Polygon& p : polygons_) {
    area_ += polygon_area(p);
    for (const Point& v : p.outer) {
      xmin = std::min(xmin, v.x);
      ymin = std::min(ymin, v.y);
      xmax = std::max(xmax, v.x);
      ymax = std::max(ymax, v.y);
    }
  }
  if (area_ <= 0.0) throw InvalidGeometryError("region has zero area");
  bbox_ = Rect{xmin, ymin, xmax, ymax};

  if (polygons_.size() == 1 && polygons_[0].holes.empty() &&
      polygons_[0].outer.size() == 4) {
    bool axis_aligned = true;
    for (const Point& v : polygons_[0].outer) {
      if ((v.x != xmin && v.x != xmax) || (v.y != ymin && v.y != ymax))
        axis_aligned = false;
    }
    if (axis_aligned) rect_ = bbox_;
  }
}

Region Region::rectangle(const Rect& rc) {
  if (rc.degenerate()) throw InvalidGeometryError("degenerate rectangle region");
  Polygon p;
  p.outer = {{rc.xmin, rc.ymin}, {rc.xmax, rc.ymin}, {rc.xmax, rc.ymax}, {rc.xmin, rc.ymax}};
  return Region({p});
}

double polygon_area(const Polygon& p) {
  validate_ring(p.outer);
  const double outer = std::abs(ring_moments(p.outer).signed_area);
  if (outer == 0.0) throw InvalidGeometryError("polygon outer ring has zero area");
  double holes = 0.0;
  for (const Ring& h : p.holes) {
    validate_ring(h);
    holes += std::abs(ring_moments(h).signed_area);
  }
  const double net = outer - holes;
  if (net < 0.0) throw InvalidGeometryError("hole area exceeds outer ring area");
  return net;
}

Point polygon_centroid(const Polygon& p) {
  validate_ring(p.outer);
  const RingMoments mo = ring_moments(p.outer);
  const double outer_area = std::abs(mo.signed_area);
  if (outer_area == 0.0) throw InvalidGeometryError("centroid of zero-area polygon");
  const double outer_sign = mo.signed_area < 0.0 ? -1.0 : 1.0;
  double area = outer_area;
  double mx = outer_sign * mo.mx;
  double my = outer_sign * mo.my;
  for (const Ring& h : p.holes) {
    validate_ring(h);
    const RingMoments mh = ring_moments(h);
    const double sign = mh.signed_area < 0.0 ? -1.0 : 1.0;
    area -= std::abs(mh.signed_area);
    mx -= sign * mh.mx;
    my -= sign * mh.my;
  }
  if (area <= 0.0) throw InvalidGeometryError("centroid of zero-area polygon");
  return Point{mx / area, my / area};
}

bool contains(const Region& r, Point pt) {
  if (!r.bbox().contains(pt)) return false;
  for (const Polygon& p : r.polygons()) {
    if (polygon_contains(p, pt)) return true;
  }
  return false;
}

double min_pairwise_distance(std::span<const Point> points) {
  if (points.size() < 2)
    throw InsufficientPointsError("min_pairwise_distance needs at least 2 points");
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      best = std::min(best, distance(points[i], points[j]));
    }
  }
  return best;
}

double edge_weight(Point center, double radius, const Region& r, int arc_samples) {
  if (radius <= 0.0) throw DomainError("edge_weight requires radius > 0");
  if (!contains(r, center)) throw DomainError("edge_weight center outside region");

  const auto& rect = r.as_rect();
  if (rect && 2.0 * radius <= std::min(rect->width(), rect->height())) {
    const double fraction = 1.0 - rect_outside_angle(*rect, center, radius) / (2.0 * kPi);
    if (fraction <= 0.0)
      throw DegenerateWeightError("circle lies entirely outside the region");
    return std::min(fraction, 1.0);
  }

  if (arc_samples < 8) throw DomainError("edge_weight needs at least 8 arc samples");
  int inside = 0;
  const double step = 2.0 * kPi / arc_samples;
  for (int k = 0; k < arc_samples; ++k) {
    const double theta = (k + 0.5) * step;
    const Point p{center.x + radius * std::cos(theta),
                  center.y + radius * std::sin(theta)};
    if (contains(r, p)) ++inside;
  }
  if (inside == 0)
    throw DegenerateWeightError("circle lies entirely outside the region");
  return static_cast<double>(inside) / arc_samples;
}

Rect bounding_rect(std::span<const Point> points) {
  if (points.empty())
    throw InsufficientPointsError("bounding_rect of an empty point set");
  Rect rc{points[0].x, points[0].y, points[0].x, points[0].y};
  for (const Point& p : points) {
    rc.xmin = std::min(rc.xmin, p.x);
    rc.ymin = std::min(rc.ymin, p.y);
    rc.xmax = std::max(rc.xmax, p.x);
    rc.ymax = std::max(rc.ymax, p.y);
  }
  return rc;
}

}  // namespace arealstat
