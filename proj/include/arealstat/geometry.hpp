#pragma once

#include <optional>
#include <span>
#include <vector>

namespace arealstat {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

double distance(Point a, Point b);

struct Rect {
  double xmin = 0.0;
  double ymin = 0.0;
  double xmax = 0.0;
  double ymax = 0.0;

  double width() const { return xmax - xmin; }
  double height() const { return ymax - ymin; }
  double area() const { return width() * height(); }
  bool degenerate() const { return area() <= 0.0; }
  bool contains(Point p) const {
    return p.x >= xmin && p.x <= xmax && p.y >= ymin && p.y <= ymax;
  }
};

// Vertex sequence without the closing vertex repeated.
using Ring = std::vector<Point>;

struct Polygon {
  Ring outer;
  std::vector<Ring> holes;
};

// Union of polygons forming a study area, with cached total area and
// axis-aligned bounding box. Immutable after construction.
class Region {
 public:
  explicit Region(std::vector<Polygon> polygons);
  static Region rectangle(const Rect& rc);

  const std::vector<Polygon>& polygons() const { return polygons_; }
  double area() const { return area_; }
  const Rect& bbox() const { return bbox_; }

  // Set when the region is a single hole-free axis-aligned rectangle;
  // enables the closed-form edge-weight path.
  const std::optional<Rect>& as_rect() const { return rect_; }

 private:
  std::vector<Polygon> polygons_;
  double area_ = 0.0;
  Rect bbox_;
  std::optional<Rect> rect_;
};

// Unsigned area via the shoelace formula, hole areas subtracted.
// Throws InvalidGeometryError on degenerate rings.
double polygon_area(const Polygon& p);

// Area-weighted centroid (first moment of area over area), holes subtracted.
// Throws InvalidGeometryError when the net area is zero.
Point polygon_centroid(const Polygon& p);

// Closed-region membership: boundary points count as inside. Even-odd rule
// per polygon with holes excluded; true if any member polygon contains pt.
bool contains(const Region& r, Point pt);

// Minimum Euclidean distance over all unordered pairs (brute force).
double min_pairwise_distance(std::span<const Point> points);

// Fraction of the circumference of the circle (center, radius) lying inside
// the region, in (0, 1]. Exact arc arithmetic when the region is a single
// axis-aligned rectangle and 2*radius <= min(width, height); otherwise the
// circle is sampled at arc_samples points with point-in-region tests.
// Throws DomainError if center is outside the region and
// DegenerateWeightError if no part of the circle lies inside.
double edge_weight(Point center, double radius, const Region& r,
                   int arc_samples = 2048);

// Tightest axis-aligned rectangle containing all points. A single point
// yields a zero-area Rect (degenerate() == true).
Rect bounding_rect(std::span<const Point> points);

}  // namespace arealstat
