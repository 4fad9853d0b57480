#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "arealstat/errors.hpp"
#include "arealstat/geometry.hpp"
#include "arealstat/rng.hpp"

using namespace arealstat;

namespace {

Polygon square(double x0, double y0, double side) {
  Polygon p;
  p.outer = {{x0, y0}, {x0 + side, y0}, {x0 + side, y0 + side}, {x0, y0 + side}};
  return p;
}

Polygon rotated(const Polygon& p, double angle) {
  const double c = std::cos(angle), s = std::sin(angle);
  auto rot = [&](const Ring& ring) {
    Ring out;
    for (const Point& v : ring) out.push_back({c * v.x - s * v.y, s * v.x + c * v.y});
    return out;
  };
  Polygon q;
  q.outer = rot(p.outer);
  for (const Ring& h : p.holes) q.holes.push_back(rot(h));
  return q;
}

Polygon translated(const Polygon& p, double dx, double dy) {
  auto shift = [&](const Ring& ring) {
    Ring out;
    for (const Point& v : ring) out.push_back({v.x + dx, v.y + dy});
    return out;
  };
  Polygon q;
  q.outer = shift(p.outer);
  for (const Ring& h : p.holes) q.holes.push_back(shift(h));
  return q;
}

// Brute-force arc integration used as the independent check on the closed
// form (and on the default sampled path).
double sampled_weight(Point center, double radius, const Region& r, int samples) {
  int inside = 0;
  for (int k = 0; k < samples; ++k) {
    const double theta = (k + 0.5) * 2.0 * std::numbers::pi / samples;
    if (contains(r, Point{center.x + radius * std::cos(theta),
                          center.y + radius * std::sin(theta)}))
      ++inside;
  }
  return static_cast<double>(inside) / samples;
}

}  // namespace

TEST_CASE("polygon_area basics") {
  CHECK(polygon_area(square(0, 0, 1)) == doctest::Approx(1.0));

  Polygon tri;
  tri.outer = {{0, 0}, {2, 0}, {0, 2}};
  CHECK(polygon_area(tri) == doctest::Approx(2.0));

  Polygon cw;
  cw.outer = {{0, 0}, {0, 1}, {1, 1}, {1, 0}};
  CHECK(polygon_area(cw) == doctest::Approx(1.0));

  Polygon with_hole = square(0, 0, 1);
  with_hole.holes.push_back({{0.25, 0.25}, {0.75, 0.25}, {0.75, 0.75}, {0.25, 0.75}});
  CHECK(polygon_area(with_hole) == doctest::Approx(0.75));
}

TEST_CASE("polygon_area rejects degenerate rings") {
  Polygon two;
  two.outer = {{0, 0}, {1, 1}};
  CHECK_THROWS_AS(polygon_area(two), InvalidGeometryError);

  Polygon collinear;
  collinear.outer = {{0, 0}, {1, 1}, {2, 2}};
  CHECK_THROWS_AS(polygon_area(collinear), InvalidGeometryError);

  Polygon dup;
  dup.outer = {{0, 0}, {1, 0}, {1, 0}};
  CHECK_THROWS_AS(polygon_area(dup), InvalidGeometryError);
}

TEST_CASE("polygon_area is invariant under reversal, translation, rotation") {
  Rng rng(42);
  for (int trial = 0; trial < 25; ++trial) {
    Polygon p;
    // Star-shaped polygon around the origin: sorted angles, random radii.
    const int k = 5 + static_cast<int>(rng.uniform_below(6));
    for (int i = 0; i < k; ++i) {
      const double ang = 2.0 * std::numbers::pi * i / k;
      const double rad = 0.5 + 2.0 * rng.next_double();
      p.outer.push_back({rad * std::cos(ang), rad * std::sin(ang)});
    }
    const double a = polygon_area(p);

    Polygon rev = p;
    std::reverse(rev.outer.begin(), rev.outer.end());
    CHECK(polygon_area(rev) == doctest::Approx(a).epsilon(1e-9));
    CHECK(polygon_area(translated(p, 13.5, -7.25)) == doctest::Approx(a).epsilon(1e-9));
    CHECK(polygon_area(rotated(p, 0.7)) == doctest::Approx(a).epsilon(1e-9));
  }
}

TEST_CASE("polygon_centroid basics") {
  const Point c1 = polygon_centroid(square(0, 0, 1));
  CHECK(c1.x == doctest::Approx(0.5));
  CHECK(c1.y == doctest::Approx(0.5));

  Polygon tri;
  tri.outer = {{0, 0}, {3, 0}, {0, 3}};
  const Point c2 = polygon_centroid(tri);
  CHECK(c2.x == doctest::Approx(1.0));
  CHECK(c2.y == doctest::Approx(1.0));
}

TEST_CASE("polygon_centroid of the L-shape matches the decomposition value") {
  // Oracle: [0,2]x[0,1] plus [0,1]x[1,2], area-weighted rectangle centroids.
  const double ax = 2.0, axc = 1.0, ayc = 0.5;
  const double bx = 1.0, bxc = 0.5, byc = 1.5;
  const double ex = (ax * axc + bx * bxc) / (ax + bx);
  const double ey = (ax * ayc + bx * byc) / (ax + bx);
  CHECK(ex == doctest::Approx(5.0 / 6.0));

  Polygon l_shape;
  l_shape.outer = {{0, 0}, {2, 0}, {2, 1}, {1, 1}, {1, 2}, {0, 2}};
  const Point c = polygon_centroid(l_shape);
  CHECK(c.x == doctest::Approx(ex).epsilon(1e-12));
  CHECK(c.y == doctest::Approx(ey).epsilon(1e-12));
}

TEST_CASE("polygon_centroid subtracts holes") {
  // Plate [0,4]x[0,2] with hole [3,4]x[0.5,1.5]: oracle by decomposition.
  Polygon plate;
  plate.outer = {{0, 0}, {4, 0}, {4, 2}, {0, 2}};
  plate.holes.push_back({{3, 0.5}, {4, 0.5}, {4, 1.5}, {3, 1.5}});
  const double full = 8.0, hole = 1.0;
  const double ex = (full * 2.0 - hole * 3.5) / (full - hole);
  const Point c = polygon_centroid(plate);
  CHECK(c.x == doctest::Approx(ex).epsilon(1e-12));
  CHECK(c.y == doctest::Approx(1.0).epsilon(1e-12));

  Polygon degenerate;
  degenerate.outer = {{0, 0}, {1, 0}, {2, 0}};
  CHECK_THROWS_AS(polygon_centroid(degenerate), InvalidGeometryError);
}

TEST_CASE("polygon_centroid commutes with translation") {
  Rng rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    Polygon p;
    const int k = 4 + static_cast<int>(rng.uniform_below(5));
    for (int i = 0; i < k; ++i) {
      const double ang = 2.0 * std::numbers::pi * i / k;
      const double rad = 1.0 + rng.next_double();
      p.outer.push_back({rad * std::cos(ang), rad * std::sin(ang)});
    }
    const Point c = polygon_centroid(p);
    const Point ct = polygon_centroid(translated(p, 3.25, -1.5));
    CHECK(ct.x == doctest::Approx(c.x + 3.25).epsilon(1e-12));
    CHECK(ct.y == doctest::Approx(c.y - 1.5).epsilon(1e-12));
  }
}

TEST_CASE("contains uses the closed-region convention") {
  const Region r = Region::rectangle(Rect{0, 0, 1, 1});
  CHECK(contains(r, {0.5, 0.5}));
  CHECK(contains(r, {0.0, 0.0}));   // boundary counts as inside
  CHECK(contains(r, {1.0, 0.5}));
  CHECK_FALSE(contains(r, {1.5, 0.5}));
  CHECK_FALSE(contains(r, {0.5, -0.1}));
}

TEST_CASE("contains excludes hole interiors but keeps hole boundaries") {
  Polygon p = square(0, 0, 4);
  p.holes.push_back({{1, 1}, {3, 1}, {3, 3}, {1, 3}});
  const Region r({p});
  CHECK(contains(r, {0.5, 0.5}));
  CHECK_FALSE(contains(r, {2.0, 2.0}));  // inside the hole
  CHECK(contains(r, {1.0, 2.0}));        // on the hole boundary
}

TEST_CASE("contains over a multi-polygon region") {
  const Region r({square(0, 0, 1), square(5, 5, 1)});
  CHECK(contains(r, {0.5, 0.5}));
  CHECK(contains(r, {5.5, 5.5}));
  CHECK_FALSE(contains(r, {3.0, 3.0}));
}

TEST_CASE("min_pairwise_distance") {
  std::vector<Point> grid;
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) grid.push_back({double(i), double(j)});
  CHECK(min_pairwise_distance(grid) == 1.0);

  const std::vector<Point> tri{{0, 0}, {0, 3}, {4, 0}};
  CHECK(min_pairwise_distance(tri) == 3.0);

  const std::vector<Point> dup{{1, 1}, {1, 1}};
  CHECK(min_pairwise_distance(dup) == 0.0);

  const std::vector<Point> one{{0, 0}};
  CHECK_THROWS_AS(min_pairwise_distance(one), InsufficientPointsError);
}

TEST_CASE("min_pairwise_distance is permutation invariant") {
  Rng rng(99);
  std::vector<Point> pts;
  for (int i = 0; i < 12; ++i) pts.push_back({rng.next_double(), rng.next_double()});
  const double d = min_pairwise_distance(pts);
  for (int shuffle = 0; shuffle < 5; ++shuffle) {
    for (std::size_t k = pts.size(); k > 1; --k)
      std::swap(pts[k - 1], pts[rng.uniform_below(k)]);
    CHECK(min_pairwise_distance(pts) == d);
  }
}

TEST_CASE("edge_weight closed form on the rectangle") {
  const Region r = Region::rectangle(Rect{0, 0, 10, 10});
  CHECK(edge_weight({5, 5}, 1.0, r) == 1.0);
  CHECK(edge_weight({0, 0}, 1.0, r) == 0.25);
  CHECK(edge_weight({5, 0}, 1.0, r) == 0.5);
  CHECK_THROWS_AS(edge_weight({11, 5}, 1.0, r), DomainError);
  CHECK_THROWS_AS(edge_weight({5, 5}, 0.0, r), DomainError);
}

TEST_CASE("edge_weight at (1,1) with radius 2 matches the arc value 5/12") {
  const Region r = Region::rectangle(Rect{0, 0, 10, 10});
  const double exact = edge_weight({1, 1}, 2.0, r);
  CHECK(exact == doctest::Approx(5.0 / 12.0).epsilon(1e-12));
  // Independent brute force at one million arc samples.
  CHECK(std::abs(exact - sampled_weight({1, 1}, 2.0, r, 1000000)) < 2e-6);
}

TEST_CASE("exact and sampled edge_weight agree at 2048 and 32768 samples") {
  const Region r = Region::rectangle(Rect{0, 0, 10, 10});
  const Point centers[] = {{1, 1}, {0.5, 5}, {2, 9.5}, {5, 5}, {9, 1.5}, {0, 4}};
  const double radii[] = {0.5, 1.0, 2.0, 3.0, 4.9};
  for (const Point& c : centers) {
    for (double rad : radii) {
      const double exact = edge_weight(c, rad, r);
      CHECK(std::abs(exact - sampled_weight(c, rad, r, 2048)) < 1e-3);
      CHECK(std::abs(exact - sampled_weight(c, rad, r, 32768)) < 1e-4);
    }
  }
}

TEST_CASE("edge_weight is 1 when the circle clears the boundary, in (0,1] always") {
  const Region r = Region::rectangle(Rect{0, 0, 10, 10});
  Rng rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const Point c{10.0 * rng.next_double(), 10.0 * rng.next_double()};
    const double rad = 0.1 + 4.8 * rng.next_double();
    const double w = edge_weight(c, rad, r);
    CHECK(w > 0.0);
    CHECK(w <= 1.0);
    const double boundary_dist =
        std::min(std::min(c.x, 10.0 - c.x), std::min(c.y, 10.0 - c.y));
    if (boundary_dist > rad) CHECK(w == 1.0);
  }
}

TEST_CASE("edge_weight sampled path on a non-rectangular region") {
  Polygon l_shape;
  l_shape.outer = {{0, 0}, {2, 0}, {2, 1}, {1, 1}, {1, 2}, {0, 2}};
  const Region r({l_shape});
  REQUIRE_FALSE(r.as_rect().has_value());
  const double w = edge_weight({0.5, 0.5}, 0.75, r);
  CHECK(w > 0.0);
  CHECK(w < 1.0);
  // Interior circle in the wide arm.
  CHECK(edge_weight({0.5, 0.5}, 0.25, r) == 1.0);
  CHECK_THROWS_AS(edge_weight({0.5, 0.5}, 50.0, r), DegenerateWeightError);
}

TEST_CASE("bounding_rect") {
  const std::vector<Point> two{{0, 0}, {2, 3}};
  const Rect r = bounding_rect(two);
  CHECK(r.xmin == 0.0);
  CHECK(r.xmax == 2.0);
  CHECK(r.ymin == 0.0);
  CHECK(r.ymax == 3.0);
  CHECK_FALSE(r.degenerate());

  const std::vector<Point> one{{1, 1}};
  CHECK(bounding_rect(one).degenerate());

  std::vector<Point> lattice;
  for (int i = 0; i < 10; ++i)
    for (int j = 0; j < 10; ++j) lattice.push_back({double(i), double(j)});
  const Rect lat = bounding_rect(lattice);
  CHECK(lat.xmax == 9.0);
  CHECK(lat.ymax == 9.0);

  const std::vector<Point> none;
  CHECK_THROWS_AS(bounding_rect(none), InsufficientPointsError);
}
