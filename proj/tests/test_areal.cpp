#include <doctest.h>

#include <algorithm>
#include <fstream>
#include <sstream>

#include "arealstat/areal.hpp"
#include "arealstat/errors.hpp"

using namespace arealstat;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

const char* kTwoSquares = R"({
  "type": "FeatureCollection",
  "features": [
    {"type": "Feature", "properties": {"id": "a"},
     "geometry": {"type": "Polygon", "coordinates": [[[0,0],[1,0],[1,1],[0,1],[0,0]]]}},
    {"type": "Feature", "properties": {"id": "b"},
     "geometry": {"type": "Polygon", "coordinates": [[[1,0],[2,0],[2,1],[1,1],[1,0]]]}}
  ]
})";

}  // namespace

TEST_CASE("build_grid 20x20") {
  const ArealStructure g = build_grid(20, 20, 1.0);
  CHECK(g.n_units() == 400);
  CHECK(g.region().area() == doctest::Approx(400.0));
  CHECK(g.region().as_rect().has_value());

  const ArealUnit& first = g.unit(0);
  CHECK(first.id == "r0c0");
  CHECK(first.centroid.x == 0.5);
  CHECK(first.centroid.y == 0.5);
  CHECK(first.area == doctest::Approx(1.0));

  const auto& nbrs = g.neighbors("r5c5");
  CHECK(nbrs == std::vector<std::string>{"r4c5", "r5c4", "r5c6", "r6c5"});

  // Every interior cell has 4 rook neighbors; centroids sit one cell apart.
  for (int r = 1; r < 19; ++r)
    for (int c = 1; c < 19; ++c)
      CHECK(g.neighbors("r" + std::to_string(r) + "c" + std::to_string(c)).size() == 4);
  CHECK(min_pairwise_distance(g.centroids()) == 1.0);
}

TEST_CASE("build_grid degenerate and small cases") {
  const ArealStructure one = build_grid(1, 1, 1.0);
  CHECK(one.n_units() == 1);
  CHECK(one.neighbors("r0c0").empty());

  const ArealStructure two = build_grid(2, 2, 1.0);
  for (const ArealUnit& u : two.units()) CHECK(two.neighbors(u.id).size() == 2);

  CHECK_THROWS_AS(build_grid(0, 5, 1.0), DomainError);
  CHECK_THROWS_AS(build_grid(5, 5, 0.0), DomainError);
}

TEST_CASE("build_grid region area scales with cell size") {
  const ArealStructure g = build_grid(3, 7, 2.5);
  CHECK(g.region().area() == doctest::Approx(3 * 7 * 2.5 * 2.5));
  CHECK(min_pairwise_distance(g.centroids()) == doctest::Approx(2.5));
}

TEST_CASE("compute_adjacency rook vs queen on a 3x3 grid") {
  const ArealStructure g = build_grid(3, 3, 1.0);
  const AdjacencyMap rook = compute_adjacency(g.units(), AdjacencyRule::SharedEdge);
  const AdjacencyMap queen = compute_adjacency(g.units(), AdjacencyRule::SharedVertex);
  CHECK(rook.at("r1c1").size() == 4);
  CHECK(queen.at("r1c1").size() == 8);
  // The generic computation reproduces the grid's built-in rook adjacency.
  CHECK(rook == g.adjacency());
}

TEST_CASE("corner contact is queen-only") {
  std::vector<ArealUnit> units;
  Polygon a, b;
  a.outer = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  b.outer = {{1, 1}, {2, 1}, {2, 2}, {1, 2}};
  units.push_back(make_unit("a", {a}));
  units.push_back(make_unit("b", {b}));
  CHECK(compute_adjacency(units, AdjacencyRule::SharedEdge).at("a").empty());
  CHECK(compute_adjacency(units, AdjacencyRule::SharedVertex).at("a") ==
        std::vector<std::string>{"b"});
}

TEST_CASE("parse_structure_geojson minimal document") {
  const ArealStructure s = parse_structure_geojson(kTwoSquares);
  CHECK(s.n_units() == 2);
  CHECK(s.neighbors("a") == std::vector<std::string>{"b"});
  CHECK(s.neighbors("b") == std::vector<std::string>{"a"});
  CHECK(s.region().area() == doctest::Approx(2.0));
  CHECK(s.unit(s.index_of("a")).centroid.x == doctest::Approx(0.5));
}

TEST_CASE("loader rejects malformed documents") {
  CHECK_THROWS_AS(parse_structure_geojson("{not json"), LoadError);
  CHECK_THROWS_AS(parse_structure_geojson(R"({"type":"Feature"})"), LoadError);

  // Missing id.
  CHECK_THROWS_AS(parse_structure_geojson(R"({
    "type": "FeatureCollection",
    "features": [{"type":"Feature","properties":{},
      "geometry":{"type":"Polygon","coordinates":[[[0,0],[1,0],[1,1],[0,0]]]}}]
  })"),
                  LoadError);

  // Duplicate ids.
  CHECK_THROWS_AS(parse_structure_geojson(R"({
    "type": "FeatureCollection",
    "features": [
      {"type":"Feature","properties":{"id":"x"},
       "geometry":{"type":"Polygon","coordinates":[[[0,0],[1,0],[1,1],[0,1],[0,0]]]}},
      {"type":"Feature","properties":{"id":"x"},
       "geometry":{"type":"Polygon","coordinates":[[[2,0],[3,0],[3,1],[2,1],[2,0]]]}}
    ]
  })"),
                  LoadError);

  // Zero-area feature.
  CHECK_THROWS_AS(parse_structure_geojson(R"({
    "type": "FeatureCollection",
    "features": [{"type":"Feature","properties":{"id":"flat"},
      "geometry":{"type":"Polygon","coordinates":[[[0,0],[1,1],[2,2],[0,0]]]}}]
  })"),
                  LoadError);

  // Empty geometry.
  CHECK_THROWS_AS(parse_structure_geojson(R"({
    "type": "FeatureCollection",
    "features": [{"type":"Feature","properties":{"id":"none"},"geometry":null}]
  })"),
                  LoadError);
}

TEST_CASE("loader rejects geographic CRS hints") {
  const std::string doc = R"({
    "type": "FeatureCollection",
    "crs": {"type": "name", "properties": {"name": "urn:ogc:def:crs:EPSG::4326"}},
    "features": [{"type":"Feature","properties":{"id":"a"},
      "geometry":{"type":"Polygon","coordinates":[[[0,0],[1,0],[1,1],[0,1],[0,0]]]}}]
  })";
  CHECK_THROWS_AS(parse_structure_geojson(doc), LoadError);
}

TEST_CASE("multipolygon units use area-weighted centroids") {
  const std::string doc = R"({
    "type": "FeatureCollection",
    "features": [
      {"type":"Feature","properties":{"id":"parts"},
       "geometry":{"type":"MultiPolygon","coordinates":[
         [[[0,0],[1,0],[1,1],[0,1],[0,0]]],
         [[[2,0],[4,0],[4,2],[2,2],[2,0]]]
       ]}}
    ]
  })";
  const ArealStructure s = parse_structure_geojson(doc);
  const ArealUnit& u = s.unit(0);
  CHECK(u.area == doctest::Approx(5.0));
  // (1*0.5 + 4*3) / 5, (1*0.5 + 4*1) / 5
  CHECK(u.centroid.x == doctest::Approx(2.5));
  CHECK(u.centroid.y == doctest::Approx(0.9));
}

TEST_CASE("loader handles rings with holes") {
  const std::string doc = R"({
    "type": "FeatureCollection",
    "features": [
      {"type":"Feature","properties":{"id":"donut"},
       "geometry":{"type":"Polygon","coordinates":[
         [[0,0],[4,0],[4,4],[0,4],[0,0]],
         [[1,1],[3,1],[3,3],[1,3],[1,1]]
       ]}}
    ]
  })";
  const ArealStructure s = parse_structure_geojson(doc);
  CHECK(s.unit(0).area == doctest::Approx(12.0));
  CHECK(s.unit(0).centroid.x == doctest::Approx(2.0));
  CHECK_FALSE(contains(s.region(), {2.0, 2.0}));
  CHECK(contains(s.region(), {0.5, 2.0}));
}

TEST_CASE("fixture loads with stable round trip") {
  const std::string path = std::string(TEST_DATA_DIR) + "/synthetic_irregular_30.geojson";
  const ArealStructure s = parse_structure_geojson(read_file(path));
  CHECK(s.n_units() == 30);

  double total = 0.0;
  for (const ArealUnit& u : s.units()) {
    CHECK(u.area > 0.0);
    total += u.area;
  }
  CHECK(total == doctest::Approx(s.region().area()));

  // Adjacency symmetric and irreflexive.
  for (const auto& [id, nbrs] : s.adjacency()) {
    for (const std::string& n : nbrs) {
      CHECK(n != id);
      const auto& back = s.adjacency().at(n);
      CHECK(std::find(back.begin(), back.end(), id) != back.end());
    }
  }

  const ArealStructure again = parse_structure_geojson(to_geojson(s));
  REQUIRE(again.n_units() == s.n_units());
  for (std::size_t i = 0; i < s.n_units(); ++i) {
    CHECK(again.unit(i).id == s.unit(i).id);
    CHECK(again.unit(i).centroid.x == s.unit(i).centroid.x);
    CHECK(again.unit(i).centroid.y == s.unit(i).centroid.y);
  }
  CHECK(again.adjacency() == s.adjacency());
}

TEST_CASE("queen adjacency contains rook adjacency on the fixture") {
  const std::string path = std::string(TEST_DATA_DIR) + "/synthetic_irregular_30.geojson";
  const ArealStructure rook = load_structure(path, AdjacencyRule::SharedEdge);
  const AdjacencyMap queen = compute_adjacency(rook.units(), AdjacencyRule::SharedVertex);
  for (const auto& [id, nbrs] : rook.adjacency()) {
    for (const std::string& n : nbrs) {
      const auto& q = queen.at(id);
      CHECK(std::find(q.begin(), q.end(), n) != q.end());
    }
  }
}
