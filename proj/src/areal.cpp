#include "arealstat/areal.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "arealstat/errors.hpp"

namespace arealstat {

namespace {

struct Segment {
  Point a, b;
};

std::vector<Segment> unit_segments(const ArealUnit& u) {
  std::vector<Segment> segs;
  auto add_ring = [&segs](const Ring& ring) {
    const std::size_t n = ring.size();
    for (std::size_t i = 0; i < n; ++i) segs.push_back({ring[i], ring[(i + 1) % n]});
  };
  for (const Polygon& p : u.shape) {
    add_ring(p.outer);
    for (const Ring& h : p.holes) add_ring(h);
  }
  return segs;
}

Rect unit_bbox(const ArealUnit& u) {
  std::vector<Point> pts;
  for (const Polygon& p : u.shape)
    pts.insert(pts.end(), p.outer.begin(), p.outer.end());
  return bounding_rect(pts);
}

bool bboxes_touch(const Rect& a, const Rect& b, double tol) {
  return a.xmin <= b.xmax + tol && b.xmin <= a.xmax + tol &&
         a.ymin <= b.ymax + tol && b.ymin <= a.ymax + tol;
}

double point_segment_distance(Point p, Point a, Point b) {
  const double abx = b.x - a.x, aby = b.y - a.y;
  const double len2 = abx * abx + aby * aby;
  double t = 0.0;
  if (len2 > 0.0)
    t = std::clamp(((p.x - a.x) * abx + (p.y - a.y) * aby) / len2, 0.0, 1.0);
  const Point q{a.x + t * abx, a.y + t * aby};
  return distance(p, q);
}

double segment_segment_distance(const Segment& s, const Segment& t) {
  // Proper crossing means distance zero.
  auto orient = [](Point a, Point b, Point c) {
    return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
  };
  const double o1 = orient(s.a, s.b, t.a), o2 = orient(s.a, s.b, t.b);
  const double o3 = orient(t.a, t.b, s.a), o4 = orient(t.a, t.b, s.b);
  if (((o1 > 0) != (o2 > 0)) && ((o3 > 0) != (o4 > 0)) && o1 != 0 && o2 != 0 &&
      o3 != 0 && o4 != 0)
    return 0.0;
  return std::min(std::min(point_segment_distance(t.a, s.a, s.b),
                           point_segment_distance(t.b, s.a, s.b)),
                  std::min(point_segment_distance(s.a, t.a, t.b),
                           point_segment_distance(s.b, t.a, t.b)));
}

// Length of the collinear overlap between two segments, 0 if they are not
// collinear within tol.
double collinear_overlap_length(const Segment& s, const Segment& t, double tol) {
  const double dx = s.b.x - s.a.x, dy = s.b.y - s.a.y;
  const double len = std::hypot(dx, dy);
  if (len <= tol) return 0.0;
  const double ux = dx / len, uy = dy / len;
  auto offline = [&](Point p) {
    return std::abs(ux * (p.y - s.a.y) - uy * (p.x - s.a.x));
  };
  if (offline(t.a) > tol || offline(t.b) > tol) return 0.0;
  auto param = [&](Point p) { return ux * (p.x - s.a.x) + uy * (p.y - s.a.y); };
  double ta = param(t.a), tb = param(t.b);
  if (ta > tb) std::swap(ta, tb);
  const double lo = std::max(0.0, ta);
  const double hi = std::min(len, tb);
  return std::max(0.0, hi - lo);
}

bool units_adjacent(const std::vector<Segment>& a, const std::vector<Segment>& b,
                    AdjacencyRule rule, double tol) {
  for (const Segment& s : a) {
    for (const Segment& t : b) {
      if (rule == AdjacencyRule::SharedEdge) {
        if (collinear_overlap_length(s, t, tol) > tol) return true;
      } else {
        if (segment_segment_distance(s, t) <= tol) return true;
      }
    }
  }
  return false;
}

}  // namespace

ArealUnit make_unit(std::string id, std::vector<Polygon> shape) {
  if (shape.empty()) throw InvalidGeometryError("unit '" + id + "' has no geometry");
  double area = 0.0, mx = 0.0, my = 0.0;
  for (const Polygon& p : shape) {
    const double a = polygon_area(p);
    const Point c = polygon_centroid(p);
    area += a;
    mx += a * c.x;
    my += a * c.y;
  }
  if (area <= 0.0) throw InvalidGeometryError("unit '" + id + "' has zero area");
  return ArealUnit{std::move(id), std::move(shape), Point{mx / area, my / area}, area};
}

ArealStructure::ArealStructure(std::vector<ArealUnit> units, AdjacencyMap adjacency,
                               Region region)
    : units_(std::move(units)), adjacency_(std::move(adjacency)), region_(std::move(region)) {
  if (units_.empty()) throw ContractViolationError("structure has no units");
  double total = 0.0;
  for (std::size_t i = 0; i < units_.size(); ++i) {
    const ArealUnit& u = units_[i];
    if (u.id.empty()) throw ContractViolationError("unit with empty id");
    if (u.area <= 0.0) throw ContractViolationError("unit '" + u.id + "' has zero area");
    if (!index_.emplace(u.id, i).second)
      throw ContractViolationError("duplicate unit id '" + u.id + "'");
    total += u.area;
  }
  if (std::abs(total - region_.area()) > 1e-6 * std::max(total, region_.area()))
    throw ContractViolationError("region area does not match the sum of unit areas");
  for (const auto& [id, nbrs] : adjacency_) {
    if (!index_.count(id)) throw ContractViolationError("adjacency lists unknown id '" + id + "'");
    for (const std::string& n : nbrs) {
      if (n == id) throw ContractViolationError("unit '" + id + "' adjacent to itself");
      const auto it = adjacency_.find(n);
      if (it == adjacency_.end() ||
          !std::binary_search(it->second.begin(), it->second.end(), id))
        throw ContractViolationError("adjacency not symmetric at '" + id + "'/'" + n + "'");
    }
  }
  for (const ArealUnit& u : units_) adjacency_.try_emplace(u.id);
}

const std::vector<std::string>& ArealStructure::neighbors(const std::string& id) const {
  const auto it = adjacency_.find(id);
  if (it == adjacency_.end()) throw DomainError("unknown unit id '" + id + "'");
  return it->second;
}

std::size_t ArealStructure::index_of(const std::string& id) const {
  const auto it = index_.find(id);
  if (it == index_.end()) throw DomainError("unknown unit id '" + id + "'");
  return it->second;
}

std::vector<Point> ArealStructure::centroids() const {
  std::vector<Point> pts;
  pts.reserve(units_.size());
  for (const ArealUnit& u : units_) pts.push_back(u.centroid);
  return pts;
}

ArealStructure build_grid(int rows, int cols, double cell_size) {
  if (rows < 1 || cols < 1) throw DomainError("build_grid requires rows, cols >= 1");
  if (cell_size <= 0.0) throw DomainError("build_grid requires cell_size > 0");

  std::vector<ArealUnit> units;
  units.reserve(static_cast<std::size_t>(rows) * cols);
  AdjacencyMap adjacency;
  auto cell_id = [](int r, int c) {
    return "r" + std::to_string(r) + "c" + std::to_string(c);
  };
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      const double x0 = c * cell_size, x1 = (c + 1) * cell_size;
      const double y0 = r * cell_size, y1 = (r + 1) * cell_size;
      Polygon cell;
      cell.outer = {{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}};
      ArealUnit u;
      u.id = cell_id(r, c);
      u.shape = {cell};
      // Exact cell centers; the shoelace centroid agrees to rounding error.
      u.centroid = Point{(c + 0.5) * cell_size, (r + 0.5) * cell_size};
      u.area = cell_size * cell_size;
      units.push_back(std::move(u));

      std::vector<std::string> nbrs;
      if (r > 0) nbrs.push_back(cell_id(r - 1, c));
      if (r + 1 < rows) nbrs.push_back(cell_id(r + 1, c));
      if (c > 0) nbrs.push_back(cell_id(r, c - 1));
      if (c + 1 < cols) nbrs.push_back(cell_id(r, c + 1));
      std::sort(nbrs.begin(), nbrs.end());
      adjacency[units.back().id] = std::move(nbrs);
    }
  }
  Region region = Region::rectangle(Rect{0.0, 0.0, cols * cell_size, rows * cell_size});
  return ArealStructure(std::move(units), std::move(adjacency), std::move(region));
}

AdjacencyMap compute_adjacency(std::span<const ArealUnit> units, AdjacencyRule rule,
                               double tol) {
  std::vector<std::vector<Segment>> segs;
  std::vector<Rect> boxes;
  segs.reserve(units.size());
  boxes.reserve(units.size());
  for (const ArealUnit& u : units) {
    segs.push_back(unit_segments(u));
    boxes.push_back(unit_bbox(u));
  }
  AdjacencyMap adjacency;
  for (const ArealUnit& u : units) adjacency[u.id];
  for (std::size_t i = 0; i < units.size(); ++i) {
    for (std::size_t j = i + 1; j < units.size(); ++j) {
      if (!bboxes_touch(boxes[i], boxes[j], tol)) continue;
      if (units_adjacent(segs[i], segs[j], rule, tol)) {
        adjacency[units[i].id].push_back(units[j].id);
        adjacency[units[j].id].push_back(units[i].id);
      }
    }
  }
  for (auto& [id, nbrs] : adjacency) std::sort(nbrs.begin(), nbrs.end());
  return adjacency;
}

namespace {

using nlohmann::json;

Ring parse_ring(const json& coords, const std::string& feature_id) {
  if (!coords.is_array() || coords.size() < 3)
    throw LoadError("feature '" + feature_id + "': ring with fewer than 3 positions");
  Ring ring;
  ring.reserve(coords.size());
  for (const json& pos : coords) {
    if (!pos.is_array() || pos.size() < 2 || !pos[0].is_number() || !pos[1].is_number())
      throw LoadError("feature '" + feature_id + "': malformed coordinate");
    const double x = pos[0].get<double>();
    const double y = pos[1].get<double>();
    if (!std::isfinite(x) || !std::isfinite(y))
      throw LoadError("feature '" + feature_id + "': non-finite coordinate");
    ring.push_back(Point{x, y});
  }
  if (ring.size() > 1 && ring.front().x == ring.back().x &&
      ring.front().y == ring.back().y)
    ring.pop_back();
  return ring;
}

Polygon parse_polygon(const json& rings, const std::string& feature_id) {
  if (!rings.is_array() || rings.empty())
    throw LoadError("feature '" + feature_id + "': empty polygon");
  Polygon poly;
  poly.outer = parse_ring(rings[0], feature_id);
  for (std::size_t k = 1; k < rings.size(); ++k)
    poly.holes.push_back(parse_ring(rings[k], feature_id));
  return poly;
}

void reject_geographic_crs(const json& root) {
  if (!root.contains("crs")) return;
  std::string dump = root["crs"].dump();
  std::transform(dump.begin(), dump.end(), dump.begin(),
                 [](unsigned char c) { return std::toupper(c); });
  for (const char* hint : {"4326", "CRS84", "WGS84", "LONGLAT"}) {
    if (dump.find(hint) != std::string::npos)
      throw LoadError(
          "document declares a geographic CRS; coordinates must be planar "
          "(project the layer before loading)");
  }
}

}  // namespace

ArealStructure parse_structure_geojson(const std::string& text, AdjacencyRule rule) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw LoadError(std::string("GeoJSON parse failure: ") + e.what());
  }
  if (root.value("type", "") != "FeatureCollection")
    throw LoadError("document is not a GeoJSON FeatureCollection");
  reject_geographic_crs(root);
  if (!root.contains("features") || !root["features"].is_array())
    throw LoadError("FeatureCollection has no features array");

  std::vector<ArealUnit> units;
  std::set<std::string> seen;
  std::size_t ordinal = 0;
  for (const json& feature : root["features"]) {
    ++ordinal;
    const json props = feature.value("properties", json::object());
    if (!props.contains("id") || !props["id"].is_string())
      throw LoadError("feature #" + std::to_string(ordinal) +
                      ": missing string property 'id'");
    const std::string id = props["id"].get<std::string>();
    if (!seen.insert(id).second)
      throw LoadError("duplicate feature id '" + id + "'");
    if (!feature.contains("geometry") || feature["geometry"].is_null())
      throw LoadError("feature '" + id + "': empty geometry");
    const json& geom = feature["geometry"];
    const std::string type = geom.value("type", "");
    std::vector<Polygon> shape;
    if (type == "Polygon") {
      shape.push_back(parse_polygon(geom["coordinates"], id));
    } else if (type == "MultiPolygon") {
      for (const json& part : geom["coordinates"])
        shape.push_back(parse_polygon(part, id));
      if (shape.empty()) throw LoadError("feature '" + id + "': empty MultiPolygon");
    } else {
      throw LoadError("feature '" + id + "': unsupported geometry type '" + type + "'");
    }
    try {
      units.push_back(make_unit(id, std::move(shape)));
    } catch (const InvalidGeometryError& e) {
      throw LoadError("feature '" + id + "': " + e.what());
    }
  }
  if (units.empty()) throw LoadError("FeatureCollection has no polygon features");

  std::vector<Polygon> all;
  for (const ArealUnit& u : units)
    all.insert(all.end(), u.shape.begin(), u.shape.end());
  AdjacencyMap adjacency = compute_adjacency(units, rule);
  return ArealStructure(std::move(units), std::move(adjacency), Region(std::move(all)));
}

ArealStructure load_structure(const std::filesystem::path& path, AdjacencyRule rule) {
  std::ifstream in(path);
  if (!in) throw LoadError("cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_structure_geojson(buf.str(), rule);
}

Region load_region(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw LoadError("cannot open '" + path.string() + "'");
  json root;
  try {
    root = json::parse(in);
  } catch (const json::parse_error& e) {
    throw LoadError(std::string("GeoJSON parse failure: ") + e.what());
  }
  if (root.value("type", "") != "FeatureCollection")
    throw LoadError("document is not a GeoJSON FeatureCollection");
  reject_geographic_crs(root);
  std::vector<Polygon> polys;
  std::size_t ordinal = 0;
  for (const json& feature : root.value("features", json::array())) {
    ++ordinal;
    const std::string fid = "#" + std::to_string(ordinal);
    if (!feature.contains("geometry") || feature["geometry"].is_null()) continue;
    const json& geom = feature["geometry"];
    const std::string type = geom.value("type", "");
    if (type == "Polygon") {
      polys.push_back(parse_polygon(geom["coordinates"], fid));
    } else if (type == "MultiPolygon") {
      for (const json& part : geom["coordinates"])
        polys.push_back(parse_polygon(part, fid));
    }
  }
  if (polys.empty()) throw LoadError("no polygon geometry in '" + path.string() + "'");
  return Region(std::move(polys));
}

std::string to_geojson(const ArealStructure& s) {
  json features = json::array();
  for (const ArealUnit& u : s.units()) {
    auto ring_coords = [](const Ring& ring) {
      json arr = json::array();
      for (const Point& p : ring) arr.push_back(json::array({p.x, p.y}));
      arr.push_back(json::array({ring.front().x, ring.front().y}));
      return arr;
    };
    auto poly_coords = [&](const Polygon& p) {
      json arr = json::array();
      arr.push_back(ring_coords(p.outer));
      for (const Ring& h : p.holes) arr.push_back(ring_coords(h));
      return arr;
    };
    json geom;
    if (u.shape.size() == 1) {
      geom = {{"type", "Polygon"}, {"coordinates", poly_coords(u.shape[0])}};
    } else {
      json parts = json::array();
      for (const Polygon& p : u.shape) parts.push_back(poly_coords(p));
      geom = {{"type", "MultiPolygon"}, {"coordinates", parts}};
    }
    features.push_back({{"type", "Feature"},
                        {"properties", {{"id", u.id}}},
                        {"geometry", geom}});
  }
  const json root = {{"type", "FeatureCollection"}, {"features", features}};
  return root.dump(2);
}

}  // namespace arealstat
