#pragma once

#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "arealstat/geometry.hpp"

namespace arealstat {

struct ArealUnit {
  std::string id;
  std::vector<Polygon> shape;  // one or more parts
  Point centroid;              // area-weighted over parts
  double area = 0.0;
};

// Builds a unit from its parts, computing area and composite centroid.
ArealUnit make_unit(std::string id, std::vector<Polygon> shape);

enum class AdjacencyRule {
  SharedEdge,    // rook: positive-length shared boundary
  SharedVertex,  // queen: any boundary contact
};

// unit id -> sorted ids of adjacent units (every unit has an entry).
using AdjacencyMap = std::map<std::string, std::vector<std::string>>;

// A collection of areal units partitioning a study area, with the union
// region and the adjacency relation. Immutable after construction; safe
// for concurrent shared reads.
class ArealStructure {
 public:
  ArealStructure(std::vector<ArealUnit> units, AdjacencyMap adjacency, Region region);

  const std::vector<ArealUnit>& units() const { return units_; }
  std::size_t n_units() const { return units_.size(); }
  const Region& region() const { return region_; }
  const AdjacencyMap& adjacency() const { return adjacency_; }
  const std::vector<std::string>& neighbors(const std::string& id) const;
  std::size_t index_of(const std::string& id) const;
  const ArealUnit& unit(std::size_t index) const { return units_[index]; }
  std::vector<Point> centroids() const;

 private:
  std::vector<ArealUnit> units_;
  AdjacencyMap adjacency_;
  Region region_;
  std::map<std::string, std::size_t> index_;
};

// rows x cols grid of square cells tiling [0, cols*cell_size] x
// [0, rows*cell_size], ids "r{row}c{col}", rook adjacency, centroids at
// cell centers. The union region is the enclosing rectangle.
ArealStructure build_grid(int rows, int cols, double cell_size);

// Symmetric, irreflexive adjacency between units. SharedEdge requires a
// collinear shared boundary segment longer than tol; SharedVertex any
// boundary contact within tol.
AdjacencyMap compute_adjacency(std::span<const ArealUnit> units, AdjacencyRule rule,
                               double tol = 1e-9);

// GeoJSON FeatureCollection ingestion (planar coordinates, required string
// property "id" per feature). Throws LoadError naming the offending
// feature; rejects documents with geographic-CRS hints.
ArealStructure parse_structure_geojson(const std::string& text,
                                       AdjacencyRule rule = AdjacencyRule::SharedEdge);
ArealStructure load_structure(const std::filesystem::path& path,
                              AdjacencyRule rule = AdjacencyRule::SharedEdge);

std::string to_geojson(const ArealStructure& s);

// Reads just the union-of-polygons region from a FeatureCollection,
// ignoring ids and adjacency (for callers that only need a study window).
Region load_region(const std::filesystem::path& path);

}  // namespace arealstat
