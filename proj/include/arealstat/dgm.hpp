#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "arealstat/areal.hpp"

namespace arealstat {

enum class SampleSizeRule { Tenth, Quarter };

// floor(n_a/10) or floor(n_a/4). Throws InsufficientSampleError when the
// resulting N is below 2 (both tests need at least two points).
int sample_size(int n_a, SampleSizeRule rule);

// Units sampled with weight_ratio times the probability of the rest.
struct ClusterRegionSpec {
  std::vector<std::string> member_ids;
  double weight_ratio = 10.0;
};

struct Draw {
  std::vector<std::string> observed_ids;  // in order of selection
  std::uint64_t seed = 0;
};

// D1: uniform sampling without replacement.
Draw sample_d1(const ArealStructure& s, int n, std::uint64_t seed);

// D2: sequential weighted sampling without replacement; at each step the
// remaining units are drawn with probability proportional to weight_ratio
// for cluster members and 1 otherwise.
Draw sample_d2(const ArealStructure& s, int n, const ClusterRegionSpec& cluster,
               std::uint64_t seed);

// D3: repeatedly pick a uniform seed among unobserved units and observe it
// together with its adjacent units (ascending id order), stopping exactly
// at n.
Draw sample_d3(const ArealStructure& s, int n, std::uint64_t seed);

std::vector<Point> draw_centroids(const ArealStructure& s, const Draw& d);

}  // namespace arealstat
