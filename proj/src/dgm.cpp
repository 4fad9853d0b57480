#include "arealstat/dgm.hpp"

#include <algorithm>
#include <numeric>

#include "arealstat/errors.hpp"
#include "arealstat/rng.hpp"

namespace arealstat {

namespace {

void check_sample_args(const ArealStructure& s, int n) {
  if (n < 2) throw InsufficientSampleError("sample size below 2");
  if (static_cast<std::size_t>(n) > s.n_units())
    throw DomainError("sample size exceeds the number of units");
}

}  // namespace

int sample_size(int n_a, SampleSizeRule rule) {
  if (n_a < 1) throw DomainError("n_a must be positive");
  const int n = rule == SampleSizeRule::Tenth ? n_a / 10 : n_a / 4;
  if (n < 2)
    throw InsufficientSampleError("structure too small: derived sample size " +
                                  std::to_string(n) + " is below 2");
  return n;
}

Draw sample_d1(const ArealStructure& s, int n, std::uint64_t seed) {
  check_sample_args(s, n);
  Rng rng(seed);
  std::vector<std::size_t> idx(s.n_units());
  std::iota(idx.begin(), idx.end(), 0);
  // Partial Fisher-Yates: the first n slots are a uniform sample.
  for (int k = 0; k < n; ++k) {
    const std::size_t j = k + rng.uniform_below(idx.size() - k);
    std::swap(idx[k], idx[j]);
  }
  Draw d;
  d.seed = seed;
  d.observed_ids.reserve(n);
  for (int k = 0; k < n; ++k) d.observed_ids.push_back(s.unit(idx[k]).id);
  return d;
}

Draw sample_d2(const ArealStructure& s, int n, const ClusterRegionSpec& cluster,
               std::uint64_t seed) {
  check_sample_args(s, n);
  if (cluster.member_ids.empty())
    throw DomainError("cluster region has no member ids");
  if (cluster.weight_ratio < 1.0)
    throw DomainError("cluster weight_ratio must be >= 1");

  std::vector<double> weight(s.n_units(), 1.0);
  for (const std::string& id : cluster.member_ids)
    weight[s.index_of(id)] = cluster.weight_ratio;

  std::vector<std::size_t> remaining(s.n_units());
  std::iota(remaining.begin(), remaining.end(), 0);
  double total = 0.0;
  for (double w : weight) total += w;

  Rng rng(seed);
  Draw d;
  d.seed = seed;
  d.observed_ids.reserve(n);
  for (int k = 0; k < n; ++k) {
    const double u = rng.next_double() * total;
    double acc = 0.0;
    std::size_t pick = remaining.size() - 1;
    for (std::size_t m = 0; m < remaining.size(); ++m) {
      acc += weight[remaining[m]];
      if (u < acc) {
        pick = m;
        break;
      }
    }
    const std::size_t unit = remaining[pick];
    d.observed_ids.push_back(s.unit(unit).id);
    total -= weight[unit];
    remaining.erase(remaining.begin() + pick);
  }
  return d;
}

Draw sample_d3(const ArealStructure& s, int n, std::uint64_t seed) {
  check_sample_args(s, n);
  Rng rng(seed);
  std::vector<bool> observed(s.n_units(), false);
  std::vector<std::size_t> unobserved(s.n_units());
  std::iota(unobserved.begin(), unobserved.end(), 0);

  Draw d;
  d.seed = seed;
  d.observed_ids.reserve(n);
  auto observe = [&](std::size_t unit) {
    observed[unit] = true;
    d.observed_ids.push_back(s.unit(unit).id);
    unobserved.erase(std::find(unobserved.begin(), unobserved.end(), unit));
  };

  while (d.observed_ids.size() < static_cast<std::size_t>(n)) {
    const std::size_t cluster_seed = unobserved[rng.uniform_below(unobserved.size())];
    observe(cluster_seed);
    if (d.observed_ids.size() == static_cast<std::size_t>(n)) break;
    // Neighbor ids are already sorted ascending in the adjacency map.
    for (const std::string& nbr : s.neighbors(s.unit(cluster_seed).id)) {
      const std::size_t j = s.index_of(nbr);
      if (observed[j]) continue;
      observe(j);
      if (d.observed_ids.size() == static_cast<std::size_t>(n)) break;
    }
  }
  return d;
}

std::vector<Point> draw_centroids(const ArealStructure& s, const Draw& d) {
  std::vector<Point> pts;
  pts.reserve(d.observed_ids.size());
  for (const std::string& id : d.observed_ids)
    pts.push_back(s.unit(s.index_of(id)).centroid);
  return pts;
}

}  // namespace arealstat
