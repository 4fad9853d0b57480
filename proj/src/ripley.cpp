#include "arealstat/ripley.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "arealstat/errors.hpp"
#include "arealstat/parallel.hpp"
#include "arealstat/rng.hpp"

namespace arealstat {

namespace {

// ceil(q * n) as an exact rational ceil_div(num * n, den), avoiding the
// floating overshoot of e.g. ceil(0.025 * 1000).
std::size_t quantile_index(std::size_t num, std::size_t den, std::size_t n) {
  const std::size_t k = (num * n + den - 1) / den;
  return std::clamp<std::size_t>(k, 1, n);
}

void fill_quantiles(Envelope& env) {
  const std::size_t n = env.samples[0].size();
  for (int r = 0; r < kNumRadii; ++r) {
    const std::vector<double>& s = env.samples[r];
    env.q025[r] = s[quantile_index(1, 40, n) - 1];
    env.q05[r] = s[quantile_index(1, 20, n) - 1];
    env.q95[r] = s[quantile_index(19, 20, n) - 1];
    env.q975[r] = s[quantile_index(39, 40, n) - 1];
  }
}

}  // namespace

RadiusGrid make_radius_grid(const std::array<double, kNumRadii>& radii) {
  for (int i = 0; i < kNumRadii; ++i) {
    if (!(radii[i] > 0.0))
      throw InvalidRadiusGridError("radii must be positive");
    if (i > 0 && !(radii[i] > radii[i - 1]))
      throw InvalidRadiusGridError("radii must be strictly increasing");
  }
  return RadiusGrid{radii};
}

RadiusGrid radius_grid(const ArealStructure& s) {
  if (s.n_units() < 2)
    throw InvalidRadiusGridError("radius grid needs a structure with >= 2 units");
  const std::vector<Point> cents = s.centroids();
  const double t1 = 2.0 * min_pairwise_distance(cents);
  const double t5 = s.region().bbox().width() / 4.0;
  if (!(t1 < t5))
    throw InvalidRadiusGridError("degenerate radius rule: 2*min centroid distance (" +
                                 std::to_string(t1) + ") >= width/4 (" +
                                 std::to_string(t5) + ")");
  std::array<double, kNumRadii> radii;
  for (int i = 0; i < kNumRadii; ++i)
    radii[i] = t1 + (t5 - t1) * i / (kNumRadii - 1);
  radii[kNumRadii - 1] = t5;
  return make_radius_grid(radii);
}

KEstimate k_hat(std::span<const Point> points, const Region& region,
                const RadiusGrid& radii, const KConfig& config) {
  const int n = static_cast<int>(points.size());
  if (n < 2) throw InsufficientPointsError("k_hat needs at least 2 points");
  for (const Point& p : points) {
    if (!contains(region, p))
      throw DomainError("k_hat: point outside the study region");
  }

  const double t_max = radii.t_max();
  // One weighted indicator per ordered pair within t_max; reused across radii.
  struct WeightedPair {
    double dist;
    double inv_weight;
  };
  std::vector<WeightedPair> pairs;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      const double d = distance(points[i], points[j]);
      if (d >= t_max) continue;
      const double w =
          d == 0.0 ? 1.0 : edge_weight(points[i], d, region, config.arc_samples);
      pairs.push_back({d, 1.0 / w});
    }
  }

  KEstimate est;
  est.radii = radii;
  est.n = n;
  est.area = region.area();
  est.lambda_hat = n / est.area;
  const double denom = config.normalization == Normalization::NSquared
                           ? static_cast<double>(n) * n
                           : static_cast<double>(n) * (n - 1);
  for (int r = 0; r < kNumRadii; ++r) {
    double sum = 0.0;
    for (const WeightedPair& p : pairs) {
      if (p.dist < radii.radii[r]) sum += p.inv_weight;
    }
    est.khat[r] = est.area * sum / denom;
    est.lhat[r] = std::sqrt(est.khat[r] / std::numbers::pi);
  }
  return est;
}

std::vector<Point> sample_csr(int n, const Region& region, std::uint64_t seed) {
  if (n < 0) throw DomainError("sample_csr: negative count");
  std::vector<Point> pts;
  pts.reserve(n);
  Rng rng(seed);
  const Rect& box = region.bbox();
  const bool box_is_region = region.as_rect().has_value();
  std::uint64_t attempts = 0;
  while (pts.size() < static_cast<std::size_t>(n)) {
    ++attempts;
    const Point p{box.xmin + rng.next_double() * box.width(),
                  box.ymin + rng.next_double() * box.height()};
    if (box_is_region || contains(region, p)) {
      pts.push_back(p);
    } else if (attempts % 100000 == 0 && pts.size() < attempts / 10000) {
      // Checkpoint the acceptance rate so sliver regions fail fast.
      throw SamplingInefficiencyError(
          "rejection sampling acceptance rate below 1e-4; region is a sliver "
          "of its bounding box");
    }
  }
  return pts;
}

Envelope mc_envelope(int n, const Region& region, const RadiusGrid& radii,
                     int n_sim, std::uint64_t seed, const KConfig& config,
                     int threads) {
  if (n < 2) throw InsufficientPointsError("mc_envelope needs n >= 2");
  if (n_sim < 100) throw DomainError("mc_envelope needs n_sim >= 100");

  std::vector<std::array<double, kNumRadii>> khats(n_sim);
  parallel_for_indexed(n_sim, threads, [&](std::size_t i) {
    const std::uint64_t sim_seed = Rng::derive_seed(seed, kStreamSim, i);
    std::vector<Point> pts;
    try {
      pts = sample_csr(n, region, sim_seed);
      khats[i] = k_hat(pts, region, radii, config).khat;
    } catch (const Error& e) {
      throw Error("envelope simulation " + std::to_string(i) + ": " + e.what());
    }
  });

  Envelope env;
  env.radii = radii;
  env.n_sim = n_sim;
  env.n = n;
  env.area = region.area();
  env.seed = seed;
  env.config = config;
  for (int r = 0; r < kNumRadii; ++r) {
    std::vector<double>& col = env.samples[r];
    col.resize(n_sim);
    for (int i = 0; i < n_sim; ++i) col[i] = khats[i][r];
    std::sort(col.begin(), col.end());
  }
  fill_quantiles(env);
  return env;
}

KTestResult k_test(std::span<const Point> points, const Region& region,
                   const Envelope& envelope, Tail tail) {
  if (tail == Tail::Left)
    throw DomainError("k_test supports two-sided and right tails only");
  if (static_cast<int>(points.size()) != envelope.n)
    throw ContractViolationError("k_test: envelope built for n = " +
                                 std::to_string(envelope.n) + ", pattern has " +
                                 std::to_string(points.size()) + " points");
  KTestResult res;
  res.estimate = k_hat(points, region, envelope.radii, envelope.config);
  if (std::abs(res.estimate.area - envelope.area) >
      1e-9 * std::max(res.estimate.area, envelope.area))
    throw ContractViolationError("k_test: envelope built for a different region");
  res.tail = tail;
  for (int r = 0; r < kNumRadii; ++r) {
    const double k = res.estimate.khat[r];
    res.reject[r] = tail == Tail::Right
                        ? k > envelope.q95[r]
                        : (k > envelope.q975[r] || k < envelope.q025[r]);
  }
  return res;
}

}  // namespace arealstat
