#include "arealstat/ann.hpp"

#include <cmath>
#include <limits>

#include "arealstat/errors.hpp"

namespace arealstat {

std::vector<double> nn_distances(std::span<const Point> points) {
  if (points.size() < 2)
    throw InsufficientPointsError("nn_distances needs at least 2 points");
  std::vector<double> out(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < points.size(); ++j) {
      if (j == i) continue;
      best = std::min(best, distance(points[i], points[j]));
    }
    out[i] = best;
  }
  return out;
}

AnnResult ann_test(std::span<const Point> points, const Region& study_region,
                   WindowChoice window, Tail tail) {
  const std::vector<double> nn = nn_distances(points);

  double area = 0.0;
  if (window == WindowChoice::StudyArea) {
    area = study_region.area();
  } else {
    const Rect rc = bounding_rect(points);
    if (rc.degenerate())
      throw DegenerateWindowError(
          "observed bounding rectangle has zero area (points coincident or on "
          "one axis-aligned line)");
    area = rc.area();
  }

  AnnResult res;
  res.n = static_cast<int>(points.size());
  res.area = area;
  res.rho = res.n / area;

  double sum = 0.0;
  for (double d : nn) sum += d;
  res.r_bar_o = sum / res.n;
  res.r_bar_e = 1.0 / (2.0 * std::sqrt(res.rho));
  res.ratio = res.r_bar_o / res.r_bar_e;
  res.sigma = 0.26136 / std::sqrt(res.n * res.rho);
  res.z = (res.r_bar_o - res.r_bar_e) / res.sigma;
  res.tail = tail;
  switch (tail) {
    case Tail::TwoSided:
      res.reject = std::abs(res.z) > kZUpper975;
      break;
    case Tail::Left:
      res.reject = res.z < kZLower05;
      break;
    case Tail::Right:
      res.reject = res.z > kZUpper95;
      break;
  }
  return res;
}

}  // namespace arealstat
