#pragma once

#include <span>
#include <vector>

#include "arealstat/geometry.hpp"
#include "arealstat/types.hpp"

namespace arealstat {

enum class WindowChoice {
  StudyArea,     // window 1: the full study region
  ObservedBBox,  // window 2: bounding rectangle of the observed points
};

struct AnnResult {
  int n = 0;
  double area = 0.0;     // |A| of the chosen window
  double rho = 0.0;      // N / |A|
  double r_bar_o = 0.0;  // mean observed nearest-neighbor distance
  double r_bar_e = 0.0;  // 1 / (2 sqrt(rho))
  double ratio = 0.0;    // r_bar_o / r_bar_e
  double sigma = 0.0;    // 0.26136 / sqrt(N rho)
  double z = 0.0;        // (r_bar_o - r_bar_e) / sigma
  Tail tail = Tail::TwoSided;
  bool reject = false;   // at alpha = 0.05
};

// Standard normal quantiles, hardcoded so the test thresholds are
// bit-stable across platforms.
inline constexpr double kZUpper975 = 1.959964;
inline constexpr double kZLower05 = -1.644854;
inline constexpr double kZUpper95 = 1.644854;

// Distance from each point to its nearest other point, in input order.
std::vector<double> nn_distances(std::span<const Point> points);

// Clark-Evans average nearest neighbor ratio and z-test. Window 1 takes
// |A| from study_region; window 2 from the bounding rectangle of the
// points (DegenerateWindowError when that rectangle has zero area).
AnnResult ann_test(std::span<const Point> points, const Region& study_region,
                   WindowChoice window, Tail tail);

}  // namespace arealstat
