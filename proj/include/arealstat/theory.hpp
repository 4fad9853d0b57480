#pragma once

#include <cstdint>
#include <vector>

namespace arealstat {

// On an infinite unit-spacing grid of centroids, the K function at radius t
// equals N(t), the number of integer lattice points within distance t of
// the origin (the Gauss circle count). The observation probability p
// cancels: the expected count p*N(t) is divided by the density p, so no p
// parameter appears anywhere in this module.
//
// The error term Er(t) = N(t) - pi t^2 is known to satisfy
// |Er(t)| <= C t^theta with 1/2 < theta <= 131/208; the exponent bound is
// recorded here for reference only and is never used computationally.
inline constexpr double kLatticeErrorExponentUpperBound = 131.0 / 208.0;

// Closed-form count via N(t) = 1 + 4 * sum_i (floor(t^2/(4i+1)) -
// floor(t^2/(4i+3))), truncated at 4i+1 > t^2. Uses exact integer
// arithmetic whenever t^2 is within 1e-9 of an integer, so the floor terms
// are unambiguous at the jump points.
std::uint64_t lattice_count_closed(double t);

// Independent brute force: scans x, y in [-ceil(t), ceil(t)] counting
// x^2 + y^2 <= t^2, with integer comparisons when t^2 is integral.
// Requires t <= 1e4.
std::uint64_t lattice_count_oracle(double t);

struct LatticeCount {
  double t = 0.0;
  std::uint64_t n_of_t = 0;
  double k_csr = 0.0;  // pi t^2
  double error = 0.0;  // n_of_t - pi t^2
};

// Rows for t = step, 2*step, ..., t_max comparing the grid K(t) = N(t)
// against the CSR value pi t^2.
std::vector<LatticeCount> divergence_table(double t_max, double step);

}  // namespace arealstat
