#include "arealstat/theory.hpp"

#include <cmath>
#include <numbers>

#include "arealstat/errors.hpp"

namespace arealstat {

namespace {

// t^2 snapped to the nearest integer when within 1e-9, else -1.
std::int64_t integral_t_squared(double t) {
  const double t2 = t * t;
  const double nearest = std::round(t2);
  if (std::abs(t2 - nearest) < 1e-9) return static_cast<std::int64_t>(nearest);
  return -1;
}

}  // namespace

std::uint64_t lattice_count_closed(double t) {
  if (t < 0.0 || !std::isfinite(t))
    throw DomainError("lattice_count_closed requires finite t >= 0");
  const std::int64_t m = integral_t_squared(t);
  std::int64_t sum = 0;
  if (m >= 0) {
    for (std::int64_t i = 0; 4 * i + 1 <= m; ++i) {
      sum += m / (4 * i + 1) - m / (4 * i + 3);
    }
  } else {
    const double t2 = t * t;
    for (std::int64_t i = 0; 4 * i + 1 <= t2; ++i) {
      sum += static_cast<std::int64_t>(std::floor(t2 / (4 * i + 1))) -
             static_cast<std::int64_t>(std::floor(t2 / (4 * i + 3)));
    }
  }
  return static_cast<std::uint64_t>(1 + 4 * sum);
}

std::uint64_t lattice_count_oracle(double t) {
  if (t < 0.0 || !std::isfinite(t))
    throw DomainError("lattice_count_oracle requires finite t >= 0");
  if (t > 1e4) throw DomainError("lattice_count_oracle limited to t <= 1e4");
  const std::int64_t m = integral_t_squared(t);
  const std::int64_t reach = static_cast<std::int64_t>(std::ceil(t));
  std::uint64_t count = 0;
  const double t2 = t * t;
  for (std::int64_t x = -reach; x <= reach; ++x) {
    for (std::int64_t y = -reach; y <= reach; ++y) {
      if (m >= 0) {
        if (x * x + y * y <= m) ++count;
      } else {
        if (static_cast<double>(x * x + y * y) <= t2) ++count;
      }
    }
  }
  return count;
}

std::vector<LatticeCount> divergence_table(double t_max, double step) {
  if (!(step > 0.0)) throw DomainError("divergence_table requires step > 0");
  if (!(t_max > 0.0)) throw DomainError("divergence_table requires t_max > 0");
  std::vector<LatticeCount> rows;
  const auto count = static_cast<std::int64_t>(std::floor(t_max / step + 1e-9));
  rows.reserve(count);
  for (std::int64_t k = 1; k <= count; ++k) {
    const double t = k * step;
    LatticeCount row;
    row.t = t;
    row.n_of_t = lattice_count_closed(t);
    row.k_csr = std::numbers::pi * t * t;
    row.error = static_cast<double>(row.n_of_t) - row.k_csr;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace arealstat
