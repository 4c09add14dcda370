#ifndef CMACC_NUMERICS_HPP
#define CMACC_NUMERICS_HPP

#include <cmath>
#include <numbers>
#include <span>

namespace cmacc {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// log2(1 + x), accurate for small x.
inline double log2_1p(double x) {
  return std::log1p(x) / std::numbers::ln2;
}

// Fixed-order pairwise summation. All reductions that feed reported rates go
// through this so results are bit-reproducible regardless of how the terms
// were produced.
inline double pairwise_sum(std::span<const double> v) {
  if (v.size() <= 8) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
  }
  const std::size_t half = v.size() / 2;
  return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

}  // namespace cmacc

#endif  // CMACC_NUMERICS_HPP
