#ifndef CMACC_OPTIMIZER_HPP
#define CMACC_OPTIMIZER_HPP

#include <array>
#include <cstdint>
#include <vector>

#include "cmacc/rate_region.hpp"

namespace cmacc {

struct OptimizerConfig {
  int multistarts = 16;
  int max_iterations = 2000;
  double rel_tolerance = 1e-8;
  double step_init = 0.1;
  std::uint64_t seed = 0;
  // Per-dimension resolution of the exhaustive cross-check mode.
  int coarse_grid = 8;
};

// One point on the region boundary together with the allocation that
// witnesses it.
struct BoundarySample {
  std::array<double, 3> weights{};
  RatePoint point;
  Allocation allocation;
  RateBounds bounds;
  int iterations = 0;
  bool converged = false;
};

// Multistart projected coordinate ascent over the symmetric power and
// common-fraction profiles, maximizing the weighted rate objective. The
// result is a feasible lower bound on the supremum (the objective is
// nonconvex in the fractions); deterministic given the seed.
BoundarySample optimize_weighted(const SubchannelSet& sub, double budget1,
                                 double budget2, const std::array<double, 3>& mu,
                                 const OptimizerConfig& cfg);

// Brute-force counterpart of optimize_weighted: powers enumerated as
// coarse_grid-part compositions of the budget over the free half-spectrum
// bins, fractions on a coarse_grid-step lattice. Exponential in the free
// dimension count; intended for tiny n cross-checks only.
BoundarySample exhaustive_weighted(const SubchannelSet& sub, double budget1,
                                   double budget2, const std::array<double, 3>& mu,
                                   const OptimizerConfig& cfg);

struct WaterfillResult {
  RealVec power;           // per-k allocation, (1/n) sum == budget
  double capacity = 0.0;   // bits per channel use
  double water_level = 0.0;
};

// Classical single-user water-filling on an SNR profile |H|^2/N: power
// max(0, level - 1/snr_k) with the level found by bisection. Throws
// ZeroChannel when the budget is positive but no bin is fillable.
WaterfillResult waterfill_single_user(const RealVec& snr, double budget);

// optimize_weighted mapped over a weight grid; output order matches input.
std::vector<BoundarySample> trace_boundary(const SubchannelSet& sub, double budget1,
                                           double budget2,
                                           const std::vector<std::array<double, 3>>& weights,
                                           const OptimizerConfig& cfg);

// Euclidean projection onto the symmetric profiles with nonnegative entries
// and (1/n) sum <= budget: pairwise mirror averaging, clamping, then a
// simplex-style water level when the budget is exceeded.
RealVec project_power(const RealVec& raw, double budget, int n);

}  // namespace cmacc

#endif  // CMACC_OPTIMIZER_HPP
