#ifndef CMACC_RATE_REGION_HPP
#define CMACC_RATE_REGION_HPP

#include <array>
#include <functional>
#include <vector>

#include "cmacc/spectral.hpp"

namespace cmacc {

// Per-frequency transmit powers and common-message fractions. Profiles must
// be mirror-symmetric (v[k] == v[n-k]) so the induced time-domain input
// covariance is real.
struct Allocation {
  int n = 0;
  RealVec p1, p2;  // powers, >= 0
  RealVec a1, a2;  // common-message fractions in [0, 1]
};

// Flat allocation: P_q(omega_k) = budget_q, alpha_q(omega_k) = alpha_q.
Allocation make_flat_allocation(int n, double p1, double p2, double alpha1 = 0.0,
                                double alpha2 = 0.0);

// Checks dimensions, finiteness, mirror symmetry, fraction range, and the
// average-power budgets ((1/n) sum <= budget + 1e-9).
void validate_allocation(const Allocation& alloc, double budget1, double budget2);

// The eight rate terms in bits per channel use. Odd indices (t[0], t[2], ...)
// are evaluated at receiver 1, even at receiver 2; binding[j] names the
// receiver attaining the j-th min-pair (ties go to receiver 1).
struct RateBounds {
  std::array<double, 8> t{};
  std::array<int, 4> binding{1, 1, 1, 1};
};

struct RatePoint {
  double r0 = 0.0;
  double r1 = 0.0;
  double r2 = 0.0;
};

// The four polytope bounds: R1 <= r1_bound, R2 <= r2_bound,
// R1+R2 <= sum_bound, R0+R1+R2 <= total_bound.
struct RegionConstraints {
  double r1_bound = 0.0;
  double r2_bound = 0.0;
  double sum_bound = 0.0;
  double total_bound = 0.0;
};

// Squared gain magnitudes, cross-correlation terms, and noise samples
// flattened out of a SubchannelSet; the hot path for repeated evaluations.
struct SubchannelTables {
  int n = 0;
  RealVec g11, g12, g21, g22;  // |H_pq(omega_k)|^2
  RealVec cross1, cross2;      // Re{H11 conj(H21)}, Re{H12 conj(H22)}
  RealVec n1, n2;
};

SubchannelTables make_tables(const SubchannelSet& sub);

// The eight discrete rate terms: T_i = (1/2n) sum_k log2(1 + SNR_i(omega_k))
// over the full index set k = 0..n-1. Zero-noise sub-channels contribute 0
// when the received signal power is also zero and throw InfiniteRate
// otherwise.
RateBounds rate_terms(const SubchannelTables& tab, const Allocation& alloc);

RateBounds rate_terms_discrete(const SubchannelSet& sub, const Allocation& alloc);

// Spectral allocation profiles as callables of omega.
struct SpectralProfiles {
  std::function<double(double)> p1, p2, a1, a2;
};

SpectralProfiles flat_profiles(double p1, double p2, double alpha1 = 0.0,
                               double alpha2 = 0.0);

// The integral-form rate terms evaluated by the periodic composite trapezoid
// rule on quadrature_points uniform frequencies over [-pi, pi). Throws
// BudgetViolated if the integrated power exceeds a budget by more than 1e-6
// relative.
RateBounds rate_terms_integral(const ChannelSpec& spec, const SpectralProfiles& prof,
                               int quadrature_points);

RegionConstraints region_constraints(const RateBounds& b);

// Membership with 1e-12 slack on the four inequalities.
bool is_achievable(const RateBounds& b, const RatePoint& r);

// Maximizes mu0*R0 + mu1*R1 + mu2*R2 over the constraint polytope by vertex
// enumeration; ties break toward the lexicographically largest (R0, R1, R2).
RatePoint max_weighted_rate(const RegionConstraints& c, const std::array<double, 3>& mu);
RatePoint max_weighted_rate(const RateBounds& b, const std::array<double, 3>& mu);

// Pointwise spectral strong-interference condition:
//   |H11|^2/N1 <= |H12|^2/N2  and  |H22|^2/N2 <= |H21|^2/N1  at every k,
// compared cross-multiplied so zero noise needs no special casing.
struct StrongInterferenceVerdict {
  bool holds = false;
  std::vector<int> violated_at;  // k indices where the condition fails
  bool boundary_equal = false;   // every comparison is an exact tie
};

StrongInterferenceVerdict strong_interference_check(const SubchannelSet& sub);

// Region bounds for the strong interference channel: R1 <= T1, R2 <= T4,
// R1+R2 <= min(T5,T6), R0+R1+R2 <= min(T7,T8). Requires a verdict that holds.
RegionConstraints sicc_region_constraints(const RateBounds& b,
                                          const StrongInterferenceVerdict& verdict);

}  // namespace cmacc

#endif  // CMACC_RATE_REGION_HPP
