#include "cmacc/rate_region.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cmacc/errors.hpp"

namespace cmacc {

namespace {

// Point-frequency channel state feeding the eight SNR patterns.
struct PointChannel {
  double g11, g12, g21, g22;  // squared gain magnitudes
  double x1, x2;              // Re{H11 conj(H21)}, Re{H12 conj(H22)}
  double n1, n2;              // noise spectrum samples
};

double rate_of(double numerator, double noise) {
  if (noise <= 0.0) {
    if (numerator <= 0.0) return 0.0;
    throw InfiniteRate("zero noise eigenvalue with positive received power");
  }
  const double snr = numerator / noise;
  return snr > 0.0 ? log2_1p(snr) : 0.0;
}

// log2(1 + SNR_i) for the eight rate-term patterns at one frequency.
std::array<double, 8> point_rates(const PointChannel& ch, double p1, double p2,
                                  double a1, double a2) {
  const double ab1 = 1.0 - a1;
  const double ab2 = 1.0 - a2;
  const double s = std::sqrt(a1 * a2 * p1 * p2);
  std::array<double, 8> v{};
  v[0] = rate_of(ab1 * p1 * ch.g11, ch.n1);
  v[1] = rate_of(ab1 * p1 * ch.g12, ch.n2);
  v[2] = rate_of(ab2 * p2 * ch.g21, ch.n1);
  v[3] = rate_of(ab2 * p2 * ch.g22, ch.n2);
  v[4] = rate_of(ab1 * p1 * ch.g11 + ab2 * p2 * ch.g21, ch.n1);
  v[5] = rate_of(ab1 * p1 * ch.g12 + ab2 * p2 * ch.g22, ch.n2);
  v[6] = rate_of(p1 * ch.g11 + p2 * ch.g21 + 2.0 * s * ch.x1, ch.n1);
  v[7] = rate_of(p1 * ch.g12 + p2 * ch.g22 + 2.0 * s * ch.x2, ch.n2);
  return v;
}

RateBounds reduce_terms(const std::array<RealVec, 8>& per_k, double scale) {
  RateBounds b;
  for (int i = 0; i < 8; ++i) {
    b.t[i] = pairwise_sum(per_k[i]) * scale;
  }
  for (int j = 0; j < 4; ++j) {
    b.binding[j] = b.t[2 * j] <= b.t[2 * j + 1] ? 1 : 2;
  }
  return b;
}

void check_profile(const RealVec& v, int n, bool fraction, const std::string& name) {
  if (static_cast<int>(v.size()) != n) {
    throw DimensionMismatch(name + ": length " + std::to_string(v.size()) +
                            " does not match n=" + std::to_string(n));
  }
  for (int k = 0; k < n; ++k) {
    if (!std::isfinite(v[k])) {
      throw InvalidAllocation(name + ": non-finite entry at k=" + std::to_string(k));
    }
    if (v[k] < 0.0 || (fraction && v[k] > 1.0)) {
      throw InvalidAllocation(name + ": entry out of range at k=" + std::to_string(k));
    }
    if (v[k] != v[(n - k) % n]) {
      throw InvalidAllocation(name + ": profile not mirror-symmetric at k=" +
                              std::to_string(k));
    }
  }
}

}  // namespace

Allocation make_flat_allocation(int n, double p1, double p2, double alpha1,
                                double alpha2) {
  Allocation a;
  a.n = n;
  a.p1.assign(static_cast<std::size_t>(n), p1);
  a.p2.assign(static_cast<std::size_t>(n), p2);
  a.a1.assign(static_cast<std::size_t>(n), alpha1);
  a.a2.assign(static_cast<std::size_t>(n), alpha2);
  return a;
}

void validate_allocation(const Allocation& alloc, double budget1, double budget2) {
  const int n = alloc.n;
  if (n <= 0) throw DimensionMismatch("allocation has n <= 0");
  check_profile(alloc.p1, n, false, "p1");
  check_profile(alloc.p2, n, false, "p2");
  check_profile(alloc.a1, n, true, "a1");
  check_profile(alloc.a2, n, true, "a2");
  const double mean1 = pairwise_sum(alloc.p1) / n;
  const double mean2 = pairwise_sum(alloc.p2) / n;
  if (mean1 > budget1 + 1e-9) {
    throw InvalidAllocation("p1: average power " + std::to_string(mean1) +
                            " exceeds budget " + std::to_string(budget1));
  }
  if (mean2 > budget2 + 1e-9) {
    throw InvalidAllocation("p2: average power " + std::to_string(mean2) +
                            " exceeds budget " + std::to_string(budget2));
  }
}

SubchannelTables make_tables(const SubchannelSet& sub) {
  SubchannelTables tab;
  const int n = sub.n;
  tab.n = n;
  tab.g11.resize(n);
  tab.g12.resize(n);
  tab.g21.resize(n);
  tab.g22.resize(n);
  tab.cross1.resize(n);
  tab.cross2.resize(n);
  for (int k = 0; k < n; ++k) {
    tab.g11[k] = std::norm(sub.h11[k]);
    tab.g12[k] = std::norm(sub.h12[k]);
    tab.g21[k] = std::norm(sub.h21[k]);
    tab.g22[k] = std::norm(sub.h22[k]);
    tab.cross1[k] = (sub.h11[k] * std::conj(sub.h21[k])).real();
    tab.cross2[k] = (sub.h12[k] * std::conj(sub.h22[k])).real();
  }
  tab.n1 = sub.noise1;
  tab.n2 = sub.noise2;
  return tab;
}

RateBounds rate_terms(const SubchannelTables& tab, const Allocation& alloc) {
  const int n = tab.n;
  if (alloc.n != n) {
    throw DimensionMismatch("allocation n=" + std::to_string(alloc.n) +
                            " does not match sub-channel count " + std::to_string(n));
  }
  if (static_cast<int>(alloc.p1.size()) != n || static_cast<int>(alloc.p2.size()) != n ||
      static_cast<int>(alloc.a1.size()) != n || static_cast<int>(alloc.a2.size()) != n) {
    throw DimensionMismatch("allocation profile lengths do not match n");
  }
  std::array<RealVec, 8> per_k;
  for (auto& v : per_k) v.resize(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    const PointChannel ch{tab.g11[k], tab.g12[k], tab.g21[k], tab.g22[k],
                          tab.cross1[k], tab.cross2[k], tab.n1[k], tab.n2[k]};
    const auto v = point_rates(ch, alloc.p1[k], alloc.p2[k], alloc.a1[k], alloc.a2[k]);
    for (int i = 0; i < 8; ++i) per_k[i][k] = v[i];
  }
  return reduce_terms(per_k, 1.0 / (2.0 * n));
}

RateBounds rate_terms_discrete(const SubchannelSet& sub, const Allocation& alloc) {
  return rate_terms(make_tables(sub), alloc);
}

SpectralProfiles flat_profiles(double p1, double p2, double alpha1, double alpha2) {
  SpectralProfiles prof;
  prof.p1 = [p1](double) { return p1; };
  prof.p2 = [p2](double) { return p2; };
  prof.a1 = [alpha1](double) { return alpha1; };
  prof.a2 = [alpha2](double) { return alpha2; };
  return prof;
}

RateBounds rate_terms_integral(const ChannelSpec& spec, const SpectralProfiles& prof,
                               int quadrature_points) {
  const int m = quadrature_points;
  if (m < 2) throw DimensionMismatch("quadrature needs at least 2 points");

  RealVec power1(static_cast<std::size_t>(m)), power2(static_cast<std::size_t>(m));
  std::array<RealVec, 8> per_j;
  for (auto& v : per_j) v.resize(static_cast<std::size_t>(m));

  for (int j = 0; j < m; ++j) {
    const double omega = -kPi + kTwoPi * j / m;
    const double p1 = std::max(0.0, prof.p1(omega));
    const double p2 = std::max(0.0, prof.p2(omega));
    const double a1 = std::clamp(prof.a1(omega), 0.0, 1.0);
    const double a2 = std::clamp(prof.a2(omega), 0.0, 1.0);
    power1[j] = p1;
    power2[j] = p2;

    const auto t11 = transfer_function(spec.h11, omega);
    const auto t12 = transfer_function(spec.h12, omega);
    const auto t21 = transfer_function(spec.h21, omega);
    const auto t22 = transfer_function(spec.h22, omega);
    const PointChannel ch{std::norm(t11),
                          std::norm(t12),
                          std::norm(t21),
                          std::norm(t22),
                          (t11 * std::conj(t21)).real(),
                          (t12 * std::conj(t22)).real(),
                          noise_psd(spec.noise1, omega),
                          noise_psd(spec.noise2, omega)};
    const auto v = point_rates(ch, p1, p2, a1, a2);
    for (int i = 0; i < 8; ++i) per_j[i][j] = v[i];
  }

  const double mean1 = pairwise_sum(power1) / m;
  const double mean2 = pairwise_sum(power2) / m;
  if (mean1 > spec.p1 * (1.0 + 1e-6)) {
    throw BudgetViolated("p1: integrated power " + std::to_string(mean1) +
                         " exceeds budget " + std::to_string(spec.p1));
  }
  if (mean2 > spec.p2 * (1.0 + 1e-6)) {
    throw BudgetViolated("p2: integrated power " + std::to_string(mean2) +
                         " exceeds budget " + std::to_string(spec.p2));
  }

  // (1/4pi) * (2pi/m) * sum = (1/2m) * sum
  return reduce_terms(per_j, 1.0 / (2.0 * m));
}

RegionConstraints region_constraints(const RateBounds& b) {
  return RegionConstraints{std::min(b.t[0], b.t[1]), std::min(b.t[2], b.t[3]),
                           std::min(b.t[4], b.t[5]), std::min(b.t[6], b.t[7])};
}

bool is_achievable(const RateBounds& b, const RatePoint& r) {
  if (r.r0 < 0.0 || r.r1 < 0.0 || r.r2 < 0.0) return false;
  const RegionConstraints c = region_constraints(b);
  const double slack = 1e-12;
  return r.r1 <= c.r1_bound + slack && r.r2 <= c.r2_bound + slack &&
         r.r1 + r.r2 <= c.sum_bound + slack &&
         r.r0 + r.r1 + r.r2 <= c.total_bound + slack;
}

RatePoint max_weighted_rate(const RegionConstraints& c, const std::array<double, 3>& mu) {
  for (double w : mu) {
    if (!std::isfinite(w) || w < 0.0) {
      throw InvalidWeights("weights must be nonnegative finite numbers");
    }
  }
  if (mu[0] == 0.0 && mu[1] == 0.0 && mu[2] == 0.0) {
    throw InvalidWeights("weights must not all be zero");
  }

  // Constraint rows normal . (R0,R1,R2) <= rhs; first three are R >= 0.
  const double normals[7][3] = {{-1, 0, 0}, {0, -1, 0}, {0, 0, -1}, {0, 1, 0},
                                {0, 0, 1},  {0, 1, 1},  {1, 1, 1}};
  const double rhs[7] = {0, 0, 0, c.r1_bound, c.r2_bound, c.sum_bound, c.total_bound};

  const double scale =
      std::max({1.0, c.r1_bound, c.r2_bound, c.sum_bound, c.total_bound});
  const double feas_slack = 1e-12 * scale;

  RatePoint best{0.0, 0.0, 0.0};  // origin is always feasible
  double best_obj = 0.0;
  bool have = false;

  for (int i = 0; i < 7; ++i) {
    for (int j = i + 1; j < 7; ++j) {
      for (int k = j + 1; k < 7; ++k) {
        const double* r1 = normals[i];
        const double* r2 = normals[j];
        const double* r3 = normals[k];
        const double det = r1[0] * (r2[1] * r3[2] - r2[2] * r3[1]) -
                           r1[1] * (r2[0] * r3[2] - r2[2] * r3[0]) +
                           r1[2] * (r2[0] * r3[1] - r2[1] * r3[0]);
        if (std::abs(det) < 1e-9) continue;
        const double d[3] = {rhs[i], rhs[j], rhs[k]};
        // Cramer's rule, replacing one column at a time.
        double v[3];
        for (int col = 0; col < 3; ++col) {
          double m_[3][3] = {{r1[0], r1[1], r1[2]},
                             {r2[0], r2[1], r2[2]},
                             {r3[0], r3[1], r3[2]}};
          m_[0][col] = d[0];
          m_[1][col] = d[1];
          m_[2][col] = d[2];
          const double detc = m_[0][0] * (m_[1][1] * m_[2][2] - m_[1][2] * m_[2][1]) -
                              m_[0][1] * (m_[1][0] * m_[2][2] - m_[1][2] * m_[2][0]) +
                              m_[0][2] * (m_[1][0] * m_[2][1] - m_[1][1] * m_[2][0]);
          v[col] = detc / det;
        }
        bool feasible = true;
        for (int q = 0; q < 7 && feasible; ++q) {
          const double lhs =
              normals[q][0] * v[0] + normals[q][1] * v[1] + normals[q][2] * v[2];
          feasible = lhs <= rhs[q] + feas_slack;
        }
        if (!feasible) continue;
        const double obj = mu[0] * v[0] + mu[1] * v[1] + mu[2] * v[2];
        const double tie = 1e-12 * (1.0 + std::abs(best_obj));
        const bool better = !have || obj > best_obj + tie;
        const bool tied = have && std::abs(obj - best_obj) <= tie;
        const bool lex_larger =
            tied && (v[0] > best.r0 ||
                     (v[0] == best.r0 &&
                      (v[1] > best.r1 || (v[1] == best.r1 && v[2] > best.r2))));
        if (better || lex_larger) {
          best = RatePoint{v[0], v[1], v[2]};
          best_obj = obj;
          have = true;
        }
      }
    }
  }
  // Clip vertex round-off below zero.
  best.r0 = std::max(0.0, best.r0);
  best.r1 = std::max(0.0, best.r1);
  best.r2 = std::max(0.0, best.r2);
  return best;
}

RatePoint max_weighted_rate(const RateBounds& b, const std::array<double, 3>& mu) {
  return max_weighted_rate(region_constraints(b), mu);
}

StrongInterferenceVerdict strong_interference_check(const SubchannelSet& sub) {
  StrongInterferenceVerdict v;
  v.boundary_equal = true;
  for (int k = 0; k < sub.n; ++k) {
    const double g11 = std::norm(sub.h11[k]);
    const double g12 = std::norm(sub.h12[k]);
    const double g21 = std::norm(sub.h21[k]);
    const double g22 = std::norm(sub.h22[k]);
    // |H11|^2/N1 <= |H12|^2/N2 and |H22|^2/N2 <= |H21|^2/N1, cross-multiplied.
    const double lhs1 = g11 * sub.noise2[k];
    const double rhs1 = g12 * sub.noise1[k];
    const double lhs2 = g22 * sub.noise1[k];
    const double rhs2 = g21 * sub.noise2[k];
    if (!(lhs1 <= rhs1 && lhs2 <= rhs2)) {
      v.violated_at.push_back(k);
      v.boundary_equal = false;
    } else if (lhs1 != rhs1 || lhs2 != rhs2) {
      v.boundary_equal = false;
    }
  }
  v.holds = v.violated_at.empty();
  return v;
}

RegionConstraints sicc_region_constraints(const RateBounds& b,
                                          const StrongInterferenceVerdict& verdict) {
  if (!verdict.holds) {
    throw ConditionNotVerified(
        "strong interference condition not established for this channel");
  }
  return RegionConstraints{b.t[0], b.t[3], std::min(b.t[4], b.t[5]),
                           std::min(b.t[6], b.t[7])};
}

}  // namespace cmacc
