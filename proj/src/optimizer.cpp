#include "cmacc/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "cmacc/errors.hpp"

namespace cmacc {

namespace {

void check_config(const OptimizerConfig& cfg) {
  if (cfg.multistarts < 1 || cfg.max_iterations < 1 || cfg.coarse_grid < 1) {
    throw ValidationError("optimizer counts must be >= 1");
  }
  if (!(cfg.rel_tolerance > 0.0) || !(cfg.step_init > 0.0)) {
    throw ValidationError("optimizer tolerance and step must be positive");
  }
}

void check_weights(const std::array<double, 3>& mu) {
  for (double w : mu) {
    if (!std::isfinite(w) || w < 0.0) {
      throw InvalidWeights("weights must be nonnegative finite numbers");
    }
  }
  if (mu[0] == 0.0 && mu[1] == 0.0 && mu[2] == 0.0) {
    throw InvalidWeights("weights must not all be zero");
  }
}

double lp_value(const RegionConstraints& c, const std::array<double, 3>& mu) {
  const RatePoint p = max_weighted_rate(c, mu);
  return mu[0] * p.r0 + mu[1] * p.r1 + mu[2] * p.r2;
}

// dV/d(bound) for the four polytope bounds, by central differences on the
// vertex LP. At kinks this lands between the one-sided slopes, which is a
// valid ascent subgradient surrogate under a monotone line search.
std::array<double, 4> bound_sensitivities(const RegionConstraints& c0,
                                          const std::array<double, 3>& mu) {
  std::array<double, 4> g{};
  RegionConstraints c = c0;
  double* fields[4] = {&c.r1_bound, &c.r2_bound, &c.sum_bound, &c.total_bound};
  for (int j = 0; j < 4; ++j) {
    const double orig = *fields[j];
    const double h = 1e-6 * (1.0 + std::abs(orig));
    const double lo = std::max(0.0, orig - h);
    *fields[j] = orig + h;
    const double up = lp_value(c, mu);
    *fields[j] = lo;
    const double down = lp_value(c, mu);
    *fields[j] = orig;
    g[j] = (up - down) / (orig + h - lo);
  }
  return g;
}

// Chain the bound sensitivities through the min-pairs: ties within 1e-12
// split the weight between the two branches.
std::array<double, 8> term_coefficients(const RateBounds& b,
                                        const std::array<double, 3>& mu) {
  const auto s = bound_sensitivities(region_constraints(b), mu);
  std::array<double, 8> coef{};
  for (int j = 0; j < 4; ++j) {
    const double t1 = b.t[2 * j];
    const double t2 = b.t[2 * j + 1];
    if (std::abs(t1 - t2) <= 1e-12) {
      coef[2 * j] = 0.5 * s[j];
      coef[2 * j + 1] = 0.5 * s[j];
    } else if (t1 < t2) {
      coef[2 * j] = s[j];
    } else {
      coef[2 * j + 1] = s[j];
    }
  }
  return coef;
}

enum class Block { P1, P2, A1, A2 };

// Analytic gradient of sum_i coef_i * T_i with respect to one profile block.
// d(log2(1+num/den))/d num = 1/((den+num) ln2); the sqrt cross term uses the
// zero subgradient on its boundary.
RealVec block_gradient(const SubchannelTables& tab, const Allocation& alloc,
                       const std::array<double, 8>& coef, Block block) {
  const int n = tab.n;
  RealVec grad(static_cast<std::size_t>(n), 0.0);
  const double scale = 1.0 / (2.0 * n * std::numbers::ln2);
  for (int k = 0; k < n; ++k) {
    const double p1 = alloc.p1[k], p2 = alloc.p2[k];
    const double a1 = alloc.a1[k], a2 = alloc.a2[k];
    const double ab1 = 1.0 - a1, ab2 = 1.0 - a2;
    const double g11 = tab.g11[k], g12 = tab.g12[k];
    const double g21 = tab.g21[k], g22 = tab.g22[k];
    const double x1 = tab.cross1[k], x2 = tab.cross2[k];
    const double s = std::sqrt(a1 * a2 * p1 * p2);

    const double num[8] = {ab1 * p1 * g11,
                           ab1 * p1 * g12,
                           ab2 * p2 * g21,
                           ab2 * p2 * g22,
                           ab1 * p1 * g11 + ab2 * p2 * g21,
                           ab1 * p1 * g12 + ab2 * p2 * g22,
                           p1 * g11 + p2 * g21 + 2.0 * s * x1,
                           p1 * g12 + p2 * g22 + 2.0 * s * x2};
    const double den[8] = {tab.n1[k], tab.n2[k], tab.n1[k], tab.n2[k],
                           tab.n1[k], tab.n2[k], tab.n1[k], tab.n2[k]};

    double dnum[8] = {};
    switch (block) {
      case Block::P1: {
        const double ds = (s > 0.0 && p1 > 1e-12) ? s / (2.0 * p1) : 0.0;
        dnum[0] = ab1 * g11;
        dnum[1] = ab1 * g12;
        dnum[4] = ab1 * g11;
        dnum[5] = ab1 * g12;
        dnum[6] = g11 + 2.0 * x1 * ds;
        dnum[7] = g12 + 2.0 * x2 * ds;
        break;
      }
      case Block::P2: {
        const double ds = (s > 0.0 && p2 > 1e-12) ? s / (2.0 * p2) : 0.0;
        dnum[2] = ab2 * g21;
        dnum[3] = ab2 * g22;
        dnum[4] = ab2 * g21;
        dnum[5] = ab2 * g22;
        dnum[6] = g21 + 2.0 * x1 * ds;
        dnum[7] = g22 + 2.0 * x2 * ds;
        break;
      }
      case Block::A1: {
        const double ds = (s > 0.0 && a1 > 1e-12) ? s / (2.0 * a1) : 0.0;
        dnum[0] = -p1 * g11;
        dnum[1] = -p1 * g12;
        dnum[4] = -p1 * g11;
        dnum[5] = -p1 * g12;
        dnum[6] = 2.0 * x1 * ds;
        dnum[7] = 2.0 * x2 * ds;
        break;
      }
      case Block::A2: {
        const double ds = (s > 0.0 && a2 > 1e-12) ? s / (2.0 * a2) : 0.0;
        dnum[2] = -p2 * g21;
        dnum[3] = -p2 * g22;
        dnum[4] = -p2 * g21;
        dnum[5] = -p2 * g22;
        dnum[6] = 2.0 * x1 * ds;
        dnum[7] = 2.0 * x2 * ds;
        break;
      }
    }

    double acc = 0.0;
    for (int i = 0; i < 8; ++i) {
      if (coef[i] == 0.0 || dnum[i] == 0.0 || den[i] <= 0.0) continue;
      acc += coef[i] * dnum[i] / (den[i] + std::max(0.0, num[i]));
    }
    grad[k] = acc * scale;
  }
  return grad;
}

RealVec clamp_fractions(RealVec v) {
  for (double& x : v) x = std::clamp(x, 0.0, 1.0);
  return v;
}

struct AscentState {
  Allocation alloc;
  RateBounds bounds;
  double obj = 0.0;
  std::array<double, 4> steps{};
};

double evaluate(const SubchannelTables& tab, const Allocation& alloc,
                const std::array<double, 3>& mu, RateBounds* bounds_out,
                RatePoint* point_out) {
  const RateBounds b = rate_terms(tab, alloc);
  const RatePoint p = max_weighted_rate(b, mu);
  if (bounds_out) *bounds_out = b;
  if (point_out) *point_out = p;
  return mu[0] * p.r0 + mu[1] * p.r1 + mu[2] * p.r2;
}

// One projected-gradient update with backtracking halving; accepts only
// strict improvements. Returns whether the state moved.
bool update_block(const SubchannelTables& tab, AscentState& st,
                  const std::array<double, 3>& mu, Block block, double budget) {
  const auto coef = term_coefficients(st.bounds, mu);
  const RealVec grad = block_gradient(tab, st.alloc, coef, block);
  double norm = 0.0;
  for (double g : grad) norm = std::max(norm, std::abs(g));
  if (norm == 0.0) return false;

  RealVec* target = nullptr;
  switch (block) {
    case Block::P1: target = &st.alloc.p1; break;
    case Block::P2: target = &st.alloc.p2; break;
    case Block::A1: target = &st.alloc.a1; break;
    case Block::A2: target = &st.alloc.a2; break;
  }
  const RealVec saved = *target;
  double& step = st.steps[static_cast<int>(block)];

  for (int tries = 0; tries < 60 && step >= 1e-18; ++tries) {
    RealVec cand(saved.size());
    for (std::size_t k = 0; k < saved.size(); ++k) cand[k] = saved[k] + step * grad[k];
    if (block == Block::P1 || block == Block::P2) {
      cand = project_power(cand, budget, tab.n);
    } else {
      cand = clamp_fractions(std::move(cand));
    }
    if (cand == saved) break;  // pinned against the constraint set
    *target = std::move(cand);
    RateBounds b;
    RatePoint p;
    const double obj = evaluate(tab, st.alloc, mu, &b, &p);
    if (obj > st.obj) {
      st.obj = obj;
      st.bounds = b;
      step = std::min(step * 2.0, 1e6);
      return true;
    }
    step *= 0.5;
  }
  *target = saved;
  return false;
}

std::uint64_t derive_seed(std::uint64_t base, int start) {
  return base + 0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(start + 1);
}

// Mirror-symmetric uniform draw over the free half spectrum.
RealVec random_symmetric_fractions(int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  RealVec v(static_cast<std::size_t>(n), 0.0);
  for (int k = 0; k <= n / 2; ++k) {
    const double val = uni(rng);
    v[k] = val;
    v[(n - k) % n] = val;
  }
  return v;
}

// Nonnegative integer compositions of total into bins slots.
void compositions(int total, int bins, std::vector<int>& cur,
                  std::vector<std::vector<int>>& out) {
  if (bins == 1) {
    cur.push_back(total);
    out.push_back(cur);
    cur.pop_back();
    return;
  }
  for (int c = 0; c <= total; ++c) {
    cur.push_back(c);
    compositions(total - c, bins - 1, cur, out);
    cur.pop_back();
  }
}

RealVec expand_free(const RealVec& free_vals, int n) {
  RealVec full(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) full[k] = free_vals[std::min(k, n - k)];
  return full;
}

}  // namespace

BoundarySample optimize_weighted(const SubchannelSet& sub, double budget1,
                                 double budget2, const std::array<double, 3>& mu,
                                 const OptimizerConfig& cfg) {
  check_config(cfg);
  check_weights(mu);
  if (budget1 < 0.0 || budget2 < 0.0) {
    throw InvalidPower("power budgets must be nonnegative");
  }

  const SubchannelTables tab = make_tables(sub);
  const int n = sub.n;

  BoundarySample best;
  double best_obj = 0.0;
  bool have = false;

  for (int start = 0; start < cfg.multistarts; ++start) {
    std::mt19937_64 rng(derive_seed(cfg.seed, start));

    AscentState st;
    st.alloc = make_flat_allocation(n, budget1, budget2);
    // Starts 0 and 1 pin the fraction extremes; the rest draw uniformly.
    if (start == 1) {
      st.alloc.a1.assign(static_cast<std::size_t>(n), 1.0);
      st.alloc.a2.assign(static_cast<std::size_t>(n), 1.0);
    } else if (start >= 2) {
      st.alloc.a1 = random_symmetric_fractions(n, rng);
      st.alloc.a2 = random_symmetric_fractions(n, rng);
    }
    st.steps.fill(cfg.step_init);
    RatePoint p;
    st.obj = evaluate(tab, st.alloc, mu, &st.bounds, &p);

    int iterations = 0;
    bool converged = false;
    for (int it = 1; it <= cfg.max_iterations; ++it) {
      const double prev = st.obj;
      update_block(tab, st, mu, Block::P1, budget1);
      update_block(tab, st, mu, Block::P2, budget2);
      update_block(tab, st, mu, Block::A1, 0.0);
      update_block(tab, st, mu, Block::A2, 0.0);
      iterations = it;
      if (st.obj - prev <= cfg.rel_tolerance * std::max(std::abs(prev), 1e-12)) {
        converged = true;
        break;
      }
    }

    RateBounds bounds;
    RatePoint point;
    const double obj = evaluate(tab, st.alloc, mu, &bounds, &point);
    // Ties keep the earlier start.
    if (!have || obj > best_obj) {
      best_obj = obj;
      best.weights = mu;
      best.point = point;
      best.allocation = st.alloc;
      best.bounds = bounds;
      best.iterations = iterations;
      best.converged = converged;
      have = true;
    }
  }
  return best;
}

BoundarySample exhaustive_weighted(const SubchannelSet& sub, double budget1,
                                   double budget2, const std::array<double, 3>& mu,
                                   const OptimizerConfig& cfg) {
  check_config(cfg);
  check_weights(mu);
  const SubchannelTables tab = make_tables(sub);
  const int n = sub.n;
  const int bins = n / 2 + 1;
  const int g = cfg.coarse_grid;

  // Mirror multiplicity of each free bin.
  std::vector<double> mult(bins, 2.0);
  mult[0] = 1.0;
  if (n % 2 == 0) mult[bins - 1] = 1.0;

  std::vector<std::vector<int>> parts;
  std::vector<int> cur;
  compositions(g, bins, cur, parts);

  const auto power_profiles = [&](double budget) {
    std::vector<RealVec> out;
    out.reserve(parts.size());
    for (const auto& part : parts) {
      RealVec free_vals(bins);
      for (int k = 0; k < bins; ++k) {
        free_vals[k] = budget * n * part[k] / (static_cast<double>(g) * mult[k]);
      }
      out.push_back(expand_free(free_vals, n));
    }
    return out;
  };

  std::vector<RealVec> alpha_profiles;
  {
    std::vector<int> levels(bins, 0);
    for (;;) {
      RealVec free_vals(bins);
      for (int k = 0; k < bins; ++k) free_vals[k] = static_cast<double>(levels[k]) / g;
      alpha_profiles.push_back(expand_free(free_vals, n));
      int pos = 0;
      while (pos < bins && levels[pos] == g) levels[pos++] = 0;
      if (pos == bins) break;
      ++levels[pos];
    }
  }

  const auto p1s = power_profiles(budget1);
  const auto p2s = power_profiles(budget2);

  BoundarySample best;
  best.weights = mu;
  double best_obj = -1.0;
  Allocation alloc = make_flat_allocation(n, 0.0, 0.0);
  for (const auto& p1 : p1s) {
    for (const auto& a1 : alpha_profiles) {
      alloc.p1 = p1;
      alloc.a1 = a1;
      for (const auto& p2 : p2s) {
        for (const auto& a2 : alpha_profiles) {
          alloc.p2 = p2;
          alloc.a2 = a2;
          RateBounds b;
          RatePoint p;
          const double obj = evaluate(tab, alloc, mu, &b, &p);
          if (obj > best_obj) {
            best_obj = obj;
            best.point = p;
            best.allocation = alloc;
            best.bounds = b;
          }
        }
      }
    }
  }
  best.converged = true;
  return best;
}

WaterfillResult waterfill_single_user(const RealVec& snr, double budget) {
  const int n = static_cast<int>(snr.size());
  if (n == 0) throw DimensionMismatch("empty SNR profile");
  for (double s : snr) {
    if (!std::isfinite(s) || s < 0.0) {
      throw ValidationError("SNR profile entries must be nonnegative finite numbers");
    }
  }
  WaterfillResult out;
  out.power.assign(static_cast<std::size_t>(n), 0.0);
  if (budget <= 0.0) return out;

  double inv_min = 0.0, inv_max = 0.0;
  bool any = false;
  for (double s : snr) {
    if (s > 0.0) {
      const double inv = 1.0 / s;
      inv_min = any ? std::min(inv_min, inv) : inv;
      inv_max = any ? std::max(inv_max, inv) : inv;
      any = true;
    }
  }
  if (!any) {
    throw ZeroChannel("all sub-channels have zero SNR but the budget is positive");
  }

  const auto filled = [&](double level) {
    RealVec fill(static_cast<std::size_t>(n), 0.0);
    for (int k = 0; k < n; ++k) {
      if (snr[k] > 0.0) fill[k] = std::max(0.0, level - 1.0 / snr[k]);
    }
    return pairwise_sum(fill) / n;
  };

  double lo = inv_min;
  double hi = inv_max + static_cast<double>(n) * budget;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (filled(mid) < budget) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double level = 0.5 * (lo + hi);

  RealVec rates(static_cast<std::size_t>(n), 0.0);
  for (int k = 0; k < n; ++k) {
    if (snr[k] > 0.0) out.power[k] = std::max(0.0, level - 1.0 / snr[k]);
    rates[k] = log2_1p(out.power[k] * snr[k]);
  }
  out.capacity = pairwise_sum(rates) / (2.0 * n);
  out.water_level = level;
  return out;
}

std::vector<BoundarySample> trace_boundary(const SubchannelSet& sub, double budget1,
                                           double budget2,
                                           const std::vector<std::array<double, 3>>& weights,
                                           const OptimizerConfig& cfg) {
  if (weights.empty()) {
    throw InvalidWeights("weight grid must be nonempty");
  }
  std::vector<BoundarySample> out;
  out.reserve(weights.size());
  for (const auto& mu : weights) {
    out.push_back(optimize_weighted(sub, budget1, budget2, mu, cfg));
  }
  return out;
}

RealVec project_power(const RealVec& raw, double budget, int n) {
  if (static_cast<int>(raw.size()) != n || n <= 0) {
    throw DimensionMismatch("profile length does not match n");
  }
  RealVec sym(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) sym[k] = 0.5 * (raw[k] + raw[(n - k) % n]);

  RealVec clamped(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) clamped[k] = std::max(0.0, sym[k]);

  const double cap = budget * n;
  double total = 0.0;
  for (double v : clamped) total += v;
  if (total <= cap) return clamped;

  // Water level for projection onto {x >= 0, sum x = cap}.
  RealVec sorted = sym;
  std::sort(sorted.begin(), sorted.end(), std::greater<double>());
  double prefix = 0.0;
  double theta = 0.0;
  for (int i = 0; i < n; ++i) {
    prefix += sorted[i];
    const double cand = (prefix - cap) / (i + 1);
    if (i + 1 == n || sorted[i + 1] <= cand) {
      theta = cand;
      break;
    }
  }
  RealVec out(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) out[k] = std::max(0.0, sym[k] - theta);
  return out;
}

}  // namespace cmacc
