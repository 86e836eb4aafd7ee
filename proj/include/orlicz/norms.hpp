#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "orlicz/grid.hpp"
#include "orlicz/sobolev.hpp"
#include "orlicz/young.hpp"

namespace orlicz {

// Weighted modular sum of Y over |u| or |grad u|.
inline double modular(const YoungFunction& y, const SampledFunction& u, bool use_gradient = false) {
  double s = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double field = use_gradient ? u.grad_norm(i) : std::abs(u.values[i]);
    s += u.weights[i] * y(field);
  }
  return s;
}

// Luxemburg gauge inf{lambda : modular(u / lambda) <= 1}.
inline double luxemburg_norm(const YoungFunction& y, const SampledFunction& u,
                             bool use_gradient = false) {
  const auto mod_at = [&](double lam) {
    double s = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
      const double field = use_gradient ? u.grad_norm(i) : std::abs(u.values[i]);
      s += u.weights[i] * y(field / lam);
      if (!std::isfinite(s)) return std::numeric_limits<double>::infinity();
    }
    return s;
  };
  bool all_zero = true;
  for (std::size_t i = 0; i < u.size(); ++i) {
    if ((use_gradient ? u.grad_norm(i) : u.values[i]) != 0.0) { all_zero = false; break; }
  }
  if (all_zero) return 0.0;

  double lo = 1e-12, hi = 1e-12;  // lo: modular > 1, hi: modular <= 1
  while (mod_at(hi) > 1.0) {
    hi *= 4.0;
    if (hi > 1e12) throw std::runtime_error("luxemburg_norm: bracket exhausted at 1e12");
  }
  if (hi == 1e-12) return hi;  // already inside the unit ball at the floor
  lo = hi * 0.25;
  // bisect until the achieved modular enters [1 - 1e-9, 1]
  for (int i = 0; i < 200; ++i) {
    const double m = mod_at(hi);
    if (m >= 1.0 - 1e-9 && m <= 1.0) break;
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (mod_at(mid) <= 1.0) hi = mid; else lo = mid;
  }
  return hi;
}

// 2 ||u||_A ||v||_conj(A) - int |u v|; nonnegative up to tolerance.
inline double holder_defect(const SampledFunction& u, const SampledFunction& v,
                            const YoungFunction& y, const YoungFunction* conj_y = nullptr) {
  if (!u.same_grid(v)) throw std::runtime_error("holder_defect: grids differ");
  YoungFunction conj_local = conj_y ? *conj_y : conjugate(y);
  const double bound = 2.0 * luxemburg_norm(y, u) * luxemburg_norm(conj_local, v);
  double pairing = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    pairing += u.weights[i] * std::abs(u.values[i] * v.values[i]);
  }
  return bound - pairing;
}

// Working pair for the Sobolev-Poincare inequality. When the base profile
// is too degenerate near zero for the transform, the standard splice
// replaces it on both sides of the inequality.
struct SpContext {
  YoungFunction a_eff;
  YoungFunction a_n;
};

inline SpContext sp_context(const YoungFunction& a, int n) {
  if (integral_profile(a, 1.0 / (n - 1)).at_zero == Convergence::converges) {
    return {a, sobolev_conjugate(a, n).result};
  }
  YoungFunction hat = regularize_near_zero(a, n);
  return {hat, sobolev_conjugate(hat, n).result};
}

// RHS - LHS of the modular Sobolev-Poincare inequality
//   int A_n(|u - mean| / (kappa G^{1/n})) <= G,  G = int A(|grad u|),
// for a given kappa. Positive defect means the inequality holds.
inline double sobolev_poincare_defect(const SampledFunction& u, const YoungFunction& a, int n,
                                      double kappa, const SpContext* ctx = nullptr) {
  SpContext local = ctx ? *ctx : sp_context(a, n);
  const double g = modular(local.a_eff, u, /*use_gradient=*/true);
  const double mean = u.mean();
  if (!(g > 0.0)) {
    double dev = 0.0, amp = 0.0;
    for (double v : u.values) {
      dev = std::max(dev, std::abs(v - mean));
      amp = std::max(amp, std::abs(v));
    }
    if (dev <= 1e-12 * std::max(amp, 1.0)) return 0.0;  // constant field: 0 <= 0
    throw std::runtime_error("sobolev_poincare_defect: gradient modular vanishes");
  }
  const double scale = kappa * std::pow(g, 1.0 / n);
  double lhs = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    lhs += u.weights[i] * local.a_n(std::abs(u.values[i] - mean) / scale);
  }
  return g - lhs;
}

// Smallest kappa in {2^k / 8} making the defect nonnegative (within
// 1e-6 of the gradient-modular scale) across the whole seed basket.
inline double sobolev_poincare_kappa_search(const std::vector<SampledFunction>& seeds,
                                            const YoungFunction& a, int n) {
  const SpContext ctx = sp_context(a, n);
  for (int k = 0; k <= 40; ++k) {
    const double kappa = std::pow(2.0, k) / 8.0;
    bool ok = true;
    for (const auto& u : seeds) {
      const double g = modular(ctx.a_eff, u, true);
      if (!(g > 0.0)) continue;
      if (sobolev_poincare_defect(u, a, n, kappa, &ctx) < -1e-6 * g) { ok = false; break; }
    }
    if (ok) return kappa;
  }
  throw std::runtime_error("sobolev_poincare_kappa_search: no kappa up to 2^40/8 works");
}

}  // namespace orlicz
