#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "orlicz/quadrature.hpp"
#include "orlicz/young.hpp"

namespace orlicz {

enum class Convergence { converges, diverges };

// Convergence profile of the improper integral of (t/A(t))^m over
// (0, infinity), probed on decade windows inside [1e-8, 1e8].
struct IntegralProfile {
  double exponent_m = 0.0;
  Convergence at_zero = Convergence::converges;
  Convergence at_infinity = Convergence::converges;
  // (window lo, window hi, integral over the window)
  std::vector<std::array<double, 3>> partial_values;
  double total = 0.0;
  bool clipped = false;
};

inline IntegralProfile integral_profile(const YoungFunction& a, double m) {
  if (!(m > 0.0)) throw std::domain_error("integral_profile: m must be > 0");
  IntegralProfile prof;
  prof.exponent_m = m;
  const auto f = [&](double t) {
    const double v = a(t);
    if (!(v > 0.0)) return 0.0;  // flat-zero stretch: integrand clipped
    const double r = std::pow(t / v, m);
    return std::isfinite(r) ? r : 0.0;
  };
  double sum_low2 = 0, sum_mid_low = 0, sum_mid_high = 0, sum_high2 = 0;
  for (int k = -8; k < 8; ++k) {
    const double lo = std::pow(10.0, k), hi = std::pow(10.0, k + 1);
    // probe for non-finite integrand values
    for (int j = 0; j <= 8; ++j) {
      const double t = lo * std::pow(hi / lo, j / 8.0);
      const double v = a(t);
      if (v > 0.0 && !std::isfinite(std::pow(t / v, m))) prof.clipped = true;
    }
    const double piece = integrate(f, lo, hi, 0.0);
    prof.partial_values.push_back({lo, hi, piece});
    prof.total += piece;
    if (k < -6) sum_low2 += piece;
    else if (k < -4) sum_mid_low += piece;
    if (k >= 6) sum_high2 += piece;
    else if (k >= 4) sum_mid_high += piece;
  }
  prof.at_zero = (sum_low2 > 1e6 || sum_low2 >= 0.75 * sum_mid_low)
                     ? Convergence::diverges
                     : Convergence::converges;
  prof.at_infinity = (sum_high2 > 1e6 || sum_high2 >= 0.5 * sum_mid_high)
                         ? Convergence::diverges
                         : Convergence::converges;
  return prof;
}

namespace detail {

inline void require_conv_at_zero(const YoungFunction& a, int n) {
  const auto prof = integral_profile(a, 1.0 / (n - 1));
  if (prof.at_zero == Convergence::diverges) {
    throw std::runtime_error(
        "h_n: the (t/A(t))^{1/(n-1)} integral diverges at 0; apply "
        "regularize_near_zero first");
  }
}

}  // namespace detail

// H_n(s) = (int_0^s (t/A(t))^{1/(n-1)} dt)^{(n-1)/n}
inline double h_n(const YoungFunction& a, int n, double s) {
  if (n < 2) throw std::domain_error("h_n: n must be >= 2");
  if (s < 0.0) throw std::domain_error("h_n: negative argument");
  if (s == 0.0) return 0.0;
  detail::require_conv_at_zero(a, n);
  const double m = 1.0 / (n - 1);
  const auto f = [&](double t) {
    const double v = a(t);
    return v > 0.0 ? std::pow(t / v, m) : 0.0;
  };
  const double integral = integrate_from_zero(f, s, 1e-11);
  return std::pow(integral, (n - 1.0) / n);
}

// The optimal Orlicz target A_n = A o H_n^{-1}, exposed as a table, together
// with the transform table and its numeric inverse.
struct SobolevConjugate {
  YoungFunction base;
  int dim = 0;
  std::vector<std::pair<double, double>> h_table;  // (s, H_n(s)), strictly increasing
  YoungFunction h_inverse;                         // smooth table: t -> s with H_n(s) = t
  YoungFunction result;                            // A_n as a YoungFunction
};

inline SobolevConjugate sobolev_conjugate(const YoungFunction& a, int n) {
  if (n < 2) throw std::domain_error("sobolev_conjugate: n must be >= 2");
  detail::require_conv_at_zero(a, n);
  const double m = 1.0 / (n - 1);
  const auto f = [&](double t) {
    const double v = a(t);
    return v > 0.0 ? std::pow(t / v, m) : 0.0;
  };
  // The s-grid extends until the transform table itself covers the probe
  // horizon in t (or the base values overflow): extrapolating the table
  // would freeze slowly-decaying slope corrections and distort domination
  // checks near sharp exponents.
  const double s_min = 1e-10;
  const double step = std::log(10.0) / 100.0;
  double integral = integrate_from_zero(f, s_min, 1e-11);

  std::vector<std::pair<double, double>> h_table;
  std::vector<TableKnot> an_knots, inv_knots;
  double s_prev = s_min, t_prev = -1.0;
  for (int i = 0;; ++i) {
    const double s = s_min * std::exp(step * i);
    if (i > 0) {
      integral += integrate(f, s_prev, s, 0.0);
      s_prev = s;
    }
    const double t = std::pow(integral, (n - 1.0) / n);  // H_n(s)
    if ((t > 1e9 && s > 1e12) || s > 1e200 || !std::isfinite(a(s))) break;
    const double v = a(s);
    if (!(t > t_prev * (1.0 + 1e-12)) || !std::isfinite(v)) continue;
    // dH/ds = ((n-1)/n) I^{-1/n} (s/A(s))^{1/(n-1)}
    const double hprime = ((n - 1.0) / n) * std::pow(integral, -1.0 / n) * f(s);
    if (!(hprime > 0.0) || !std::isfinite(hprime)) continue;
    h_table.emplace_back(s, t);
    an_knots.push_back({t, v, a.derivative(s) / hprime});
    inv_knots.push_back({t, s, 1.0 / hprime});
    t_prev = t;
  }
  if (an_knots.size() < 8)
    throw std::runtime_error("sobolev_conjugate: transform table degenerate");

  SobolevConjugate sc{a, n, std::move(h_table),
                      YoungFunction::table(std::move(inv_knots), false, /*smooth=*/true),
                      YoungFunction::table(std::move(an_knots), false, /*smooth=*/true)};
  return sc;
}

// Linear splice: a t on [0, t1) with a = A(t1)/t1, A beyond. Removes any
// degeneracy of A near 0 so the H_n integrals converge there.
inline YoungFunction regularize_near_zero(const YoungFunction& a, int n,
                                          double extra_threshold = 0.0) {
  if (n < 2) throw std::domain_error("regularize_near_zero: n must be >= 2");
  const double t1 = std::max(1.0, extra_threshold);
  return YoungFunction::linear_splice(t1, a);
}

// Turn a near-infinity domination of B by `target` into a global one:
// target below t2, a linear bridge on [t2, t3], B beyond t3, with (t2, t3)
// the first power-of-two pair giving a convex splice that certifies
// globally.
inline YoungFunction lift_global_bound(const YoungFunction& b, const YoungFunction& target,
                                       double big_l, double t0) {
  // Precondition: the near-infinity certificate actually holds.
  {
    const double lo = std::max(t0, 1e-8);
    bool ok = true;
    for (int i = 0; i <= 128; ++i) {
      const double t = std::exp(std::log(lo) + (std::log(kHorizon) - std::log(lo)) * i / 128);
      if (b(t) > target(big_l * t) * (1.0 + 1e-12)) { ok = false; break; }
    }
    if (!ok)
      throw std::runtime_error(
          "lift_global_bound: supplied (L, t0) is not a valid near-infinity certificate");
  }
  const int k_start = static_cast<int>(std::ceil(std::log2(std::max(t0, 1.0)))) + 1;
  for (int k = k_start; k <= k_start + 40; ++k) {
    const double t3 = std::pow(2.0, k);
    for (int j = k - 1; j >= -20; --j) {
      const double t2 = std::pow(2.0, j);
      // convexity of the splice: bridge slope must sit between the outer
      // slopes, and the bridge must not decrease
      const double v2 = target(t2), v3 = b(t3);
      if (!(v3 >= v2)) continue;
      const double slope = (v3 - v2) / (t3 - t2);
      if (slope < target.derivative(t2) - 1e-12) continue;
      if (slope > b.derivative(t3) + 1e-12) continue;
      YoungFunction candidate = YoungFunction::spliced(target, b, t2, t3);
      if (!validate(candidate).empty()) continue;
      if (check_dominates(target, candidate, DominationMode::global)) return candidate;
    }
  }
  throw std::runtime_error("lift_global_bound: no power-of-two splice pair certified globally");
}

}  // namespace orlicz
