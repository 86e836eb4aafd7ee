#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "orlicz/bisection.hpp"

namespace orlicz {

inline constexpr double kHorizon = 1e8;  // "near infinity" probe window ends here

// One knot of a piecewise convex table: argument, value, right-slope.
struct TableKnot {
  double t = 0.0;
  double v = 0.0;
  double slope = 0.0;
};

// A convex growth profile A : [0, inf) -> [0, inf] with A(0) = 0.
// Immutable after construction; all queries are pure.
class YoungFunction {
 public:
  enum class Kind { power, power_log, exp_poly, linear_splice, table, scaled, spliced };

  // t^p, p >= 1.
  static YoungFunction power(double p) {
    if (!(p >= 1.0)) throw std::domain_error("power: exponent must be >= 1");
    YoungFunction y;
    y.kind_ = Kind::power;
    y.p_ = p;
    return y;
  }

  // t^p (log t)^alpha near infinity, with an automatic linear splice below
  // the first point where the analytic branch is a valid Young function.
  static YoungFunction power_log(double p, double alpha) {
    if (alpha == 0.0) return power(p);
    if (!(p >= 1.0)) throw std::domain_error("power_log: exponent must be >= 1");
    if (p == 1.0 && alpha < 0.0)
      throw std::domain_error("power_log: p = 1 requires alpha >= 0");
    YoungFunction y;
    y.kind_ = Kind::power_log;
    y.p_ = p;
    y.alpha_ = alpha;
    // Analytic branch t^p (log t)^alpha is valid beyond L = log t when
    //   (p-1) L + alpha >= 0            (A(t)/t non-decreasing)
    //   p(p-1) L^2 + alpha(2p-1) L + alpha(alpha-1) >= 0   (convexity)
    // Both are eventually monotone in L; take the first integer L that works.
    for (int k = 1; k <= 400; ++k) {
      const double L = static_cast<double>(k);
      const double mono = (p - 1.0) * L + alpha;
      const double conv = p * (p - 1.0) * L * L + alpha * (2.0 * p - 1.0) * L +
                          alpha * (alpha - 1.0);
      const double vertex = (p > 1.0) ? -alpha * (2.0 * p - 1.0) / (2.0 * p * (p - 1.0))
                                      : (1.0 - alpha);
      if (mono >= 0.0 && conv >= 0.0 && L >= vertex) {
        y.splice_ = std::exp(L);
        break;
      }
    }
    if (y.splice_ <= 0.0)
      throw std::domain_error("power_log: no valid splice point found");
    y.lin_a_ = y.branch_value(y.splice_) / y.splice_;
    return y;
  }

  // exp(t^a) - 1, a > 0; spliced linearly below the convexity threshold
  // when a < 1.
  static YoungFunction exp_poly(double a) {
    if (!(a > 0.0)) throw std::domain_error("exp_poly: exponent must be > 0");
    YoungFunction y;
    y.kind_ = Kind::exp_poly;
    y.a_ = a;
    if (a < 1.0) {
      // Branch convex once a t^a >= 1 - a; also need slope continuity at
      // the splice.
      for (int k = 0; k <= 2000; ++k) {
        const double ts = std::pow(2.0, k / 16.0) / 16.0;
        const double conv = a * std::pow(ts, a) - (1.0 - a);
        if (conv < 0.0) continue;
        const double val = std::expm1(std::pow(ts, a));
        const double der = a * std::pow(ts, a - 1.0) * std::exp(std::pow(ts, a));
        if (der >= val / ts) {
          y.splice_ = ts;
          y.lin_a_ = val / ts;
          break;
        }
      }
      if (y.splice_ <= 0.0)
        throw std::domain_error("exp_poly: no valid splice point found");
    }
    return y;
  }

  // a t below t1 with a = base(t1)/t1, base beyond.
  static YoungFunction linear_splice(double t1, YoungFunction base) {
    if (!(t1 > 0.0)) throw std::domain_error("linear_splice: t1 must be > 0");
    const double v1 = base(t1);
    if (!(v1 > 0.0)) throw std::domain_error("linear_splice: base vanishes at the splice point");
    YoungFunction y;
    y.kind_ = Kind::linear_splice;
    y.t1_ = t1;
    y.lin_a_ = v1 / t1;
    y.splice_ = t1;
    y.inner_ = std::make_shared<YoungFunction>(std::move(base));
    return y;
  }

  // Piecewise convex table. `smooth` marks internally built tables whose
  // slopes are exact derivatives of a smooth function (Hermite eval);
  // otherwise the table is taken as genuinely piecewise linear.
  static YoungFunction table(std::vector<TableKnot> knots, bool finite_domain = false,
                             bool smooth = false) {
    if (knots.size() < 2) throw std::domain_error("table: need at least two knots");
    for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
      if (!(knots[i + 1].t > knots[i].t))
        throw std::domain_error("table: knot arguments must be strictly increasing");
    }
    YoungFunction y;
    y.kind_ = Kind::table;
    y.knots_ = std::move(knots);
    y.finite_domain_ = finite_domain;
    y.smooth_table_ = smooth;
    return y;
  }

  // lambda_val * inner(lambda_arg * t).
  static YoungFunction scaled(YoungFunction inner, double lambda_arg, double lambda_val) {
    if (!(lambda_arg > 0.0) || !(lambda_val > 0.0))
      throw std::domain_error("scaled: scale factors must be positive");
    YoungFunction y;
    y.kind_ = Kind::scaled;
    y.lam_arg_ = lambda_arg;
    y.lam_val_ = lambda_val;
    y.inner_ = std::make_shared<YoungFunction>(std::move(inner));
    return y;
  }

  // lower on [0, t2), a linear bridge on [t2, t3), upper beyond.
  static YoungFunction spliced(YoungFunction lower, YoungFunction upper, double t2, double t3) {
    if (!(0.0 < t2 && t2 < t3)) throw std::domain_error("spliced: need 0 < t2 < t3");
    YoungFunction y;
    y.kind_ = Kind::spliced;
    y.t2_ = t2;
    y.t3_ = t3;
    y.inner_ = std::make_shared<YoungFunction>(std::move(lower));
    y.inner2_ = std::make_shared<YoungFunction>(std::move(upper));
    y.bridge_v2_ = (*y.inner_)(t2);
    y.bridge_v3_ = (*y.inner2_)(t3);
    if (!(y.bridge_v3_ >= y.bridge_v2_))
      throw std::domain_error("spliced: bridge would decrease");
    return y;
  }

  Kind kind() const { return kind_; }
  double splice_point() const { return splice_; }
  bool near_infinity_only() const { return splice_ > 0.0; }
  bool finite_domain() const { return finite_domain_; }
  double domain_end() const {
    return finite_domain_ ? knots_.back().t : std::numeric_limits<double>::infinity();
  }
  const std::vector<TableKnot>& knots() const { return knots_; }

  double operator()(double t) const {
    if (t < 0.0) throw std::domain_error("YoungFunction: negative argument");
    if (t == 0.0) return 0.0;
    switch (kind_) {
      case Kind::power:
        return std::pow(t, p_);
      case Kind::power_log:
        return t < splice_ ? lin_a_ * t : branch_value(t);
      case Kind::exp_poly:
        return t < splice_ ? lin_a_ * t : std::expm1(std::pow(t, a_));
      case Kind::linear_splice:
        return t < t1_ ? lin_a_ * t : (*inner_)(t);
      case Kind::scaled:
        return lam_val_ * (*inner_)(lam_arg_ * t);
      case Kind::spliced:
        if (t < t2_) return (*inner_)(t);
        if (t < t3_)
          return bridge_v2_ + (bridge_v3_ - bridge_v2_) * (t - t2_) / (t3_ - t2_);
        return (*inner2_)(t);
      case Kind::table:
        return table_value(t);
    }
    return 0.0;
  }

  // Right-derivative.
  double derivative(double t) const {
    if (t < 0.0) throw std::domain_error("YoungFunction: negative argument");
    switch (kind_) {
      case Kind::power:
        return t == 0.0 ? (p_ == 1.0 ? 1.0 : 0.0) : p_ * std::pow(t, p_ - 1.0);
      case Kind::power_log:
        if (t < splice_) return lin_a_;
        return std::pow(t, p_ - 1.0) * std::pow(std::log(t), alpha_ - 1.0) *
               (p_ * std::log(t) + alpha_);
      case Kind::exp_poly:
        if (splice_ > 0.0 && t < splice_) return lin_a_;
        if (t == 0.0) return a_ == 1.0 ? 1.0 : 0.0;
        return a_ * std::pow(t, a_ - 1.0) * std::exp(std::pow(t, a_));
      case Kind::linear_splice:
        return t < t1_ ? lin_a_ : inner_->derivative(t);
      case Kind::scaled:
        return lam_val_ * lam_arg_ * inner_->derivative(lam_arg_ * t);
      case Kind::spliced:
        if (t < t2_) return inner_->derivative(t);
        if (t < t3_) return (bridge_v3_ - bridge_v2_) / (t3_ - t2_);
        return inner2_->derivative(t);
      case Kind::table:
        return table_derivative(t);
    }
    return 0.0;
  }

 private:
  double branch_value(double t) const {  // power_log analytic branch
    return std::pow(t, p_) * std::pow(std::log(t), alpha_);
  }

  std::size_t segment_index(double t) const {
    // largest i with knots_[i].t <= t, clamped to [0, size-2]
    const auto it = std::upper_bound(
        knots_.begin(), knots_.end(), t,
        [](double x, const TableKnot& k) { return x < k.t; });
    std::size_t i = static_cast<std::size_t>(std::distance(knots_.begin(), it));
    if (i == 0) return 0;
    return std::min(i - 1, knots_.size() - 2);
  }

  static double power_extrapolate(const TableKnot& k, double t) {
    if (k.v <= 0.0) return 0.0;
    const double e = std::max(k.slope * k.t / k.v, 1e-12);
    const double lnv = std::log(k.v) + e * (std::log(t) - std::log(k.t));
    if (lnv > 700.0) return std::numeric_limits<double>::infinity();
    return std::exp(lnv);
  }

  double table_value(double t) const {
    const auto& front = knots_.front();
    const auto& back = knots_.back();
    if (t < front.t) {
      return power_extrapolate(front, t);
    }
    if (t > back.t) {
      if (finite_domain_) return std::numeric_limits<double>::infinity();
      return power_extrapolate(back, t);
    }
    const std::size_t i = segment_index(t);
    const TableKnot& a = knots_[i];
    const TableKnot& b = knots_[i + 1];
    const double h = b.t - a.t;
    const double x = (t - a.t) / h;
    if (!smooth_table_) {
      return a.v + (b.v - a.v) * x;
    }
    // Cubic Hermite with exact end slopes.
    const double h00 = (1.0 + 2.0 * x) * (1.0 - x) * (1.0 - x);
    const double h10 = x * (1.0 - x) * (1.0 - x);
    const double h01 = x * x * (3.0 - 2.0 * x);
    const double h11 = x * x * (x - 1.0);
    const double raw = h00 * a.v + h10 * h * a.slope + h01 * b.v + h11 * h * b.slope;
    // The true function is nondecreasing, so the value lies in [a.v, b.v];
    // clamping protects monotonicity near slope jumps.
    return std::clamp(raw, a.v, b.v);
  }

  double table_derivative(double t) const {
    const auto& front = knots_.front();
    const auto& back = knots_.back();
    if (t < front.t) {
      const double v = power_extrapolate(front, t);
      if (v <= 0.0 || front.v <= 0.0) return 0.0;
      const double e = std::max(front.slope * front.t / front.v, 1e-12);
      return e * v / t;
    }
    if (t > back.t) {
      if (finite_domain_) return std::numeric_limits<double>::infinity();
      const double v = power_extrapolate(back, t);
      if (back.v <= 0.0) return back.slope;
      const double e = std::max(back.slope * back.t / back.v, 1e-12);
      return e * v / t;
    }
    const std::size_t i = segment_index(t);
    const TableKnot& a = knots_[i];
    const TableKnot& b = knots_[i + 1];
    if (!smooth_table_) return (b.v - a.v) / (b.t - a.t);
    const double h = b.t - a.t;
    const double x = (t - a.t) / h;
    const double d00 = (6.0 * x * x - 6.0 * x) / h;
    const double d10 = 3.0 * x * x - 4.0 * x + 1.0;
    const double d01 = (6.0 * x - 6.0 * x * x) / h;
    const double d11 = 3.0 * x * x - 2.0 * x;
    return d00 * a.v + d10 * a.slope + d01 * b.v + d11 * b.slope;
  }

  Kind kind_ = Kind::power;
  double p_ = 2.0, alpha_ = 0.0, a_ = 1.0;
  double t1_ = 0.0, t2_ = 0.0, t3_ = 0.0;
  double lam_arg_ = 1.0, lam_val_ = 1.0;
  double splice_ = 0.0;   // analytic form holds only beyond this point
  double lin_a_ = 0.0;    // slope of the linear branch below the splice
  double bridge_v2_ = 0.0, bridge_v3_ = 0.0;
  bool finite_domain_ = false;
  bool smooth_table_ = false;
  std::shared_ptr<const YoungFunction> inner_, inner2_;
  std::vector<TableKnot> knots_;
};

// --------------------------------------------------------------------------
// Generalized right-continuous inverse: inf{t : Y(t) > s}.
inline double inverse(const YoungFunction& y, double s) {
  if (s < 0.0) throw std::domain_error("inverse: negative level");
  // Grow an upper bracket.
  double hi = 1.0;
  int guard = 0;
  while (!(y(hi) > s)) {
    hi *= 4.0;
    if (++guard > 600 || hi > 1e300) {
      throw std::runtime_error(
          "inverse: level exceeds the function supremum over the numeric horizon (t <= 1e300)");
    }
  }
  double lo = hi;
  guard = 0;
  while (y(lo) > s) {
    lo *= 0.25;
    if (++guard > 600 || lo < 1e-300) return 0.0;
  }
  return bisect_first_true_log([&](double t) { return y(t) > s; }, lo, hi, 1e-13);
}

// --------------------------------------------------------------------------
// Young conjugate sup{tau t - Y(tau)} as a piecewise table.
struct ConjugateOptions {
  double t_min = 1e-6;
  double t_max = 1e6;
  double knot_spacing = 0.01;   // log spacing of the base t-grid
  double tau_min = 1e-9;
  double tau_max = 1e9;
  double kink_spacing = 5e-7;   // refinement floor near maximizer jumps
  int max_knots = 40000;
};

namespace detail {

struct ConjPoint {
  double value;
  double maximizer;
  bool infinite;
};

inline ConjPoint conjugate_at(const YoungFunction& y, double t, const ConjugateOptions& opt) {
  const auto g = [&](double tau) {
    const double v = y(tau);
    if (!std::isfinite(v)) return -std::numeric_limits<double>::infinity();
    return tau * t - v;
  };
  // Grow the tau window until g turns over; if it never does, Y is
  // asymptotically linear with slope below t and the conjugate is +inf.
  double hi = opt.tau_max;
  while (g(2.0 * hi) > g(hi)) {
    hi *= 4.0;
    if (hi > 1e290) return {std::numeric_limits<double>::infinity(), hi, true};
  }
  const int n = std::max(241, static_cast<int>(13.0 * std::log10(hi / opt.tau_min)));
  const double lmin = std::log(opt.tau_min), lmax = std::log(hi);
  double best = g(0.0);
  int best_i = -1;
  for (int i = 0; i < n; ++i) {
    const double tau = std::exp(lmin + (lmax - lmin) * i / (n - 1));
    const double gi = g(tau);
    if (gi > best) {  // strict: ties resolve to the smaller tau
      best = gi;
      best_i = i;
    }
  }
  // Golden-section refinement in log space around the bracketing neighbors.
  const double step = (lmax - lmin) / (n - 1);
  const double llo = best_i <= 0 ? std::log(1e-30) : lmin + step * (best_i - 1);
  const double lhi = lmin + step * (best_i + 1 > n - 1 ? n - 1 : best_i + 1);
  const double l_star = golden_max([&](double l) { return g(std::exp(l)); }, llo, lhi, 1e-14);
  const double tau_star = std::exp(l_star);
  return {std::max(0.0, g(tau_star)), tau_star, false};
}

}  // namespace detail

inline YoungFunction conjugate(const YoungFunction& y, ConjugateOptions opt = {}) {
  std::vector<TableKnot> knots;
  bool finite_dom = false;
  const double l0 = std::log(opt.t_min), l1 = std::log(opt.t_max);
  const int base = std::max(257, static_cast<int>(std::ceil((l1 - l0) / opt.knot_spacing)) + 1);
  knots.reserve(static_cast<std::size_t>(base));
  for (int i = 0; i < base; ++i) {
    const double t = std::exp(l0 + (l1 - l0) * i / (base - 1));
    const auto p = detail::conjugate_at(y, t, opt);
    if (p.infinite) {
      finite_dom = true;
      break;
    }
    knots.push_back({t, p.value, p.maximizer});
  }
  if (knots.size() < 2)
    throw std::runtime_error("conjugate: degenerate table (function nearly linear)");

  // Smooth stretches interpolate to high order already; only maximizer
  // jumps (kinks of the conjugate, produced by affine pieces of Y) need
  // extra resolution.
  std::vector<TableKnot> out;
  out.reserve(knots.size() * 2);
  std::vector<TableKnot> stack(knots.rbegin(), knots.rend());
  int total = static_cast<int>(knots.size());
  out.push_back(stack.back());
  stack.pop_back();
  while (!stack.empty()) {
    const TableKnot a = out.back();
    const TableKnot b = stack.back();
    const bool jump = (b.slope - a.slope) > 0.25 * std::max(a.slope, 1e-300);
    if (jump && std::log(b.t / a.t) > opt.kink_spacing && total < opt.max_knots) {
      const double tm = std::sqrt(a.t * b.t);
      const auto p = detail::conjugate_at(y, tm, opt);
      stack.push_back({tm, p.value, p.maximizer});
      ++total;
    } else {
      out.push_back(b);
      stack.pop_back();
    }
  }
  return YoungFunction::table(std::move(out), finite_dom, /*smooth=*/true);
}

// --------------------------------------------------------------------------
// Doubling index sup t Y'(t) / Y(t) over [max(t_from, 1e-6), 1e8].
struct Delta2Index {
  double value = 0.0;
  bool infinite = false;
};

inline Delta2Index delta2_index(const YoungFunction& y, double t_from) {
  if (t_from < 0.0) throw std::domain_error("delta2_index: negative start");
  const double lo = std::max(t_from, 1e-6);
  // shrink the window so the values stay representable; the ratio of a
  // doubling function is stable under this truncation
  double hi = kHorizon;
  while (hi > lo * 1e4 && !std::isfinite(y(hi))) hi *= 0.5;
  const int n = 1024;
  Delta2Index out;
  double max_prev_decade = 0.0, max_last_decade = 0.0;
  const double llo = std::log(lo), lhi = std::log(hi);
  for (int i = 0; i <= n; ++i) {
    const double t = std::exp(llo + (lhi - llo) * i / n);
    const double v = y(t);
    if (!(v > 0.0)) continue;
    const double d = y.derivative(t);
    double ratio;
    if (!std::isfinite(v) || !std::isfinite(d)) {
      ratio = std::numeric_limits<double>::infinity();
    } else {
      ratio = t * (d / v);  // d and v can be near the overflow edge; t*d cannot
    }
    out.value = std::max(out.value, ratio);
    if (t >= hi * 1e-2) {
      if (t < hi * 1e-1) max_prev_decade = std::max(max_prev_decade, ratio);
      else max_last_decade = std::max(max_last_decade, ratio);
    }
  }
  if (out.value > 1e6 || !std::isfinite(out.value)) out.infinite = true;
  else if (max_last_decade > max_prev_decade * (1.0 + 1e-9) && max_prev_decade > 0.0) {
    // still growing across the final two decades of the probe window
    out.infinite = true;
  }
  return out;
}

// --------------------------------------------------------------------------
// Domination B(t) <= A(c t), globally or near infinity.
enum class DominationMode { global, near_infinity };

struct DominationCertificate {
  double c = 1.0;
  double t0 = 0.0;
  DominationMode mode = DominationMode::global;
  std::vector<double> witness_grid;
};

namespace detail {

// Pointwise check plus a margin-trend test: a certificate whose margin
// log A(ct) - log B(t) shrinks across the last two decades of the window
// will eventually fail beyond the horizon and is rejected.
inline bool domination_holds(const YoungFunction& a, const YoungFunction& b, double c,
                             double t0, std::vector<double>* grid) {
  const double lo = std::max(t0, 1e-8), hi = kHorizon;
  const int n = 128;
  const double llo = std::log(lo), lhi = std::log(hi);
  std::vector<std::pair<double, double>> margins;  // (ln t, ln A(ct) - ln B(t))
  bool b_positive = false;
  for (int i = 0; i <= n; ++i) {
    const double t = std::exp(llo + (lhi - llo) * i / n);
    const double bv = b(t);
    const double av = a(c * t);
    if (bv > av) return false;
    if (bv > 0.0) b_positive = true;
    if (bv > 0.0 && std::isfinite(av) && av > 0.0) {
      margins.emplace_back(std::log(t), std::log(av) - std::log(bv));
    }
    if (grid) grid->push_back(t);
  }
  if (b_positive && margins.empty()) return false;  // no finite comparison at all
  // Trend of the margin over the last two usable decades: a certificate
  // whose margin shrinks there will eventually fail beyond the horizon.
  // "Usable" stops where A(ct) overflows; a certificate that leaves too
  // little finite data to assess is rejected rather than waved through.
  if (!margins.empty()) {
    const double x_hi = margins.back().first;
    double sx = 0, sy = 0, sxx = 0, sxy = 0, x_min = x_hi;
    int m = 0;
    for (const auto& [x, d] : margins) {
      if (x < x_hi - 2.0 * std::log(10.0)) continue;
      x_min = std::min(x_min, x);
      sx += x; sy += d; sxx += x * x; sxy += x * d;
      ++m;
    }
    if (m < 4 || x_hi - x_min < 0.8 * std::log(10.0)) return false;
    const double denom = m * sxx - sx * sx;
    if (denom > 0.0) {
      const double trend = (m * sxy - sx * sy) / denom;
      if (trend < -0.025) return false;  // margin deteriorating
    }
  }
  return true;
}

}  // namespace detail

inline std::optional<DominationCertificate> check_dominates(const YoungFunction& a,
                                                            const YoungFunction& b,
                                                            DominationMode mode) {
  std::vector<double> t0_grid;
  if (mode == DominationMode::global) {
    t0_grid = {0.0};
  } else {
    for (int k = -6; k <= 6; ++k) t0_grid.push_back(std::pow(10.0, k));
  }
  for (int k = 0; k <= 40; ++k) {
    const double c = std::pow(2.0, k);
    for (double t0 : t0_grid) {
      std::vector<double> grid;
      if (detail::domination_holds(a, b, c, t0, &grid)) {
        DominationCertificate cert;
        cert.c = c;
        cert.t0 = t0;
        cert.mode = mode;
        cert.witness_grid = std::move(grid);
        return cert;
      }
    }
  }
  return std::nullopt;
}

// --------------------------------------------------------------------------
// Phi_q: identity below 1, t^q beyond.
inline double phi_q(double q, double t) {
  if (!(q >= 1.0)) throw std::domain_error("phi_q: q must be >= 1");
  if (t < 0.0) throw std::domain_error("phi_q: negative argument");
  return t < 1.0 ? t : std::pow(t, q);
}

// --------------------------------------------------------------------------
// Least-squares log-log slope over [a, b].
inline double loglog_slope(const YoungFunction& y, double a, double b, int npts = 64) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int m = 0;
  const double la = std::log(a), lb = std::log(b);
  for (int i = 0; i <= npts; ++i) {
    const double t = std::exp(la + (lb - la) * i / npts);
    const double v = y(t);
    if (!(v > 0.0) || !std::isfinite(v)) continue;
    const double x = std::log(t), yy = std::log(v);
    sx += x; sy += yy; sxx += x * x; sxy += x * yy;
    ++m;
  }
  if (m < 2) return std::numeric_limits<double>::quiet_NaN();
  return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

// --------------------------------------------------------------------------
// Invariant diagnostics used by the ingestion layer: empty result means the
// function passed the validation grid.
inline std::vector<std::string> validate(const YoungFunction& y) {
  std::vector<std::string> issues;
  const double lo = std::max(y.splice_point() * 0.5, 1e-8);
  const double hi = 1e8;
  const int n = 256;
  double prev_v = 0.0, prev_ratio = 0.0, prev_d = 0.0;
  const double llo = std::log(lo), lhi = std::log(hi);
  for (int i = 0; i <= n; ++i) {
    const double t = std::exp(llo + (lhi - llo) * i / n);
    const double v = y(t);
    if (!std::isfinite(v)) break;
    if (v < 0.0) { issues.push_back("negative value at t=" + std::to_string(t)); break; }
    if (v + 1e-12 * std::max(1.0, prev_v) < prev_v) {
      issues.push_back("value decreases at t=" + std::to_string(t));
      break;
    }
    const double d = y.derivative(t);
    if (std::isfinite(d) && d + 1e-9 * std::max(1.0, std::abs(prev_d)) < prev_d) {
      issues.push_back("right-slope decreases at t=" + std::to_string(t) + " (not convex)");
      break;
    }
    const double ratio = v / t;
    if (i > 0 && ratio + 1e-9 * std::max(1.0, prev_ratio) < prev_ratio) {
      issues.push_back("A(t)/t decreases at t=" + std::to_string(t));
      break;
    }
    prev_v = v;
    prev_ratio = ratio;
    if (std::isfinite(d)) prev_d = d;
  }
  return issues;
}

}  // namespace orlicz
