#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "orlicz/sobolev.hpp"
#include "orlicz/young.hpp"

namespace orlicz {

enum class Regime { subcritical, supercritical };
enum class Outcome { admissible, not_admissible, boundary, trivially_bounded };

// Problem instance: two-sided gradient growth envelope (A below, B above),
// optional zero-order envelope E, dimension and structure constants.
struct GrowthSpec {
  YoungFunction a;
  YoungFunction b;
  std::optional<YoungFunction> e;
  int n = 3;
  double big_l = 1.0;
  double t0 = 0.0;
  double big_q = 1.0;
};

struct Verdict {
  Outcome outcome = Outcome::not_admissible;
  Regime regime = Regime::subcritical;
  bool admissible = false;
  std::optional<DominationCertificate> b_check;
  std::optional<DominationCertificate> e_check;
  // diagnostics
  IntegralProfile tail_profile;                  // exponent 1/(n-1), the boundedness gate
  std::optional<IntegralProfile> regime_profile; // exponent 1/(n-2), n >= 3
  Delta2Index b_delta2;
  std::optional<Delta2Index> e_delta2;
  double b_slope = 0.0, b_target_slope = 0.0;
  double e_slope = 0.0, e_target_slope = 0.0;
  std::vector<double> failed_probes;
  std::string note;
};

// Width of the inconclusive band around the sharp exponent: domination at
// the exact threshold depends on constants a finite horizon cannot settle.
inline constexpr double kBoundaryBand = 0.045;

inline Regime classify_regime(const YoungFunction& a, int n) {
  if (n < 2) throw std::domain_error("classify_regime: n must be >= 2");
  if (n == 2) return Regime::supercritical;
  if (integral_profile(a, 1.0 / (n - 1)).at_infinity == Convergence::converges) {
    throw std::runtime_error(
        "classify_regime: the 1/(n-1) tail integral converges, so every quasi-minimizer "
        "is trivially bounded; no regime classification applies");
  }
  const auto prof = integral_profile(a, 1.0 / (n - 2));
  return prof.at_infinity == Convergence::diverges ? Regime::subcritical
                                                   : Regime::supercritical;
}

namespace detail {

// Sobolev conjugate with the near-zero splice applied automatically when
// the transform integral needs it; the splice changes nothing near
// infinity, which is where admissibility is decided.
inline YoungFunction conjugate_target(const YoungFunction& a, int dim) {
  if (integral_profile(a, 1.0 / (dim - 1)).at_zero == Convergence::converges)
    return sobolev_conjugate(a, dim).result;
  return sobolev_conjugate(regularize_near_zero(a, dim), dim).result;
}

struct EnvelopeCheck {
  Outcome outcome;
  std::optional<DominationCertificate> cert;
  double slope = 0.0, target_slope = 0.0;
  std::vector<double> failed_probes;
};

// Decide one envelope condition (B vs A_{n-1} or E vs A_n) with the
// boundary band around matching asymptotic slopes.
inline EnvelopeCheck check_envelope(const YoungFunction& target, const YoungFunction& env) {
  EnvelopeCheck out{Outcome::not_admissible, std::nullopt};
  out.slope = loglog_slope(env, 1e4, 1e8);
  out.target_slope = loglog_slope(target, 1e4, 1e8);
  auto cert = check_dominates(target, env, DominationMode::near_infinity);
  if (cert) {
    out.outcome = Outcome::admissible;
    out.cert = std::move(cert);
  } else if (std::isfinite(out.slope) && std::isfinite(out.target_slope) &&
             out.target_slope <= 60.0 &&
             std::abs(out.slope - out.target_slope) <= kBoundaryBand) {
    // no certificate, but the exponents are too close for the finite
    // horizon to settle the question
    out.outcome = Outcome::boundary;
  } else {
    out.outcome = Outcome::not_admissible;
    // record a witness probe: either a pointwise failure under the largest
    // scale, or the horizon when only the margin trend rejects
    const double c = std::pow(2.0, 40);
    for (int i = 0; i <= 64; ++i) {
      const double t = std::pow(10.0, i / 8.0);
      if (env(t) > target(c * t)) { out.failed_probes.push_back(t); break; }
    }
    if (out.failed_probes.empty()) out.failed_probes.push_back(kHorizon);
  }
  return out;
}

}  // namespace detail

inline Verdict analyze(const GrowthSpec& spec) {
  if (spec.n < 2) throw std::domain_error("analyze: n must be >= 2");
  Verdict v;
  v.tail_profile = integral_profile(spec.a, 1.0 / (spec.n - 1));
  if (spec.n >= 3 && v.tail_profile.at_infinity == Convergence::converges) {
    v.outcome = Outcome::trivially_bounded;
    v.note = "the 1/(n-1) tail integral converges: every quasi-minimizer is locally "
             "bounded regardless of B and E";
    return v;
  }

  v.regime = spec.n == 2 ? Regime::supercritical : Regime::subcritical;
  if (spec.n >= 3) {
    v.regime_profile = integral_profile(spec.a, 1.0 / (spec.n - 2));
    v.regime = v.regime_profile->at_infinity == Convergence::diverges
                   ? Regime::subcritical
                   : Regime::supercritical;
  }

  v.b_delta2 = delta2_index(spec.b, spec.t0);
  if (v.b_delta2.infinite) {
    v.outcome = Outcome::not_admissible;
    v.note = "B violates the doubling condition near infinity";
    return v;
  }

  bool boundary = false;
  if (v.regime == Regime::subcritical) {
    const auto target = detail::conjugate_target(spec.a, spec.n - 1);
    auto bc = detail::check_envelope(target, spec.b);
    v.b_slope = bc.slope;
    v.b_target_slope = bc.target_slope;
    v.b_check = bc.cert;
    v.failed_probes = bc.failed_probes;
    if (bc.outcome == Outcome::not_admissible) {
      v.outcome = Outcome::not_admissible;
      v.note = "B is not dominated by the (n-1)-dimensional conjugate of A near infinity";
      return v;
    }
    boundary = boundary || bc.outcome == Outcome::boundary;
  }

  if (spec.e) {
    v.e_delta2 = delta2_index(*spec.e, spec.t0);
    if (v.e_delta2->infinite) {
      v.outcome = Outcome::not_admissible;
      v.note = "E violates the doubling condition near infinity";
      return v;
    }
    const auto target_n = detail::conjugate_target(spec.a, spec.n);
    auto ec = detail::check_envelope(target_n, *spec.e);
    v.e_slope = ec.slope;
    v.e_target_slope = ec.target_slope;
    v.e_check = ec.cert;
    if (ec.outcome == Outcome::not_admissible) {
      v.outcome = Outcome::not_admissible;
      v.failed_probes = ec.failed_probes;
      v.note = "E is not dominated by the n-dimensional conjugate of A near infinity";
      return v;
    }
    boundary = boundary || ec.outcome == Outcome::boundary;
  }

  if (boundary) {
    v.outcome = Outcome::boundary;
    v.note = "an envelope sits within the inconclusive band around the sharp exponent";
    return v;
  }
  v.outcome = Outcome::admissible;
  v.admissible = true;
  return v;
}

// Closed-form sharp exponents for A(t) = t^p (log t)^alpha near infinity.
struct PowerLogThresholds {
  double b_exponent = 0.0;
  double b_log_exponent = 0.0;
  double e_exponent = 0.0;
  double e_log_exponent = 0.0;
  bool any_b = false;  // every Young function B is admissible
  Regime regime = Regime::subcritical;
};

inline PowerLogThresholds power_log_thresholds(int n, double p, double alpha) {
  if (n < 2) throw std::domain_error("power_log_thresholds: n must be >= 2");
  const bool valid = (p > 1.0 && p < n) || (p == 1.0 && alpha >= 0.0) ||
                     (p == static_cast<double>(n) && alpha <= n - 1.0);
  if (!valid) {
    if (p == 1.0)
      throw std::domain_error("power_log_thresholds: p = 1 requires alpha >= 0");
    if (p == static_cast<double>(n))
      throw std::domain_error("power_log_thresholds: p = n requires alpha <= n - 1");
    throw std::domain_error("power_log_thresholds: need 1 <= p <= n");
  }
  PowerLogThresholds out;
  const double inf = std::numeric_limits<double>::infinity();
  out.any_b = (n == 2) || (p >= n - 1.0);
  out.regime = out.any_b && n == 2 ? Regime::supercritical
             : p > n - 1.0         ? Regime::supercritical
                                   : Regime::subcritical;
  if (p < n - 1.0) {
    out.b_exponent = (n - 1.0) * p / ((n - 1.0) - p);
    out.b_log_exponent = (n - 1.0) * alpha / ((n - 1.0) - p);
  } else {
    out.b_exponent = inf;
    out.b_log_exponent = inf;
  }
  if (p < n) {
    out.e_exponent = n * p / (n - p);
    out.e_log_exponent = n * alpha / (n - p);
  } else {
    out.e_exponent = inf;
    out.e_log_exponent = inf;
  }
  return out;
}

}  // namespace orlicz
