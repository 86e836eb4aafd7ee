// End-to-end acceptance gate: nine independent criteria, one verdict line
// each, nonzero exit if any fails. Tolerances are pinned here on purpose;
// loosening them requires touching this file.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "orlicz/admissibility.hpp"
#include "orlicz/degiorgi.hpp"
#include "orlicz/minimize.hpp"
#include "orlicz/norms.hpp"
#include "orlicz/sobolev.hpp"
#include "orlicz/young.hpp"

using namespace orlicz;

namespace {

int g_failures = 0;
std::vector<std::string> g_notes;

void verdict(int idx, const std::string& name, bool ok) {
  std::printf("[%s] %d %s\n", ok ? "PASS" : "FAIL", idx, name.c_str());
  if (!ok) ++g_failures;
  for (const auto& n : g_notes) std::printf("       %s\n", n.c_str());
  g_notes.clear();
}

void note(const std::string& s) { g_notes.push_back(s); }

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

bool runtime_gate(std::chrono::steady_clock::time_point t0, double limit) {
  const double s = seconds_since(t0);
  if (s > limit) {
    note("runtime " + std::to_string(s) + " s exceeds the " + std::to_string(limit) + " s limit");
    return false;
  }
  return true;
}

std::vector<YoungFunction> basket6() {
  return {YoungFunction::power(1.5),       YoungFunction::power(2.0),
          YoungFunction::power(4.0),       YoungFunction::power_log(2.0, 1.0),
          YoungFunction::power_log(1.5, 1.0), YoungFunction::exp_poly(1.5)};
}

// --- 1: conjugation -------------------------------------------------------
bool criterion_conjugation() {
  const auto t0 = std::chrono::steady_clock::now();
  bool ok = true;

  // t^2/2 is its own conjugate
  const auto half_sq = YoungFunction::scaled(YoungFunction::power(2.0), 1.0, 0.5);
  const auto hc = conjugate(half_sq);
  for (int i = 0; i <= 200; ++i) {
    const double t = std::pow(10.0, -3.0 + 6.0 * i / 200.0);
    const double ref = 0.5 * t * t;
    if (std::abs(hc(t) - ref) > 1e-8 * std::max(1.0, ref)) {
      note("self-conjugacy off at t=" + std::to_string(t));
      ok = false;
      break;
    }
  }

  for (const auto& y : basket6()) {
    const auto conj = conjugate(y);
    const auto biconj = conjugate(conj);
    for (int i = 0; i <= 200; ++i) {
      const double t = std::pow(10.0, -3.0 + 6.0 * i / 200.0);
      // biconjugation round-trip on probes where both sup-searches stay
      // inside the tabulated window (maximizer = derivative of the inner
      // function, which must remain well below the table edge at 1e6)
      const double ref = y(t);
      if (std::isfinite(ref) && ref > 1e-300 && y.derivative(t) <= 1e5 &&
          std::abs(biconj(t) - ref) > 1e-6 * std::max(1.0, ref)) {
        note("biconjugation off at t=" + std::to_string(t));
        ok = false;
        break;
      }
      // s <= Y^{-1}(s) conj^{-1}(s) <= 2 s
      const double s = t;
      const double prod = inverse(y, s) * inverse(conj, s);
      if (!(s <= prod * (1.0 + 1e-9) && prod <= 2.0 * s * (1.0 + 1e-9))) {
        note("inverse-product sandwich off at s=" + std::to_string(s));
        ok = false;
        break;
      }
    }
    if (!ok) break;
  }
  return runtime_gate(t0, 10.0) && ok;
}

// --- 2: optimal-embedding slopes ------------------------------------------
bool criterion_slopes() {
  const auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  const std::vector<std::pair<int, double>> cases{{3, 1.5}, {3, 2.0}, {4, 2.0}, {4, 3.0}};
  for (auto [n, p] : cases) {
    const auto sc = sobolev_conjugate(YoungFunction::power(p), n);
    const double slope = loglog_slope(sc.result, 10.0, 1e4);
    const double want = n * p / (n - p);
    if (std::abs(slope - want) > 1e-3) {
      note("slope for n=" + std::to_string(n) + " p=" + std::to_string(p) + " is " +
           std::to_string(slope) + ", want " + std::to_string(want));
      ok = false;
    }
  }
  // one dimension down: n=3, p=1.5 gives exponent 6 in dimension 2
  const auto sc2 = sobolev_conjugate(YoungFunction::power(1.5), 2);
  const double slope2 = loglog_slope(sc2.result, 10.0, 1e4);
  if (std::abs(slope2 - 6.0) > 1e-3) {
    note("codimension-one slope is " + std::to_string(slope2) + ", want 6");
    ok = false;
  }
  return runtime_gate(t0, 30.0) && ok;
}

// --- 3: conjugate-pair inequalities ---------------------------------------
bool criterion_pair_inequalities() {
  bool ok = true;
  const int n = 3;
  for (const auto& raw : {YoungFunction::power(2.0), YoungFunction::power(3.0),
                          YoungFunction::power_log(2.0, 1.0)}) {
    const auto ctx = sp_context(raw, n);
    const auto& a = ctx.a_eff;
    const auto& an = ctx.a_n;
    const auto conj = conjugate(a);
    const double exponent = (n - 1.0) / n;  // 1/n'
    for (int i = 0; i <= 160; ++i) {
      const double t = std::pow(10.0, -2.0 + 8.0 * i / 160.0);
      const double lhs = 1.0 / inverse(conj, t) / inverse(an, t);
      if (!(lhs <= std::pow(t, -exponent) * (1.0 + 1e-6))) {
        note("inverse-product bound off at t=" + std::to_string(t));
        ok = false;
        break;
      }
    }
    // a finite shift c with a(t) <= a_n(k t) + c for each scale k
    for (double k : {0.25, 1.0, 4.0}) {
      double deficit = 0.0;
      for (int i = 0; i <= 400; ++i) {
        const double t = std::pow(10.0, -6.0 + 12.0 * i / 400.0);
        deficit = std::max(deficit, a(t) - an(k * t));
      }
      if (!std::isfinite(deficit)) {
        note("no finite shift for k=" + std::to_string(k));
        ok = false;
        continue;
      }
      // round up to a power of two: headroom for the denser re-probe below
      const double c = std::pow(2.0, std::ceil(std::log2(std::max(deficit, 1.0))) + 1.0);
      for (int i = 0; i <= 2000; ++i) {
        const double t = std::pow(10.0, -6.0 + 12.0 * i / 2000.0);
        if (!(a(t) <= an(k * t) + c * (1.0 + 1e-9))) {
          note("shift certificate fails at t=" + std::to_string(t));
          ok = false;
          break;
        }
      }
    }
  }
  return ok;
}

// --- 4: admissibility table -----------------------------------------------
bool criterion_admissibility_table() {
  bool ok = true;
  struct Case {
    int n;
    double p, q;
    Outcome want;
  };
  // thresholds (n-1)p/((n-1)-p); every q keeps a margin >= 0.05 (in fact 0.3+)
  std::vector<Case> cases;
  const auto add = [&](int n, double p, double thr) {
    cases.push_back({n, p, thr - 0.5, Outcome::admissible});
    cases.push_back({n, p, thr + 0.5, Outcome::not_admissible});
  };
  add(3, 1.2, 3.0);
  add(3, 1.4, 14.0 / 3.0);
  add(3, 1.5, 6.0);
  add(4, 1.5, 3.0);
  add(4, 2.0, 6.0);
  add(4, 2.5, 15.0);
  add(5, 2.0, 4.0);
  add(5, 3.0, 12.0);
  add(5, 2.5, 20.0 / 3.0);
  add(6, 2.0, 10.0 / 3.0);
  if (cases.size() != 20) {
    note("case table has " + std::to_string(cases.size()) + " rows, want 20");
    ok = false;
  }
  int wrong = 0;
  for (const auto& c : cases) {
    GrowthSpec spec{YoungFunction::power(c.p), YoungFunction::power(c.q), std::nullopt, c.n};
    const auto v = analyze(spec);
    if (v.outcome != c.want) {
      ++wrong;
      note("misclassified n=" + std::to_string(c.n) + " p=" + std::to_string(c.p) +
           " q=" + std::to_string(c.q));
    }
  }
  if (wrong != 0) ok = false;

  const auto thr = power_log_thresholds(3, 1.5, 1.0);
  if (thr.b_exponent != 6.0 || thr.b_log_exponent != 4.0) {
    note("closed-form exponents are (" + std::to_string(thr.b_exponent) + ", " +
         std::to_string(thr.b_log_exponent) + "), want (6, 4)");
    ok = false;
  }
  return ok;
}

// --- 5: hole filling -------------------------------------------------------
bool criterion_hole_filling() {
  bool ok = true;
  std::mt19937 rng(2024);
  std::uniform_real_distribution<double> uth(0.0, 0.9), ual(0.5, 3.0), uab(0.0, 3.0),
      u01(0.0, 1.0);
  int verified = 0, violations = 0;
  for (int i = 0; i < 1000; ++i) {
    const double theta = uth(rng), alpha = ual(rng), a = uab(rng), b = uab(rng);
    const double rho = 0.4 + 0.2 * u01(rng), sigma = rho + 0.2 + 0.15 * u01(rng);
    std::function<double(double)> z;
    switch (i % 3) {
      case 0: {  // bounded by b: the hypothesis holds unconditionally
        const double omega = 1.0 + 12.0 * u01(rng), phase = 6.28 * u01(rng);
        z = [=](double r) { return b * 0.5 * (1.0 + std::sin(omega * r + phase)); };
        break;
      }
      case 1: {  // pole beyond the window
        const double big_r = sigma + 0.02 + 0.3 * u01(rng), amp = 3.0 * u01(rng);
        z = [=](double r) { return amp * std::pow(big_r - r, -alpha); };
        break;
      }
      default: {  // nonnegative affine
        const double c0 = 3.0 * u01(rng), c1 = 3.0 * u01(rng);
        z = [=](double r) { return c0 + c1 * r; };
        break;
      }
    }
    const auto hf = hole_filling(z, rho, sigma, theta, a, b, alpha);
    if (!hf.hypothesis_verified) continue;
    ++verified;
    if (!hf.conclusion_verified) {
      ++violations;
      note("conclusion fails for instance " + std::to_string(i));
    }
  }
  if (verified < 300) {
    note("only " + std::to_string(verified) + " of 1000 instances satisfied the hypothesis");
    ok = false;
  }
  if (violations != 0) ok = false;
  return ok;
}

// --- 6: iteration decay -----------------------------------------------------
bool criterion_iteration_decay() {
  bool ok = true;
  int idx = 0, violations = 0;
  for (int n : {2, 3, 4, 5, 6}) {
    for (double q : {1.5, 2.0, 4.0, 8.0, 16.0}) {
      for (double big_l : {1.0, 32.0}) {
        const double c2 = 1.0 + idx % 7;
        ++idx;
        const auto shell = iterate(1.0, n, q, big_l, c2, 1.0, 1);  // constants only
        const auto t = iterate(shell.eps0, n, q, big_l, c2, 1.0, 60);
        if (t.verdict != IterationTrace::Verdict::decayed) ++violations;
        for (std::size_t l = 0; l < t.log_j.size(); ++l) {
          const double bound = l * t.log_tau + t.log_j[0];
          if (t.log_j[l] > bound + 1e-8 * (1.0 + std::abs(bound))) {
            ++violations;
            break;
          }
        }
      }
    }
  }
  if (idx != 50) {
    note("sweep visited " + std::to_string(idx) + " points, want 50");
    ok = false;
  }
  if (violations != 0) {
    note(std::to_string(violations) + " decay violations");
    ok = false;
  }
  return ok;
}

// --- shared radial seed basket ---------------------------------------------
double rad(const Point& x) { return std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]); }

std::vector<SampledFunction> radial_basket(int shells) {
  std::vector<SampledFunction> seeds;
  std::mt19937 rng(7);
  for (int n : {2, 3}) {
    const int az = n == 2 ? 64 : 16;
    const GradFn cone_grad = [](const Point& x) -> Point {
      const double r = rad(x);
      if (r == 0.0) return {0, 0, 0};
      return {x[0] / r, x[1] / r, x[2] / r};
    };
    seeds.push_back(SampledFunction::radial(n, 1.0, shells, az, rad, &cone_grad));
    seeds.push_back(
        SampledFunction::radial(n, 1.0, shells, az, [](const Point& x) { return 1.0 + x[0]; }));
    seeds.push_back(SampledFunction::radial(
        n, 1.0, shells, az, [](const Point& x) { return std::exp(-4.0 * rad(x) * rad(x)); }));
    std::uniform_real_distribution<double> dist(-1, 1);
    for (int s = 0; s < 3; ++s) {
      const double a0 = dist(rng), a1 = dist(rng), a2 = dist(rng), a3 = dist(rng);
      seeds.push_back(SampledFunction::radial(n, 1.0, shells, az, [=](const Point& x) {
        return a0 + a1 * x[0] + a2 * x[1] + a3 * std::sin(3 * x[0] + 2 * x[1]);
      }));
    }
  }
  return seeds;  // 12 seeds, 6 per dimension
}

// --- 7: optimized cutoff ----------------------------------------------------
bool criterion_cutoff() {
  bool ok = true;
  const auto a = YoungFunction::power(2.0);
  auto seeds = radial_basket(512);
  seeds.resize(10);
  const double rho = 0.5, sigma = 0.75;
  int good = 0;
  for (const auto& u : seeds) {
    const auto sub = optimized_cutoff(u, a, a, rho, sigma, 3.0, Regime::subcritical);
    const auto sup =
        optimized_cutoff(u, a, a, rho, sigma, u.dim + 1.0, Regime::supercritical);
    bool this_ok = true;
    for (const auto* r : {&sub, &sup}) {
      if (!(r->u_measure >= 0.5 * (sigma - rho) * (1.0 - 1e-9))) this_ok = false;
      if (!(r->grad_eta_max <= 2.0 / (sigma - rho) * (1.0 + 1e-12))) this_ok = false;
      if (!(r->lhs <= r->bound * (1.0 + 1e-6))) this_ok = false;
    }
    if (this_ok) ++good;
  }
  if (good != 10) {
    note("cutoff contract held on " + std::to_string(good) + "/10 seeds");
    ok = false;
  }
  return ok;
}

// --- 8: variational harness -------------------------------------------------
bool criterion_harness() {
  const auto t0 = std::chrono::steady_clock::now();
  bool ok = true;

  FunctionalSpec spec;
  spec.a = YoungFunction::power(2.0);
  spec.b = YoungFunction::power(2.0);
  spec.boundary = [](const Point& x) { return x[0]; };
  const auto p = discretize(spec, 2, 10);
  const auto res = minimize(p, 1e-16, 100000);
  double worst = 0.0;
  for (int j = 0; j < p.nodes_axis; ++j) {
    for (int i = 0; i < p.nodes_axis; ++i) {
      worst = std::max(worst, std::abs(res.nodal[p.node(i, j, 0)] - i * p.h));
    }
  }
  if (!(res.converged && worst <= 1e-6)) {
    note("linear interpolant error " + std::to_string(worst));
    ok = false;
  }

  const auto qm = check_quasi_minimality(p, res.nodal, 100, 1.0 + 1e-6, 42);
  if (qm.trials != 100 || qm.violations != 0) {
    note("quasi-minimality violations: " + std::to_string(qm.violations));
    ok = false;
  }

  const auto rows = boundedness_sweep(2, {2.0}, {2.0}, {8, 16, 32}, 1e-14, 100000);
  if (rows.size() != 3) {
    note("sweep produced " + std::to_string(rows.size()) + " rows");
    ok = false;
  } else {
    const double base = rows[0].interior_sup;
    for (const auto& r : rows) {
      if (!r.converged || r.verdict != "admissible" ||
          std::abs(r.interior_sup - base) > 0.05 * std::max(base, 1e-12)) {
        note("sweep row (refinement " + std::to_string(r.refinement) + ") unstable");
        ok = false;
      }
    }
  }
  return runtime_gate(t0, 300.0) && ok;
}

// --- 9: modular embedding inequality ---------------------------------------
bool criterion_modular_embedding() {
  bool ok = true;
  const auto a = YoungFunction::power(2.0);
  nlohmann::json cert;
  cert["A"] = "power:2";
  const auto seeds = radial_basket(64);
  for (int n : {2, 3}) {
    std::vector<SampledFunction> dim_seeds;
    for (const auto& u : seeds) {
      if (u.dim == n) dim_seeds.push_back(u);
    }
    double kappa = 0.0;
    try {
      kappa = sobolev_poincare_kappa_search(dim_seeds, a, n);
    } catch (const std::exception& e) {
      note(std::string("kappa search failed for n=") + std::to_string(n) + ": " + e.what());
      ok = false;
      continue;
    }
    const auto ctx = sp_context(a, n);
    for (const auto& u : dim_seeds) {
      const double g = modular(ctx.a_eff, u, true);
      if (!(g > 0.0)) continue;
      if (sobolev_poincare_defect(u, a, n, kappa, &ctx) < -1e-6 * g) {
        note("defect negative beyond tolerance for a seed with n=" + std::to_string(n));
        ok = false;
      }
    }
    cert["kappa"][std::to_string(n)] = kappa;
    cert["seeds"][std::to_string(n)] = dim_seeds.size();
  }
  std::ofstream out("sp_kappa_certificate.json");
  out << cert.dump(2) << "\n";
  if (!out) {
    note("could not write sp_kappa_certificate.json");
    ok = false;
  }
  return ok;
}

}  // namespace

int main() {
  verdict(1, "conjugation suite", criterion_conjugation());
  verdict(2, "optimal-embedding slopes", criterion_slopes());
  verdict(3, "conjugate-pair inequalities", criterion_pair_inequalities());
  verdict(4, "admissibility table", criterion_admissibility_table());
  verdict(5, "hole-filling oracle", criterion_hole_filling());
  verdict(6, "iteration decay sweep", criterion_iteration_decay());
  verdict(7, "optimized cutoff", criterion_cutoff());
  verdict(8, "variational harness", criterion_harness());
  verdict(9, "modular embedding inequality", criterion_modular_embedding());
  if (g_failures != 0) {
    std::printf("%d criterion(s) failed\n", g_failures);
    return 1;
  }
  std::printf("all criteria passed\n");
  return 0;
}
