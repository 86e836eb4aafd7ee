#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "orlicz/minimize.hpp"

using namespace orlicz;

namespace {

FunctionalSpec dirichlet_spec(double p, const FieldFn& g) {
  FunctionalSpec s;
  s.a = YoungFunction::power(p);
  s.b = YoungFunction::power(p);
  s.boundary = g;
  return s;
}

}  // namespace

TEST_CASE("discretize basics") {
  auto spec = dirichlet_spec(2.0, [](const Point&) { return 0.0; });
  const auto p = discretize(spec, 2, 8);
  CHECK(p.u.size() == 81);
  // zero field with zero boundary has zero energy
  CHECK(energy(p, p.u) == 0.0);
  CHECK_THROWS_AS(discretize(spec, 2, 4), std::domain_error);

  auto bad = spec;
  bad.theta = [](const Point&) { return 1.5; };
  CHECK_THROWS_AS(discretize(bad, 2, 8), std::domain_error);

  auto nan_bc = spec;
  nan_bc.boundary = [](const Point&) { return std::nan(""); };
  CHECK_THROWS_AS(discretize(nan_bc, 2, 8), std::domain_error);
}

TEST_CASE("Dirichlet energy with zero boundary minimizes to zero") {
  auto spec = dirichlet_spec(2.0, [](const Point&) { return 0.0; });
  auto p = discretize(spec, 2, 12);
  // start away from the minimizer
  for (std::size_t i = 0; i < p.u.size(); ++i) {
    if (!p.fixed[i]) p.u[i] = 1.0;
  }
  const auto res = minimize(p, 1e-14, 50000);
  CHECK(res.converged);
  CHECK(res.energy_trace.back() < 1e-12);
  for (double v : res.nodal) CHECK(std::abs(v) < 1e-6);
}

TEST_CASE("linear boundary data reproduces the linear interpolant") {
  auto spec = dirichlet_spec(2.0, [](const Point& x) { return x[0]; });
  auto p = discretize(spec, 2, 10);
  const auto res = minimize(p, 1e-16, 100000);
  CHECK(res.converged);
  const int na = p.nodes_axis;
  for (int j = 0; j < na; ++j) {
    for (int i = 0; i < na; ++i) {
      CHECK(std::abs(res.nodal[p.node(i, j, 0)] - i * p.h) < 1e-8);
    }
  }
}

TEST_CASE("energy trace is monotone under descent") {
  auto spec = dirichlet_spec(4.0, [](const Point& x) { return x[0]; });
  auto p = discretize(spec, 2, 10);
  for (std::size_t i = 0; i < p.u.size(); ++i) {
    if (!p.fixed[i]) p.u[i] = 0.3;  // off the minimizer
  }
  const auto res = minimize(p, 1e-12, 5000);
  for (std::size_t i = 1; i < res.energy_trace.size(); ++i) {
    CHECK(res.energy_trace[i] <= res.energy_trace[i - 1] * (1.0 + 1e-14) + 1e-300);
  }
}

TEST_CASE("quasi-minimality against random compact perturbations") {
  auto spec = dirichlet_spec(2.0, [](const Point& x) { return x[0]; });
  auto p = discretize(spec, 2, 10);
  const auto res = minimize(p, 1e-16, 100000);
  const auto rep = check_quasi_minimality(p, res.nodal, 100, 1.0 + 1e-6, 42);
  CHECK(rep.trials == 100);
  CHECK(rep.violations == 0);
  CHECK(rep.worst_ratio <= 1.0 + 1e-6);
}

TEST_CASE("discrete energy is convex in the unknowns") {
  FunctionalSpec spec;
  spec.a = YoungFunction::power(1.5);
  spec.b = YoungFunction::power(4.0);
  spec.e = YoungFunction::power(2.0);
  spec.e_coef = 0.25;
  spec.theta = [](const Point& x) { return x[0] < 0.5 ? 1.0 : 0.0; };
  const auto p = discretize(spec, 2, 8);
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> dist(-1, 1), lam(0.05, 0.95);
  for (int t = 0; t < 40; ++t) {
    std::vector<double> u(p.u.size()), v(p.u.size()), w(p.u.size());
    const double l = lam(rng);
    for (std::size_t i = 0; i < u.size(); ++i) {
      u[i] = dist(rng);
      v[i] = dist(rng);
      w[i] = l * u[i] + (1.0 - l) * v[i];
    }
    CHECK(energy(p, w) <= l * energy(p, u) + (1.0 - l) * energy(p, v) + 1e-9);
  }
}

TEST_CASE("nodal integrand respects the two-sided growth envelope") {
  FunctionalSpec spec;
  spec.a = YoungFunction::power(1.5);
  spec.b = YoungFunction::power(4.0);
  spec.e = YoungFunction::power(2.0);
  spec.e_coef = 1.0;
  spec.theta = [](const Point& x) { return 0.5 + 0.5 * std::sin(7 * x[0] + 3 * x[1]); };
  const auto p = discretize(spec, 2, 8);
  const double big_l = 1.0;
  std::mt19937 rng(9);
  std::uniform_real_distribution<double> dist(-2, 2);
  for (int t = 0; t < 20; ++t) {
    std::uniform_real_distribution<double> th01(0, 1);
    const double xi = std::abs(dist(rng)), tv = dist(rng), th = th01(rng);
    const double f = th * spec.a(xi) + (1.0 - th) * spec.b(xi) +
                     spec.e_coef * (*spec.e)(std::abs(tv));
    const double ev = (*spec.e)(std::abs(tv));
    CHECK(spec.a(xi) - ev - big_l <= f + 1e-12);
    CHECK(f <= spec.b(xi) + ev + big_l + 1e-12);
  }
}

TEST_CASE("sweep: harmonic row is refinement-stable and labeled admissible") {
  const auto rows = boundedness_sweep(2, {2.0}, {2.0}, {8, 16, 32}, 1e-14, 100000);
  REQUIRE(rows.size() == 3);
  for (const auto& r : rows) {
    CHECK(r.converged);
    CHECK(r.verdict == "admissible");
  }
  const double base = rows[0].interior_sup;
  for (const auto& r : rows) {
    CHECK(std::abs(r.interior_sup - base) <= 0.05 * std::max(base, 1e-12));
  }
  // discrete maximum principle: the interior stays below the boundary peak
  for (const auto& r : rows) CHECK(r.interior_sup <= 1.0 + 1e-9);
}

TEST_CASE("sweep: matched growth is always admissible") {
  const auto rows = boundedness_sweep(2, {1.5, 2.0, 3.0}, {1.5, 2.0, 3.0}, {8}, 1e-10, 5000);
  int diagonal = 0;
  for (const auto& r : rows) {
    if (r.p == r.q) {
      CHECK(r.verdict == "admissible");
      ++diagonal;
    }
  }
  CHECK(diagonal == 3);
}

TEST_CASE("sweep: Example-1 rows carry the sharp-threshold verdicts") {
  const auto rows = boundedness_sweep(3, {1.5}, {6.0, 7.0}, {8}, 1e-9, 3000);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].q == 6.0);
  CHECK(rows[0].verdict == "admissible");
  CHECK(rows[1].q == 7.0);
  CHECK(rows[1].verdict == "not_admissible");
}
