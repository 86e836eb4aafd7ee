#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "orlicz/admissibility.hpp"
#include "orlicz/grid.hpp"
#include "orlicz/young.hpp"

namespace orlicz {

// --------------------------------------------------------------------------
// Mixed-growth integrand f(x, t, xi) = theta(x) A(|xi|) + (1 - theta(x))
// B(|xi|) + e_coef E(|t|) on the unit box, with Dirichlet boundary data.
struct FunctionalSpec {
  enum class Structure { jointly_convex, convex_in_gradient_with_monotone_e };

  YoungFunction a;
  YoungFunction b;
  std::optional<YoungFunction> e;
  double e_coef = 0.0;
  FieldFn theta = [](const Point&) { return 1.0; };
  FieldFn boundary = [](const Point&) { return 0.0; };
  Structure structure = Structure::jointly_convex;
};

// Nodal unknowns on the corners of an m^dim cell grid over [0,1]^dim;
// boundary nodes carry the Dirichlet data and stay fixed.
struct DiscreteProblem {
  FunctionalSpec spec;
  int dim = 2;
  int cells = 8;   // per axis
  double h = 0.0;  // cell edge
  double cell_volume = 0.0;
  int nodes_axis = 0;  // cells + 1

  std::vector<double> u;           // nodal values, boundary entries fixed
  std::vector<char> fixed;
  std::vector<double> theta_cell;  // theta at cell centers

  std::size_t node(int i, int j, int k) const {
    return (static_cast<std::size_t>(k) * nodes_axis + j) * nodes_axis + i;
  }
  std::size_t cell(int i, int j, int k) const {
    return (static_cast<std::size_t>(k) * cells + j) * cells + i;
  }
  Point node_coord(int i, int j, int k) const {
    return {i * h, dim >= 2 ? j * h : 0.0, dim >= 3 ? k * h : 0.0};
  }
};

inline DiscreteProblem discretize(const FunctionalSpec& spec, int dim, int cells) {
  if (dim < 1 || dim > 3) throw std::domain_error("discretize: dim must be 1, 2 or 3");
  if (cells < 8) throw std::domain_error("discretize: need at least 8 cells per axis");
  DiscreteProblem p;
  p.spec = spec;
  p.dim = dim;
  p.cells = cells;
  p.h = 1.0 / cells;
  p.cell_volume = std::pow(p.h, dim);
  p.nodes_axis = cells + 1;

  const int nx = p.nodes_axis, ny = dim >= 2 ? p.nodes_axis : 1, nz = dim >= 3 ? p.nodes_axis : 1;
  p.u.assign(static_cast<std::size_t>(nx) * ny * nz, 0.0);
  p.fixed.assign(p.u.size(), 0);
  for (int k = 0; k < nz; ++k) {
    for (int j = 0; j < ny; ++j) {
      for (int i = 0; i < nx; ++i) {
        const bool on_boundary = i == 0 || i == cells || (dim >= 2 && (j == 0 || j == cells)) ||
                                 (dim >= 3 && (k == 0 || k == cells));
        if (!on_boundary) continue;
        const double g = spec.boundary(p.node_coord(i, j, k));
        if (!std::isfinite(g)) throw std::domain_error("discretize: boundary data not finite");
        p.u[p.node(i, j, k)] = g;
        p.fixed[p.node(i, j, k)] = 1;
      }
    }
  }

  const int cx = cells, cy = dim >= 2 ? cells : 1, cz = dim >= 3 ? cells : 1;
  p.theta_cell.assign(static_cast<std::size_t>(cx) * cy * cz, 1.0);
  for (int k = 0; k < cz; ++k) {
    for (int j = 0; j < cy; ++j) {
      for (int i = 0; i < cx; ++i) {
        const Point c{(i + 0.5) * p.h, dim >= 2 ? (j + 0.5) * p.h : 0.0,
                      dim >= 3 ? (k + 0.5) * p.h : 0.0};
        const double th = spec.theta(c);
        if (!(th >= 0.0 && th <= 1.0))
          throw std::domain_error("discretize: theta must take values in [0, 1]");
        p.theta_cell[p.cell(i, j, k)] = th;
      }
    }
  }
  return p;
}

namespace detail {

// Iterate all cells, handing the callback the lower-corner node index, the
// forward-difference gradient, the corner value, and theta there.
template <class F>
void for_cells(const DiscreteProblem& p, const std::vector<double>& u, F&& f) {
  const int cx = p.cells, cy = p.dim >= 2 ? p.cells : 1, cz = p.dim >= 3 ? p.cells : 1;
  for (int k = 0; k < cz; ++k) {
    for (int j = 0; j < cy; ++j) {
      for (int i = 0; i < cx; ++i) {
        const std::size_t c = p.node(i, j, k);
        Point xi{0, 0, 0};
        std::size_t fwd[3] = {c, c, c};
        fwd[0] = p.node(i + 1, j, k);
        if (p.dim >= 2) fwd[1] = p.node(i, j + 1, k);
        if (p.dim >= 3) fwd[2] = p.node(i, j, k + 1);
        for (int axis = 0; axis < p.dim; ++axis) xi[axis] = (u[fwd[axis]] - u[c]) / p.h;
        f(i, j, k, c, fwd, xi, u[c], p.theta_cell[p.cell(i, j, k)]);
      }
    }
  }
}

inline double norm3(const Point& v) {
  return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
}

}  // namespace detail

inline double energy(const DiscreteProblem& p, const std::vector<double>& u) {
  double total = 0.0;
  detail::for_cells(p, u, [&](int, int, int, std::size_t, const std::size_t*, const Point& xi,
                              double t, double th) {
    const double w = detail::norm3(xi);
    double val = th * p.spec.a(w) + (1.0 - th) * p.spec.b(w);
    if (p.spec.e && p.spec.e_coef != 0.0) val += p.spec.e_coef * (*p.spec.e)(std::abs(t));
    total += val * p.cell_volume;
  });
  return total;
}

inline std::vector<double> energy_gradient(const DiscreteProblem& p,
                                           const std::vector<double>& u) {
  std::vector<double> g(u.size(), 0.0);
  detail::for_cells(p, u, [&](int, int, int, std::size_t c, const std::size_t* fwd,
                              const Point& xi, double t, double th) {
    const double w = detail::norm3(xi);
    if (w > 0.0) {
      // subgradient at the kink w = 0 is taken as 0 (forward-difference choice)
      const double s =
          (th * p.spec.a.derivative(w) + (1.0 - th) * p.spec.b.derivative(w)) / w;
      for (int axis = 0; axis < p.dim; ++axis) {
        const double d = s * xi[axis] / p.h * p.cell_volume;
        g[fwd[axis]] += d;
        g[c] -= d;
      }
    }
    if (p.spec.e && p.spec.e_coef != 0.0 && t != 0.0) {
      g[c] += p.spec.e_coef * p.spec.e->derivative(std::abs(t)) * (t > 0 ? 1.0 : -1.0) *
              p.cell_volume;
    }
  });
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (p.fixed[i]) g[i] = 0.0;
  }
  return g;
}

struct MinimizeResult {
  std::vector<double> nodal;       // full nodal field including boundary
  SampledFunction u;               // cell-centered view with cell gradients
  std::vector<double> energy_trace;
  bool converged = false;
  int iterations = 0;
};

namespace detail {

inline SampledFunction cell_view(const DiscreteProblem& p, const std::vector<double>& u) {
  SampledFunction out = SampledFunction::cartesian(p.dim, {0, 0, 0}, {1, 1, 1}, p.cells,
                                                   [](const Point&) { return 0.0; });
  const int cy = p.dim >= 2 ? p.cells : 1, cz = p.dim >= 3 ? p.cells : 1;
  for (int k = 0; k < cz; ++k) {
    for (int j = 0; j < cy; ++j) {
      for (int i = 0; i < p.cells; ++i) {
        // corner average for the value, forward difference for the gradient
        double sum = 0.0;
        int cnt = 0;
        for (int dk = 0; dk <= (p.dim >= 3 ? 1 : 0); ++dk) {
          for (int dj = 0; dj <= (p.dim >= 2 ? 1 : 0); ++dj) {
            for (int di = 0; di <= 1; ++di) {
              sum += u[p.node(i + di, j + dj, k + dk)];
              ++cnt;
            }
          }
        }
        const std::size_t c = p.node(i, j, k);
        Point xi{0, 0, 0};
        xi[0] = (u[p.node(i + 1, j, k)] - u[c]) / p.h;
        if (p.dim >= 2) xi[1] = (u[p.node(i, j + 1, k)] - u[c]) / p.h;
        if (p.dim >= 3) xi[2] = (u[p.node(i, j, k + 1)] - u[c]) / p.h;
        const std::size_t cell = p.cell(i, j, k);
        out.values[cell] = sum / cnt;
        out.gradients[cell] = xi;
      }
    }
  }
  return out;
}

}  // namespace detail

// Monotone accelerated descent with backtracking; stops once the relative
// energy decrease over a 50-iteration window falls below tol.
inline MinimizeResult minimize(const DiscreteProblem& p, double tol = 1e-10,
                               int max_iters = 20000) {
  std::vector<double> x = p.u, y = p.u;
  double ex = energy(p, x);
  double step = 1.0;
  double momentum = 1.0;
  MinimizeResult out;
  out.energy_trace.push_back(ex);

  for (int it = 0; it < max_iters; ++it) {
    const auto g = energy_gradient(p, y);
    double gnorm2 = 0.0;
    for (double v : g) gnorm2 += v * v;
    if (gnorm2 == 0.0) {
      out.converged = true;
      out.iterations = it;
      break;
    }
    // backtracking: sufficient decrease from the extrapolated point
    const double ey = energy(p, y);
    std::vector<double> xn(x.size());
    double en = 0.0;
    for (int bt = 0; bt < 60; ++bt) {
      for (std::size_t i = 0; i < x.size(); ++i) xn[i] = y[i] - step * g[i];
      en = energy(p, xn);
      if (en <= ey - 0.5 * step * gnorm2) break;
      step *= 0.5;
    }
    if (en > ex) {
      // monotone restart: drop the momentum and descend from the incumbent
      momentum = 1.0;
      y = x;
      continue;
    }
    const double next_momentum = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * momentum * momentum));
    const double mix = (momentum - 1.0) / next_momentum;
    for (std::size_t i = 0; i < x.size(); ++i) {
      y[i] = xn[i] + mix * (xn[i] - x[i]);
      if (p.fixed[i]) y[i] = p.u[i];
    }
    momentum = next_momentum;
    x.swap(xn);
    ex = en;
    out.energy_trace.push_back(ex);
    step *= 1.25;  // let the step recover after conservative backtracks

    const std::size_t w = out.energy_trace.size();
    if (w > 50) {
      const double drop = out.energy_trace[w - 51] - out.energy_trace[w - 1];
      if (drop < tol * std::max(std::abs(out.energy_trace[w - 1]), 1.0)) {
        out.converged = true;
        out.iterations = it + 1;
        break;
      }
    }
    out.iterations = it + 1;
  }
  if (out.converged) {
    // Polish below the energy resolution: once energy differences sink into
    // round-off the field can still be refined by driving the gradient norm
    // down with plain descent steps.
    // the energy-phase step may have collapsed below the resolution at
    // which x - step * g differs from x at all; restart from unit scale
    double gstep = 1.0;
    auto g = energy_gradient(p, x);
    double gn = 0.0;
    for (double v : g) gn += v * v;
    std::vector<double> trial(x.size());
    // shrink the (possibly very aggressive) final step until it descends
    for (int bt = 0; bt < 200 && gstep > 1e-18; ++bt) {
      for (std::size_t i = 0; i < x.size(); ++i) trial[i] = x[i] - gstep * g[i];
      auto gt = energy_gradient(p, trial);
      double gtn = 0.0;
      for (double v : gt) gtn += v * v;
      if (gtn < gn) break;
      gstep *= 0.5;
    }
    double gn_checkpoint = gn;
    for (int it = 0; it < 8000 && gn > 1e-30 && gstep > 1e-18; ++it) {
      if (it % 500 == 499) {
        if (gn > 0.9 * gn_checkpoint) break;  // no meaningful progress left
        gn_checkpoint = gn;
      }
      for (std::size_t i = 0; i < x.size(); ++i) trial[i] = x[i] - gstep * g[i];
      auto gt = energy_gradient(p, trial);
      double gtn = 0.0;
      for (double v : gt) gtn += v * v;
      if (gtn < gn) {
        x.swap(trial);
        g.swap(gt);
        gn = gtn;
        gstep *= 1.1;
      } else {
        gstep *= 0.5;
      }
    }
  }
  out.nodal = std::move(x);
  out.u = detail::cell_view(p, out.nodal);
  return out;
}

// --------------------------------------------------------------------------
// Quasi-minimality probe: F(u, supp phi) <= Q F(u + phi, supp phi) for
// random compactly supported bumps phi.
struct QuasiMinReport {
  int trials = 0;
  int violations = 0;
  double worst_ratio = 0.0;  // max F(u, S) / F(u + phi, S)
};

inline QuasiMinReport check_quasi_minimality(const DiscreteProblem& p,
                                             const std::vector<double>& u, int trials,
                                             double big_q, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> pos(0.2, 0.8), rad(0.1, 0.3), amp(-0.5, 0.5);
  QuasiMinReport rep;
  rep.trials = trials;
  const int ny = p.dim >= 2 ? p.nodes_axis : 1, nz = p.dim >= 3 ? p.nodes_axis : 1;
  for (int t = 0; t < trials; ++t) {
    const Point c{pos(rng), p.dim >= 2 ? pos(rng) : 0.0, p.dim >= 3 ? pos(rng) : 0.0};
    const double r = rad(rng), a = amp(rng);
    std::vector<double> phi(u.size(), 0.0);
    for (int k = 0; k < nz; ++k) {
      for (int j = 0; j < ny; ++j) {
        for (int i = 0; i < p.nodes_axis; ++i) {
          const std::size_t id = p.node(i, j, k);
          if (p.fixed[id]) continue;
          const Point x = p.node_coord(i, j, k);
          const double d = std::sqrt((x[0] - c[0]) * (x[0] - c[0]) +
                                     (x[1] - c[1]) * (x[1] - c[1]) +
                                     (x[2] - c[2]) * (x[2] - c[2]));
          if (d < r) {
            const double s = 1.0 - d / r;
            phi[id] = a * s * s;
          }
        }
      }
    }
    // restrict both energies to the cells touching supp phi
    double f_u = 0.0, f_up = 0.0;
    std::vector<double> up(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) up[i] = u[i] + phi[i];
    detail::for_cells(p, u, [&](int i, int j, int k, std::size_t cc, const std::size_t* fwd,
                                const Point& xi, double tv, double th) {
      bool touched = phi[cc] != 0.0;
      for (int axis = 0; axis < p.dim && !touched; ++axis) touched = phi[fwd[axis]] != 0.0;
      if (!touched) return;
      const double w = detail::norm3(xi);
      double val = th * p.spec.a(w) + (1.0 - th) * p.spec.b(w);
      if (p.spec.e && p.spec.e_coef != 0.0) val += p.spec.e_coef * (*p.spec.e)(std::abs(tv));
      f_u += val * p.cell_volume;
      // recompute the same cell on the perturbed field
      Point xi2{0, 0, 0};
      for (int axis = 0; axis < p.dim; ++axis) xi2[axis] = (up[fwd[axis]] - up[cc]) / p.h;
      const double w2 = detail::norm3(xi2);
      double val2 = th * p.spec.a(w2) + (1.0 - th) * p.spec.b(w2);
      if (p.spec.e && p.spec.e_coef != 0.0) val2 += p.spec.e_coef * (*p.spec.e)(std::abs(up[cc]));
      f_up += val2 * p.cell_volume;
      (void)i;
      (void)j;
      (void)k;
    });
    if (f_up <= 0.0 && f_u <= 0.0) continue;
    const double ratio = f_u / std::max(f_up, 1e-300);
    rep.worst_ratio = std::max(rep.worst_ratio, ratio);
    if (f_u > big_q * f_up) ++rep.violations;
  }
  return rep;
}

// Sup of |u| over nodes of the centered half-size subdomain.
inline double interior_sup(const DiscreteProblem& p, const std::vector<double>& u) {
  double s = 0.0;
  const int ny = p.dim >= 2 ? p.nodes_axis : 1, nz = p.dim >= 3 ? p.nodes_axis : 1;
  for (int k = 0; k < nz; ++k) {
    for (int j = 0; j < ny; ++j) {
      for (int i = 0; i < p.nodes_axis; ++i) {
        const Point x = p.node_coord(i, j, k);
        bool inside = x[0] >= 0.25 && x[0] <= 0.75;
        if (p.dim >= 2) inside = inside && x[1] >= 0.25 && x[1] <= 0.75;
        if (p.dim >= 3) inside = inside && x[2] >= 0.25 && x[2] <= 0.75;
        if (inside) s = std::max(s, std::abs(u[p.node(i, j, k)]));
      }
    }
  }
  return s;
}

// --------------------------------------------------------------------------
// Growth-gap sweep: power-law A on half the box, power-law B on the other
// half, refined grids, with the closed-form admissibility verdict alongside.
struct SweepRow {
  double p = 0.0, q = 0.0;
  int refinement = 0;  // cells per axis
  double interior_sup = 0.0;
  double energy = 0.0;
  bool converged = false;
  std::string verdict;
};

inline const char* outcome_name(Outcome o) {
  switch (o) {
    case Outcome::admissible: return "admissible";
    case Outcome::not_admissible: return "not_admissible";
    case Outcome::boundary: return "boundary";
    default: return "trivially_bounded";
  }
}

inline std::vector<SweepRow> boundedness_sweep(int n, const std::vector<double>& p_list,
                                               const std::vector<double>& q_list,
                                               const std::vector<int>& refinements,
                                               double tol = 1e-10, int max_iters = 20000) {
  std::vector<SweepRow> rows;
  for (double pp : p_list) {
    for (double qq : q_list) {
      if (qq < pp) continue;  // envelopes must nest
      std::string verdict;
      try {
        verdict = outcome_name(
            analyze(GrowthSpec{YoungFunction::power(pp), YoungFunction::power(qq),
                               std::nullopt, n})
                .outcome);
      } catch (const std::exception&) {
        verdict = "trivially_bounded";
      }
      FunctionalSpec spec;
      spec.a = YoungFunction::power(pp);
      spec.b = YoungFunction::power(qq);
      spec.theta = [](const Point& x) { return x[0] < 0.5 ? 1.0 : 0.0; };
      spec.boundary = [](const Point& x) { return x[0]; };
      for (int m : refinements) {
        SweepRow row;
        row.p = pp;
        row.q = qq;
        row.refinement = m;
        const auto prob = discretize(spec, n, m);
        const auto res = minimize(prob, tol, max_iters);
        row.interior_sup = interior_sup(prob, res.nodal);
        row.energy = res.energy_trace.back();
        row.converged = res.converged;
        row.verdict = verdict;
        rows.push_back(row);
      }
    }
  }
  return rows;
}

}  // namespace orlicz
