// Command-line front end for the Orlicz growth toolkit: admissibility
// analysis, conjugation tables, Sobolev conjugates, Luxemburg norms, the
// geometric-decay iteration, and the discrete variational harness.
#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "orlicz/admissibility.hpp"
#include "orlicz/degiorgi.hpp"
#include "orlicz/grid.hpp"
#include "orlicz/minimize.hpp"
#include "orlicz/norms.hpp"
#include "orlicz/sobolev.hpp"
#include "orlicz/young.hpp"
#include "orlicz/young_io.hpp"

namespace {

constexpr const char* kVersion = "1.0.0";

struct GlobalOpts {
  double tol_quad = 1e-10;
  double horizon = 1e8;
  std::uint64_t seed = 1;
  int threads = 1;
  std::string out;
};

nlohmann::json base_manifest(const std::string& subcommand, const GlobalOpts& g) {
  nlohmann::json m;
  m["tool"] = "orlicz";
  m["version"] = kVersion;
  m["subcommand"] = subcommand;
  m["tol_quad"] = g.tol_quad;
  m["horizon"] = g.horizon;
  m["seed"] = g.seed;
  m["threads"] = g.threads;
  return m;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open output file: " + path);
  f.precision(17);
  return f;
}

void emit(const std::string& path, const nlohmann::json& manifest,
          const std::function<void(std::ostream&)>& body) {
  if (path.empty()) {
    std::cout << "# manifest: " << manifest.dump() << "\n";
    std::cout.precision(17);
    body(std::cout);
  } else {
    auto f = open_out(path);
    f << "# manifest: " << manifest.dump() << "\n";
    body(f);
  }
}

int run_analyze(const GlobalOpts& g, int n, const std::string& a_spec, const std::string& b_spec,
                const std::string& e_spec, double big_l, double t0, double big_q) {
  orlicz::GrowthSpec spec{orlicz::parse_function_spec(a_spec),
                          orlicz::parse_function_spec(b_spec), std::nullopt, n, big_l, t0, big_q};
  if (!e_spec.empty()) spec.e = orlicz::parse_function_spec(e_spec);
  const auto v = orlicz::analyze(spec);

  auto manifest = base_manifest("analyze", g);
  manifest["n"] = n;
  manifest["A"] = a_spec;
  manifest["B"] = b_spec;
  if (!e_spec.empty()) manifest["E"] = e_spec;
  manifest["L"] = big_l;
  manifest["t0"] = t0;
  manifest["Q"] = big_q;

  emit(g.out, manifest, [&](std::ostream& os) {
    os << "key,value\n";
    os << "outcome," << orlicz::outcome_name(v.outcome) << "\n";
    os << "regime," << (v.regime == orlicz::Regime::subcritical ? "subcritical" : "supercritical")
       << "\n";
    os << "b_slope," << v.b_slope << "\n";
    os << "b_target_slope," << v.b_target_slope << "\n";
    if (v.b_check) {
      os << "b_certificate_c," << v.b_check->c << "\n";
      os << "b_certificate_t0," << v.b_check->t0 << "\n";
    }
    if (v.e_check) {
      os << "e_certificate_c," << v.e_check->c << "\n";
      os << "e_certificate_t0," << v.e_check->t0 << "\n";
    }
    for (double t : v.failed_probes) os << "failed_probe," << t << "\n";
    if (!v.note.empty()) os << "note," << v.note << "\n";
  });

  switch (v.outcome) {
    case orlicz::Outcome::admissible: return 0;
    case orlicz::Outcome::not_admissible: return 1;
    case orlicz::Outcome::boundary: return 2;
    default: return 3;  // trivially bounded
  }
}

int run_conjugate(const GlobalOpts& g, const std::string& a_spec, double t_min, double t_max,
                  int points) {
  const auto a = orlicz::parse_function_spec(a_spec);
  const auto conj = orlicz::conjugate(a);
  auto manifest = base_manifest("conjugate", g);
  manifest["A"] = a_spec;
  manifest["t_min"] = t_min;
  manifest["t_max"] = t_max;
  manifest["points"] = points;
  emit(g.out, manifest, [&](std::ostream& os) {
    os << "t,value\n";
    for (int i = 0; i < points; ++i) {
      const double t = t_min * std::pow(t_max / t_min, double(i) / (points - 1));
      os << t << ',' << conj(t) << "\n";
    }
  });
  return 0;
}

int run_sobolev_conjugate(const GlobalOpts& g, const std::string& a_spec, int n, double t_min,
                          double t_max, int points) {
  auto a = orlicz::parse_function_spec(a_spec);
  if (orlicz::integral_profile(a, 1.0 / (n - 1)).at_zero == orlicz::Convergence::diverges)
    a = orlicz::regularize_near_zero(a, n);
  const auto sc = orlicz::sobolev_conjugate(a, n);
  auto manifest = base_manifest("sobolev-conjugate", g);
  manifest["A"] = a_spec;
  manifest["n"] = n;
  manifest["t_min"] = t_min;
  manifest["t_max"] = t_max;
  manifest["points"] = points;
  emit(g.out, manifest, [&](std::ostream& os) {
    os << "t,value\n";
    for (int i = 0; i < points; ++i) {
      const double t = t_min * std::pow(t_max / t_min, double(i) / (points - 1));
      os << t << ',' << sc.result(t) << "\n";
    }
  });
  return 0;
}

int run_norm(const GlobalOpts& g, const std::string& a_spec, const std::string& input,
             bool use_gradient) {
  const auto a = orlicz::parse_function_spec(a_spec);
  std::ifstream in(input);
  if (!in) throw std::runtime_error("cannot open input file: " + input);
  // tolerate a leading manifest line written by other subcommands
  std::stringstream filtered;
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind("# manifest:", 0) == 0) continue;
    filtered << line << '\n';
  }
  const auto u = orlicz::import_csv(filtered);
  const double norm = orlicz::luxemburg_norm(a, u, use_gradient);
  const double mod = orlicz::modular(a, u, use_gradient);
  auto manifest = base_manifest("norm", g);
  manifest["A"] = a_spec;
  manifest["input"] = input;
  manifest["gradient"] = use_gradient;
  emit(g.out, manifest, [&](std::ostream& os) {
    os << "key,value\n";
    os << "luxemburg_norm," << norm << "\n";
    os << "modular," << mod << "\n";
    os << "domain_measure," << u.domain_measure() << "\n";
  });
  return 0;
}

int run_iterate(const GlobalOpts& g, double j0, int n, double q, double big_l, double c2,
                double big_k, int steps) {
  const auto t = orlicz::iterate(j0, n, q, big_l, c2, big_k, steps);
  auto manifest = base_manifest("iterate", g);
  manifest["J0"] = j0;
  manifest["n"] = n;
  manifest["q"] = q;
  manifest["L"] = big_l;
  manifest["c2"] = c2;
  manifest["K"] = big_k;
  manifest["steps"] = steps;
  manifest["gamma"] = t.gamma;
  manifest["tau"] = t.tau;
  manifest["eps0"] = t.eps0;
  manifest["verdict"] =
      t.verdict == orlicz::IterationTrace::Verdict::decayed ? "decayed" : "stalled";
  emit(g.out, manifest, [&](std::ostream& os) {
    os << "l,k_l,sigma_l,J_l,tau_pow_l_J0\n";
    for (std::size_t l = 0; l < t.j_values.size(); ++l) {
      const double bound = j0 > 0.0 ? std::exp(l * t.log_tau + std::log(j0)) : 0.0;
      os << l << ',' << t.schedule[l].first << ',' << t.schedule[l].second << ','
         << t.j_values[l] << ',' << bound << "\n";
    }
  });
  return 0;
}

orlicz::FieldFn named_field(const std::string& name, const std::string& what) {
  if (name == "zero" || name.empty()) return [](const orlicz::Point&) { return 0.0; };
  if (name == "one") return [](const orlicz::Point&) { return 1.0; };
  if (name == "x1") return [](const orlicz::Point& x) { return x[0]; };
  if (name == "half") return [](const orlicz::Point& x) { return x[0] < 0.5 ? 1.0 : 0.0; };
  if (name.rfind("const:", 0) == 0) {
    const double v = std::stod(name.substr(6));
    return [v](const orlicz::Point&) { return v; };
  }
  throw std::runtime_error(what + ": unknown field expression '" + name +
                           "' (use zero, one, x1, half, const:<v>)");
}

int run_minimize(const GlobalOpts& g, const std::string& config_path) {
  std::ifstream in(config_path);
  if (!in) throw std::runtime_error("cannot open config file: " + config_path);
  nlohmann::json cfg;
  in >> cfg;

  orlicz::FunctionalSpec spec;
  spec.a = orlicz::parse_function_spec(cfg.at("A").get<std::string>());
  spec.b = orlicz::parse_function_spec(cfg.value("B", cfg.at("A").get<std::string>()));
  if (cfg.contains("E")) {
    spec.e = orlicz::parse_function_spec(cfg.at("E").get<std::string>());
    spec.e_coef = cfg.value("e_coef", 1.0);
  }
  spec.theta = named_field(cfg.value("theta", "one"), "theta");
  spec.boundary = named_field(cfg.value("boundary", "zero"), "boundary");
  const int dim = cfg.value("dim", 2);
  const int cells = cfg.value("cells", 16);
  const double tol = cfg.value("tol", 1e-10);
  const int max_iters = cfg.value("max_iters", 20000);

  const auto prob = orlicz::discretize(spec, dim, cells);
  const auto res = orlicz::minimize(prob, tol, max_iters);
  const auto qm = orlicz::check_quasi_minimality(prob, res.nodal, 100, 1.0 + 1e-6, g.seed);

  auto manifest = base_manifest("minimize", g);
  manifest["config"] = cfg;
  manifest["converged"] = res.converged;
  manifest["iterations"] = res.iterations;
  manifest["energy"] = res.energy_trace.back();
  manifest["interior_sup"] = orlicz::interior_sup(prob, res.nodal);
  manifest["quasi_min_violations"] = qm.violations;
  emit(g.out, manifest, [&](std::ostream& os) { orlicz::export_csv(res.u, os); });
  return res.converged ? 0 : 1;
}

int run_sweep(const GlobalOpts& g, int n, const std::vector<double>& p_list,
              const std::vector<double>& q_list, const std::vector<int>& refinements,
              double tol, int max_iters) {
  const auto rows = orlicz::boundedness_sweep(n, p_list, q_list, refinements, tol, max_iters);
  auto manifest = base_manifest("sweep", g);
  manifest["n"] = n;
  manifest["p_list"] = p_list;
  manifest["q_list"] = q_list;
  manifest["refinements"] = refinements;
  manifest["tol"] = tol;
  emit(g.out, manifest, [&](std::ostream& os) {
    os << "p,q,refinement,interior_sup,energy,converged,verdict\n";
    for (const auto& r : rows) {
      os << r.p << ',' << r.q << ',' << r.refinement << ',' << r.interior_sup << ','
         << r.energy << ',' << (r.converged ? 1 : 0) << ',' << r.verdict << "\n";
    }
  });
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Orlicz growth toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  GlobalOpts g;
  app.add_option("--tol-quad", g.tol_quad, "quadrature tolerance recorded in manifests");
  app.add_option("--horizon", g.horizon, "probe horizon recorded in manifests");
  app.add_option("--seed", g.seed, "seed for randomized checks");
  app.add_option("--threads", g.threads, "worker threads (reductions stay deterministic)");
  app.add_option("--out", g.out, "output file (stdout when omitted)");

  // analyze
  auto* an = app.add_subcommand("analyze", "admissibility of a growth envelope");
  int an_n = 3;
  std::string an_a, an_b, an_e;
  double an_l = 1.0, an_t0 = 0.0, an_q = 1.0;
  an->add_option("--n", an_n, "dimension")->required();
  an->add_option("--A", an_a, "lower envelope")->required();
  an->add_option("--B", an_b, "upper gradient envelope")->required();
  an->add_option("--E", an_e, "zero-order envelope");
  an->add_option("--L", an_l, "structure constant L");
  an->add_option("--t0", an_t0, "near-infinity threshold");
  an->add_option("--Q", an_q, "quasi-minimality constant");

  // conjugate
  auto* cj = app.add_subcommand("conjugate", "Young conjugate table");
  std::string cj_a;
  double cj_tmin = 1e-3, cj_tmax = 1e3;
  int cj_points = 200;
  cj->add_option("--A", cj_a, "function")->required();
  cj->add_option("--t-min", cj_tmin, "table start");
  cj->add_option("--t-max", cj_tmax, "table end");
  cj->add_option("--points", cj_points, "table size");

  // sobolev-conjugate
  auto* sj = app.add_subcommand("sobolev-conjugate", "optimal Sobolev conjugate table");
  std::string sj_a;
  int sj_n = 3;
  double sj_tmin = 1e-2, sj_tmax = 1e4;
  int sj_points = 200;
  sj->add_option("--A", sj_a, "function")->required();
  sj->add_option("--n", sj_n, "dimension")->required();
  sj->add_option("--t-min", sj_tmin, "table start");
  sj->add_option("--t-max", sj_tmax, "table end");
  sj->add_option("--points", sj_points, "table size");

  // norm
  auto* nm = app.add_subcommand("norm", "Luxemburg norm of a sampled field");
  std::string nm_a, nm_input;
  bool nm_grad = false;
  nm->add_option("--A", nm_a, "function")->required();
  nm->add_option("--input", nm_input, "sampled-field CSV")->required();
  nm->add_flag("--gradient", nm_grad, "use |grad u| instead of |u|");

  // iterate
  auto* itc = app.add_subcommand("iterate", "geometric-decay iteration trace");
  double it_j0 = 0.0, it_q = 2.0, it_l = 1.0, it_c2 = 1.0, it_k = 1.0;
  int it_n = 3, it_steps = 30;
  itc->add_option("--J0", it_j0, "starting level energy")->required();
  itc->add_option("--n", it_n, "dimension")->required();
  itc->add_option("--q", it_q, "doubling exponent")->required();
  itc->add_option("--L", it_l, "structure constant L");
  itc->add_option("--c2", it_c2, "recurrence constant");
  itc->add_option("--K", it_k, "target bound");
  itc->add_option("--steps", it_steps, "levels to evolve");

  // minimize
  auto* mn = app.add_subcommand("minimize", "minimize a mixed-growth functional");
  std::string mn_config;
  mn->add_option("--config", mn_config, "JSON problem configuration")->required();

  // sweep
  auto* sw = app.add_subcommand("sweep", "growth-gap boundedness sweep");
  int sw_n = 2;
  std::vector<double> sw_p, sw_q;
  std::vector<int> sw_ref;
  double sw_tol = 1e-10;
  int sw_iters = 20000;
  sw->add_option("--n", sw_n, "dimension")->required();
  sw->add_option("--p-list", sw_p, "lower-envelope exponents")->required();
  sw->add_option("--q-list", sw_q, "upper-envelope exponents")->required();
  sw->add_option("--refinements", sw_ref, "cells per axis, one run each")->required();
  sw->add_option("--tol", sw_tol, "solver tolerance");
  sw->add_option("--max-iters", sw_iters, "solver iteration cap");

  CLI11_PARSE(app, argc, argv);

  try {
    if (an->parsed()) return run_analyze(g, an_n, an_a, an_b, an_e, an_l, an_t0, an_q);
    if (cj->parsed()) return run_conjugate(g, cj_a, cj_tmin, cj_tmax, cj_points);
    if (sj->parsed()) return run_sobolev_conjugate(g, sj_a, sj_n, sj_tmin, sj_tmax, sj_points);
    if (nm->parsed()) return run_norm(g, nm_a, nm_input, nm_grad);
    if (itc->parsed()) return run_iterate(g, it_j0, it_n, it_q, it_l, it_c2, it_k, it_steps);
    if (mn->parsed()) return run_minimize(g, mn_config);
    if (sw->parsed()) return run_sweep(g, sw_n, sw_p, sw_q, sw_ref, sw_tol, sw_iters);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 64;
  }
  return 64;
}
