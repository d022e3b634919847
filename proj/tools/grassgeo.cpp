// grassgeo command-line front end.
//
// Exit codes: 0 success, 1 a reproduce assertion failed, 2 invalid input,
// 3 internal cross-check failure.

#include <cmath>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "grassgeo/conjugate.hpp"
#include "grassgeo/jacobi.hpp"
#include "grassgeo/metricpath.hpp"
#include "grassgeo/oracle.hpp"
#include "grassgeo/problem.hpp"
#include "grassgeo/random.hpp"
#include "grassgeo/scenarios.hpp"

using namespace grassgeo;

namespace {

constexpr int kExitFail = 1;
constexpr int kExitValidation = 2;
constexpr int kExitCrossCheck = 3;

struct Options {
  std::vector<std::string> files;
  std::vector<double> times;
  double tmax = 3.0 * 3.141592653589793;
  bool normalize = false;
  bool kernel = false;
  bool json = false;
  bool verify = false;
  double tol_rank = 0.0;
  int steps = 200;
  std::string scenario;
};

Tolerances base_tolerances(const Options& o) {
  Tolerances t;
  if (o.tol_rank > 0) t.rank = o.tol_rank;
  t.validate();
  return t;
}

ProblemFile first_problem(const Options& o) {
  if (o.files.empty()) throw ValidationError("--file is required");
  return load_problem(o.files.front(), base_tolerances(o));
}

Element require(const std::optional<Element>& e, const char* name) {
  if (!e) throw ValidationError(std::string("problem file lacks '") + name + "'");
  return *e;
}

GeodesicState load_state(const ProblemFile& pf, bool normalize) {
  Element v = require(pf.v, "V");
  if (normalize) {
    const double n = spectral_norm(v);
    if (n == 0.0) throw ValidationError("cannot normalize a zero speed");
    v = (1.0 / n) * v;
  }
  return GeodesicState(pf.p, v, pf.tolerances);
}

void print_element(const Element& e) {
  for (std::size_t b = 0; b < e.num_blocks(); ++b) {
    std::printf("  block %zu (%s %d):\n", b, to_string(e.shape()[b].field), e.shape()[b].dim);
    const Matrix& m = e.block(b);
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      std::printf("   ");
      for (Eigen::Index j = 0; j < m.cols(); ++j) {
        if (e.shape()[b].field == Field::Real)
          std::printf(" % .10f", m(i, j).real());
        else
          std::printf(" % .10f%+.10fi", m(i, j).real(), m(i, j).imag());
      }
      std::printf("\n");
    }
  }
}

void emit(const Options& o, const Json& j, const std::function<void()>& text) {
  if (o.json)
    std::cout << j.dump(2) << "\n";
  else
    text();
}

int cmd_geodesic(const Options& o) {
  const auto pf = first_problem(o);
  const auto s = load_state(pf, o.normalize);
  Json out = Json::array();
  for (double t : o.times) {
    const Projection g = geodesic_eval(s, t);
    out.push_back({{"t", t}, {"P", element_to_json(g.p())}});
  }
  emit(o, out, [&] {
    for (double t : o.times) {
      std::printf("gamma(%.10g):\n", t);
      print_element(geodesic_eval(s, t).p());
    }
  });
  return 0;
}

int cmd_transport(const Options& o) {
  const auto pf = first_problem(o);
  const auto s = load_state(pf, o.normalize);
  const TangentVector x(s.base(), require(pf.x, "X"));
  Json out = Json::array();
  std::vector<Element> results;
  for (double t : o.times) {
    const auto y = parallel_transport_geodesic(s, x, t);
    Json item{{"t", t}, {"X", element_to_json(y.x())}};
    if (o.verify) {
      const int n = std::max(o.steps, static_cast<int>(std::ceil(std::abs(t) * 40)));
      const auto path = sample_geodesic(s, 0.0, t, n);
      const auto z = parallel_transport_path(path, 0.0, t, x);
      const double r = frobenius_norm(z.x() - y.x());
      item["ode_residual"] = r;
      if (r > 1e-6 * std::max(1.0, frobenius_norm(y.x())))
        throw CrossCheckError("transport: ODE and closed form differ by " + std::to_string(r));
    }
    out.push_back(item);
    results.push_back(y.x());
  }
  emit(o, out, [&] {
    for (std::size_t i = 0; i < o.times.size(); ++i) {
      std::printf("transport to t = %.10g:\n", o.times[i]);
      print_element(results[i]);
      if (o.verify) std::printf("  ode residual %.3e\n", out[i]["ode_residual"].get<double>());
    }
  });
  return 0;
}

int cmd_jacobi(const Options& o) {
  const auto pf = first_problem(o);
  const auto s = load_state(pf, o.normalize);
  const TangentVector x(s.base(), require(pf.x, "X"));
  const TangentVector y(s.base(), require(pf.y, "Y"));
  Json out = Json::array();
  for (double t : o.times) {
    const auto mu = jacobi_field(s, x, y, t);
    Json item{{"t", t}, {"mu", element_to_json(mu.x())}};
    if (o.verify) {
      const double r = oracle::fd_variation_check(s, x, y, t, 1e-4);
      const double rel = r / std::max(1e-300, frobenius_norm(mu.x()));
      item["fd_residual"] = r;
      if (rel > 1e-6 && r > 1e-10)
        throw CrossCheckError("jacobi: finite-difference variation disagrees (" + std::to_string(r) + ")");
    }
    out.push_back(item);
  }
  emit(o, out, [&] {
    for (const auto& item : out) {
      std::printf("mu(%.10g):\n", item["t"].get<double>());
      print_element(element_from_json(item["mu"]));
      if (o.verify) std::printf("  fd residual %.3e\n", item["fd_residual"].get<double>());
    }
  });
  return 0;
}

int cmd_dexp(const Options& o) {
  const auto pf = first_problem(o);
  const auto s = load_state(pf, o.normalize);
  const TangentVector y(s.base(), require(pf.y, "Y"));
  Json out = Json::array();
  for (double t : o.times) {
    const auto d = dexp(s, t, y);
    Json item{{"T", t}, {"dexp", element_to_json(d.x())}};
    if (o.verify) {
      const Element fd = oracle::fd_dexp(s, t, y, 1e-5);
      const double r = frobenius_norm(fd - d.x());
      item["fd_residual"] = r;
      if (r > 1e-6 * std::max(1.0, frobenius_norm(d.x())))
        throw CrossCheckError("dexp: finite differences disagree (" + std::to_string(r) + ")");
    }
    out.push_back(item);
  }
  emit(o, out, [&] {
    for (const auto& item : out) {
      std::printf("D Exp at T = %.10g:\n", item["T"].get<double>());
      print_element(element_from_json(item["dexp"]));
      if (o.verify) std::printf("  fd residual %.3e\n", item["fd_residual"].get<double>());
    }
  });
  return 0;
}

int cmd_conjugate(const Options& o) {
  const auto pf = first_problem(o);
  const auto s = load_state(pf, o.normalize);
  const auto times = conjugate_times(s, o.tmax);
  Json out = Json::array();
  std::vector<ConjugateReport> reps;
  for (const auto& t : times) {
    reps.push_back(classify(s, t));
    out.push_back(report_to_json(reps.back(), o.kernel));
  }
  emit(o, out, [&] {
    std::printf("%-16s %-14s %6s %6s %4s %4s  witnesses (k, s, s')\n", "T", "class", "order", "oracle", "S", "T");
    for (const auto& r : reps) {
      std::printf("%-16.10f %-14s %6d %6d %4zu %4zu ", r.time.time, to_string(r.classification), r.order,
                  r.oracle_nullity, r.kernel.s_part.size(), r.kernel.t_part.size());
      for (const auto& w : r.time.witnesses) std::printf(" (%d, %.6g, %.6g)", w.k, w.s, w.s_prime);
      std::printf("%s\n", r.tolerance_resolved ? "  [tolerance-resolved]" : "");
      if (o.kernel) {
        for (std::size_t i = 0; i < r.kernel.s_part.size(); ++i) {
          std::printf(" kernel vector (%s):\n", to_string(r.kernel.s_sources[i]));
          print_element(r.kernel.s_part[i].x());
        }
        for (const auto& t : r.kernel.t_part) {
          std::printf(" kernel vector (codiagonal):\n");
          print_element(t.x());
        }
      }
    }
  });
  return 0;
}

std::pair<Projection, Projection> load_pair(const Options& o) {
  const auto pf = first_problem(o);
  const Projection p(pf.p, pf.tolerances);
  if (o.files.size() >= 2) {
    const auto qf = load_problem(o.files[1], base_tolerances(o));
    return {p, Projection(qf.p, pf.tolerances)};
  }
  return {p, Projection(require(pf.q, "Q"), pf.tolerances)};
}

int cmd_join(const Options& o) {
  const auto [p, q] = load_pair(o);
  const JoinResult r = geodesic_join(p, q);
  emit(o, join_to_json(r), [&] {
    std::printf("exists %s, unique %s, length %.12g, dim P^(1-Q) %d, dim Q^(1-P) %d\n", r.exists ? "yes" : "no",
                r.unique ? "yes" : "no", r.length, r.dim_p_ker_q, r.dim_q_ker_p);
    if (r.exists) {
      std::printf("generator:\n");
      print_element(r.generator);
    }
  });
  return 0;
}

int cmd_distance(const Options& o) {
  const auto [p, q] = load_pair(o);
  const JoinResult r = geodesic_join(p, q);
  const double chord = spectral_norm(p.p() - q.p());
  Json j{{"exists", r.exists}, {"unique", r.unique}, {"norm_difference", chord}};
  j["distance"] = r.exists ? Json(r.length) : Json(nullptr);
  emit(o, j, [&] {
    if (r.exists)
      std::printf("distance %.12g (unique %s, ||P-Q|| = %.12g)\n", r.length, r.unique ? "yes" : "no", chord);
    else
      std::printf("no geodesic joins P and Q (dim P^(1-Q) %d, dim Q^(1-P) %d)\n", r.dim_p_ker_q, r.dim_q_ker_p);
  });
  return 0;
}

int cmd_reproduce(const Options& o) {
  const auto checks = scenarios::reproduce(o.scenario, rnd::seed_from_env(20240607));
  bool all = true;
  Json out = Json::array();
  for (const auto& c : checks) {
    all = all && c.pass;
    out.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
  }
  emit(o, out, [&] {
    for (const auto& c : checks)
      std::printf("%s  %s%s%s\n", c.pass ? "PASS" : "FAIL", c.name.c_str(), c.detail.empty() ? "" : "  -- ",
                  c.detail.c_str());
  });
  return all ? 0 : kExitFail;
}

int cmd_sweep(const Options& o) {
  const auto pf = first_problem(o);
  const auto s = load_state(pf, o.normalize);
  std::printf("t,min_singular,nullity\n");
  const Tolerances tol = s.tolerances();
  for (int i = 1; i <= o.steps; ++i) {
    const double t = o.tmax * i / o.steps;
    const auto n = oracle::nullity(oracle::sinhc_operator(s, t), tol.rank);
    const double ms = n.singular_values.size() ? n.singular_values(n.singular_values.size() - 1) : 0.0;
    std::printf("%.17g,%.17g,%d\n", t, ms, n.dim);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Geometry of Grassmann manifolds of finite-dimensional matrix algebras"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* c) {
    c->add_option("--file,-f", o.files, "Problem file (JSON); repeatable")->check(CLI::ExistingFile);
    c->add_flag("--json", o.json, "Machine-readable output");
    c->add_flag("--normalize", o.normalize, "Rescale V to unit spectral norm");
    c->add_option("--tol-rank", o.tol_rank, "Rank tolerance on singular values");
  };
  auto add_times = [&](CLI::App* c, const char* name) {
    c->add_option(name, o.times, "Evaluation times")->required();
  };

  auto* geo = app.add_subcommand("geodesic", "Evaluate gamma(t)");
  add_common(geo);
  add_times(geo, "--t,-t");
  auto* tr = app.add_subcommand("transport", "Parallel transport of X along the geodesic");
  add_common(tr);
  add_times(tr, "--t,-t");
  tr->add_flag("--verify", o.verify, "Compare against ODE transport");
  tr->add_option("--steps", o.steps, "ODE steps for --verify");
  auto* jac = app.add_subcommand("jacobi", "Jacobi field with mu(0) = X, mu'(0) = Y");
  add_common(jac);
  add_times(jac, "--t,-t");
  jac->add_flag("--verify", o.verify, "Compare against a finite-difference geodesic variation");
  auto* dx = app.add_subcommand("dexp", "Differential of Exp_P at TV applied to Y");
  add_common(dx);
  add_times(dx, "--T,-T");
  dx->add_flag("--verify", o.verify, "Compare against finite differences of Exp");
  auto* cj = app.add_subcommand("conjugate", "Candidate conjugate times and their classification");
  add_common(cj);
  cj->add_option("--tmax", o.tmax, "Largest candidate time");
  cj->add_flag("--kernel", o.kernel, "Print kernel bases");
  auto* jn = app.add_subcommand("join", "Geodesic joining P and Q");
  add_common(jn);
  auto* ds = app.add_subcommand("distance", "Geodesic distance between P and Q");
  add_common(ds);
  auto* rp = app.add_subcommand("reproduce", "Run a built-in worked example");
  rp->add_option("name", o.scenario, "pocos | pocos-<alpha> | projective-complex-N | projective-real-N | "
                                     "dimension-order | noesmono-grid | second-geodesic")
      ->required();
  rp->add_flag("--json", o.json, "Machine-readable output");
  auto* sw = app.add_subcommand("sweep", "CSV of the smallest normalized singular value of D Exp over (0, tmax]");
  add_common(sw);
  sw->add_option("--tmax", o.tmax, "Sweep end");
  sw->add_option("--steps", o.steps, "Number of samples");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitValidation;
  }

  try {
    if (*geo) return cmd_geodesic(o);
    if (*tr) return cmd_transport(o);
    if (*jac) return cmd_jacobi(o);
    if (*dx) return cmd_dexp(o);
    if (*cj) return cmd_conjugate(o);
    if (*jn) return cmd_join(o);
    if (*ds) return cmd_distance(o);
    if (*rp) return cmd_reproduce(o);
    if (*sw) return cmd_sweep(o);
  } catch (const CrossCheckError& e) {
    std::cerr << "cross-check failure: " << e.what() << "\n";
    return kExitCrossCheck;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  return kExitValidation;
}
