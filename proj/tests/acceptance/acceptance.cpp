// Acceptance gate: one PASS/FAIL line per criterion.
//
//   acceptance              run all criteria
//   acceptance --criterion N

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "grassgeo/conjugate.hpp"
#include "grassgeo/jacobi.hpp"
#include "grassgeo/metricpath.hpp"
#include "grassgeo/oracle.hpp"
#include "grassgeo/random.hpp"
#include "grassgeo/scenarios.hpp"

using namespace grassgeo;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;
  void fail(const std::string& why) {
    pass = false;
    if (notes.size() < 40) notes.push_back(why);
  }
};

std::string num(double x) {
  std::ostringstream o;
  o.precision(3);
  o << x;
  return o.str();
}

AlgebraShape random_shape(rnd::Rng& rng, int max_blocks, int max_dim) {
  std::uniform_int_distribution<int> nb(1, max_blocks), dim(2, max_dim), coin(0, 1);
  std::vector<BlockShape> b;
  const int k = nb(rng);
  for (int i = 0; i < k; ++i) b.push_back({dim(rng), coin(rng) ? Field::Complex : Field::Real});
  return AlgebraShape(std::move(b));
}

GeodesicState random_unit_state(rnd::Rng& rng, int max_blocks, int max_dim) {
  for (;;) {
    const auto p = rnd::projection(random_shape(rng, max_blocks, max_dim), rng);
    const auto v = rnd::unit_tangent(p, rng);
    if (spectral_norm(v.x()) > 0.5) return GeodesicState(p, v);
  }
}

Projection rotated(const Projection& p, const Element& x) {
  const Element u = expm_skew(x);
  return Projection(u * p.p() * u.adjoint());
}

// 1. Projective spaces against the published order table.
Outcome projective_spaces() {
  Outcome out;
  const auto start = std::chrono::steady_clock::now();
  int rows = 0, mismatched = 0;
  for (Field f : {Field::Complex, Field::Real})
    for (int n = 2; n <= 6; ++n) {
      const auto s = scenarios::projective_state(n, f);
      const auto table = projective_reference(n, f);
      for (const auto& t : conjugate_times(s, 3 * kPi)) {
        ++rows;
        const int expected = reference_order(table, t.time).value_or(0);
        try {
          const auto r = classify(s, t);
          if (r.order != expected || r.oracle_nullity != expected) {
            ++mismatched;
            out.fail(std::string(to_string(f)) + " n=" + std::to_string(n) + " T=" + num(t.time / kPi) +
                     "pi: analytic " + std::to_string(r.order) + ", oracle " + std::to_string(r.oracle_nullity) +
                     ", published " + std::to_string(expected));
          }
        } catch (const Error& e) {
          ++mismatched;
          out.fail(e.what());
        }
      }
    }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (secs >= 5.0) out.fail("runtime " + num(secs) + " s");
  out.notes.insert(out.notes.begin(), std::to_string(rows - mismatched) + "/" + std::to_string(rows) +
                                          " rows match, " + num(secs) + " s");
  return out;
}

// 2. Order at the first conjugate point on planted instances.
Outcome first_conjugate_order(std::uint64_t seed) {
  Outcome out;
  rnd::Rng rng(seed);
  std::uniform_real_distribution<double> uni(0.05, 0.95);
  int ok = 0;
  for (int i = 0; i < 50; ++i) {
    const int d = 1 + i % 3;
    const Field f = (i / 3) % 2 == 0 ? Field::Complex : Field::Real;
    const int m = std::uniform_int_distribution<int>(2 * d, 8)(rng);
    const int p = std::uniform_int_distribution<int>(d, m - d)(rng);
    const int room = std::min(p, m - p) - d;
    std::vector<double> sigma(d, 1.0);
    const int extra = std::uniform_int_distribution<int>(0, room)(rng);
    for (int k = 0; k < extra; ++k) sigma.push_back(uni(rng));
    const auto s = rnd::planted(m, p, sigma, f, rng);
    const int expected = f == Field::Complex ? d * d : (d * d - d) / 2;
    try {
      const auto r = classify(s, kPi / 2);
      const bool good = r.order == expected && r.oracle_nullity == expected && r.kernel.t_part.empty();
      if (good)
        ++ok;
      else
        out.fail("m=" + std::to_string(m) + " p=" + std::to_string(p) + " d=" + std::to_string(d) + " " +
                 to_string(f) + ": order " + std::to_string(r.order) + ", oracle " +
                 std::to_string(r.oracle_nullity) + ", co-diagonal " + std::to_string(r.kernel.t_part.size()));
    } catch (const Error& e) {
      out.fail(e.what());
    }
  }
  out.notes.insert(out.notes.begin(), std::to_string(ok) + "/50 instances exact");
  return out;
}

// 3. The four-family counterexample.
Outcome pocos_families() {
  Outcome out;
  std::string summary;
  for (double a : {0.4, 1.0 / 3.0, 0.7}) {
    int total = 0, good = 0;
    for (const auto& c : scenarios::pocos(a, 3 * kPi)) {
      ++total;
      if (c.pass)
        ++good;
      else
        out.fail("alpha=" + num(a) + " " + c.name + " (" + c.detail + ")");
    }
    summary += (summary.empty() ? "" : ", ") + std::string("alpha=") + num(a) + ": " + std::to_string(good) + "/" +
               std::to_string(total);
  }
  out.notes.insert(out.notes.begin(), summary + " checks");
  return out;
}

// 4. Jacobi fields and dexp against finite differences and the vectorized oracle.
Outcome jacobi_dexp(std::uint64_t seed) {
  Outcome out;
  rnd::Rng rng(seed);
  std::uniform_real_distribution<double> ut(0.1, 3.0);
  double worst_j = 0.0, worst_d = 0.0, worst_m = 0.0;
  for (int i = 0; i < 100; ++i) {
    const auto s = random_unit_state(rng, 3, 6);
    const auto x = rnd::tangent(s.base(), rng);
    const auto y = rnd::tangent(s.base(), rng);
    const double t = ut(rng);
    try {
      const double nj = frobenius_norm(jacobi_field(s, x, y, t).x());
      const double ej = oracle::fd_variation_check(s, x, y, t, 1e-4) / nj;
      worst_j = std::max(worst_j, ej);
      if (!(ej < 1e-6)) out.fail("instance " + std::to_string(i) + ": Jacobi relative error " + num(ej));

      const Element d = dexp(s, t, y).x();
      const double ed = frobenius_norm(d - oracle::fd_dexp(s, t, y, 1e-5)) / std::max(1.0, frobenius_norm(d));
      worst_d = std::max(worst_d, ed);
      if (!(ed < 1e-6)) out.fail("instance " + std::to_string(i) + ": dexp error " + num(ed));

      const double em = (dexp_matrix(s, t) - oracle::sinhc_operator(s, t).matrix).cwiseAbs().maxCoeff();
      worst_m = std::max(worst_m, em);
      if (!(em < 1e-10)) out.fail("instance " + std::to_string(i) + ": matrix entry error " + num(em));
    } catch (const Error& e) {
      out.fail(e.what());
    }
  }
  out.notes.insert(out.notes.begin(), "worst Jacobi " + num(worst_j) + ", dexp " + num(worst_d) + ", matrix " +
                                          num(worst_m));
  return out;
}

// 5. Coherence of the connection presentations.
Outcome connection(std::uint64_t seed) {
  Outcome out;
  rnd::Rng rng(seed);
  double worst_pres = 0.0, worst_geo = 0.0, worst_gamma = 0.0, worst_block = 0.0;
  const int n = 200;
  for (int i = 0; i < 50; ++i) {
    const auto s = random_unit_state(rng, 3, 4);
    try {
      const auto path = sample_geodesic(s, 0.0, 1.0, n);
      const auto x = rnd::tangent(s.base(), rng);
      std::vector<Element> vel, field;
      for (int k = 0; k <= n; ++k) {
        const double t = static_cast<double>(k) / n;
        vel.push_back(geodesic_velocity(s, t).x());
        field.push_back((1.0 + t * t) * parallel_transport_geodesic(s, x, t).x());
      }
      const auto hor = covariant_derivative(path, field, 0.0, 1.0, Presentation::Horizontal);
      const auto red = covariant_derivative(path, field, 0.0, 1.0, Presentation::Reductive);
      for (int k = 0; k <= n; ++k) worst_pres = std::max(worst_pres, frobenius_norm(hor[k] - red[k]));
      for (const auto& d : covariant_derivative(path, vel, 0.0, 1.0, Presentation::Horizontal))
        worst_geo = std::max(worst_geo, frobenius_norm(d));

      const auto a = rnd::tangent(s.base(), rng).x();
      const auto b = rnd::tangent(s.base(), rng).x();
      const Element g1 = christoffel(s.base(), a, b);
      worst_gamma = std::max(worst_gamma, frobenius_norm(g1 - christoffel(s.base(), b, a)));
      worst_gamma = std::max(worst_gamma, frobenius_norm(g1 - bracket(a, bracket(b, s.base().p()))));

      for (double t : {0.3, 1.7, 4.1})
        worst_block = std::max(worst_block, frobenius_norm(geodesic_eval_block(s, t) - geodesic_eval_exp(s, t)));
    } catch (const Error& e) {
      out.fail(e.what());
    }
  }
  if (!(worst_pres < 1e-6)) out.fail("horizontal vs reductive " + num(worst_pres));
  if (!(worst_geo < 1e-6)) out.fail("geodesic equation residual " + num(worst_geo));
  if (!(worst_gamma < 1e-12)) out.fail("Christoffel symmetry " + num(worst_gamma));
  if (!(worst_block < 1e-10)) out.fail("block formula vs exponential " + num(worst_block));
  out.notes.insert(out.notes.begin(), "presentations " + num(worst_pres) + ", geodesic " + num(worst_geo) +
                                          ", Gamma " + num(worst_gamma) + ", block " + num(worst_block));
  return out;
}

// 6. Minimality, second geodesics and the past-cut shortcut.
Outcome minimality(std::uint64_t seed) {
  Outcome out;
  rnd::Rng rng(seed);
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    const auto s = random_unit_state(rng, 3, 4);
    const double u = spectral_norm(s.speed().x());
    const auto scaled = s.scaled(1.0 / u);
    worst = std::max(worst, std::abs(path_length(sample_geodesic(scaled, 0.0, kPi / 2, 1000)) - kPi / 2));
  }
  if (!(worst < 1e-4)) out.fail("sampled length off by " + num(worst));
  for (const auto& c : scenarios::second_geodesic())
    if (!c.pass) out.fail(c.name + " (" + c.detail + ")");
  out.notes.insert(out.notes.begin(), "worst length error " + num(worst));
  return out;
}

// 7. Joining projections.
Outcome joins(std::uint64_t seed) {
  Outcome out;
  rnd::Rng rng(seed);
  std::uniform_real_distribution<double> un(0.05, 1.5);
  double worst_res = 0.0, worst_rt = 0.0;
  for (int i = 0; i < 200; ++i) {
    const auto p = rnd::projection(random_shape(rng, 3, 5), rng);
    const Element x0 = rnd::codiagonal_skew(p, un(rng), rng);
    const auto q = rotated(p, x0);
    try {
      if (!(spectral_norm(p.p() - q.p()) < 1.0)) continue;
      const auto r = direct_rotation(p, q);
      const Element& x = r.generator;
      if (!x.is_skew(1e-12) || !is_codiagonal(x, p, 1e-10)) out.fail("instance " + std::to_string(i) + ": generator shape");
      if (!(spectral_norm(x) < kPi / 2)) out.fail("instance " + std::to_string(i) + ": norm " + num(spectral_norm(x)));
      const Element u = expm_skew(x);
      worst_res = std::max(worst_res, frobenius_norm(u * p.p() * u.adjoint() - q.p()));
      worst_rt = std::max(worst_rt, frobenius_norm(x - x0));
    } catch (const Error& e) {
      out.fail(e.what());
    }
  }
  if (!(worst_res < 1e-9)) out.fail("conjugation residual " + num(worst_res));
  if (!(worst_rt < 1e-8)) out.fail("roundtrip error " + num(worst_rt));

  // Existence decisions against brute force on 4 x 4 algebras.
  const std::vector<AlgebraShape> shapes{AlgebraShape::single(4, Field::Complex), AlgebraShape::single(4, Field::Real),
                                         AlgebraShape({{2, Field::Complex}, {2, Field::Complex}})};
  int agree = 0, cases = 0, found = 0;
  for (int i = 0; i < 24; ++i) {
    const AlgebraShape& shape = shapes[i % shapes.size()];
    std::vector<int> rp, rq;
    for (const auto& b : shape.blocks()) {
      rp.push_back(std::uniform_int_distribution<int>(0, b.dim)(rng));
      rq.push_back(std::uniform_int_distribution<int>(0, b.dim)(rng));
    }
    if (i % 3 == 1) rq = rp;
    const auto p = rnd::projection(shape, rp, rng);
    auto q = rnd::projection(shape, rq, rng);
    if (i % 6 == 1) {
      // Force P ^ (1 - Q) != 0: rotate one direction by exactly pi/2.
      const auto basis = codiagonal_skew_basis(p);
      if (!basis.empty()) q = rotated(p, (kPi / 2 * std::sqrt(2.0)) * basis.front());
    }
    try {
      const auto j = geodesic_join(p, q);
      const auto b = oracle::brute_force_join(p, q, 12, seed + static_cast<std::uint64_t>(i));
      ++cases;
      found += b.found ? 1 : 0;
      if (j.exists == b.found)
        ++agree;
      else
        out.fail("4x4 case " + std::to_string(i) + ": join says " + (j.exists ? "exists" : "none") +
                 ", brute force residual " + num(b.residual));
    } catch (const Error& e) {
      out.fail(e.what());
    }
  }
  out.notes.insert(out.notes.begin(), "residual " + num(worst_res) + ", roundtrip " + num(worst_rt) + ", " +
                                          std::to_string(agree) + "/" + std::to_string(cases) +
                                          " brute-force decisions agree (" + std::to_string(found) + " joinable)");
  return out;
}

// 8. Discretized epiconjugate shadow.
Outcome epi_shadow() {
  Outcome out;
  double prev = INFINITY, last = 0.0;
  std::string trace;
  for (int n : {8, 16, 32, 64}) {
    const auto d = oracle::discretized_epi_demo(n);
    trace += (trace.empty() ? "" : ", ") + std::string("N=") + std::to_string(n) + ": " + num(d.min_singular);
    if (d.nullity != 0) out.fail("N=" + std::to_string(n) + " nullity " + std::to_string(d.nullity));
    if (!(d.min_singular < prev)) out.fail("min singular not decreasing at N=" + std::to_string(n));
    if (d.min_singular > 2.0 / n + 1e-14) out.fail("bound 2/N violated at N=" + std::to_string(n));
    prev = last = d.min_singular;
  }
  if (!(last < 0.05)) out.fail("min singular at N=64 is " + num(last));
  out.notes.insert(out.notes.begin(), trace);
  return out;
}

struct Criterion {
  const char* title;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria"};
  int only = 0;
  bool verbose = false;
  app.add_option("--criterion", only, "Run a single criterion (1-8)")->check(CLI::Range(1, 8));
  app.add_flag("--verbose,-v", verbose, "Print every recorded failure");
  CLI11_PARSE(app, argc, argv);

  const std::uint64_t seed = rnd::seed_from_env(20240607);
  const std::vector<Criterion> all{
      {"projective spaces: published orders, oracle agreement, runtime < 5 s", projective_spaces},
      {"first conjugate point order d^2 / (d^2-d)/2 on 50 planted instances", [&] { return first_conjugate_order(seed); }},
      {"pocos families for alpha in {2/5, 1/3, 0.7}", pocos_families},
      {"Jacobi field, dexp and dexp_matrix on 100 random instances", [&] { return jacobi_dexp(seed + 1); }},
      {"connection coherence on 50 random geodesics", [&] { return connection(seed + 2); }},
      {"minimality, second geodesic and shortcut past the cut point", [&] { return minimality(seed + 3); }},
      {"joining 200 random pairs, roundtrips and 4x4 brute force", [&] { return joins(seed + 4); }},
      {"discretized epiconjugate shadow", epi_shadow},
  };

  bool all_pass = true;
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (only != 0 && static_cast<int>(i + 1) != only) continue;
    Outcome o;
    try {
      o = all[i].run();
    } catch (const std::exception& e) {
      o.fail(std::string("unexpected exception: ") + e.what());
    }
    all_pass = all_pass && o.pass;
    std::printf("criterion %zu %s  %s  [%s]\n", i + 1, o.pass ? "PASS" : "FAIL", all[i].title,
                o.notes.empty() ? "" : o.notes.front().c_str());
    if (!o.pass || verbose)
      for (std::size_t k = 1; k < o.notes.size(); ++k) std::printf("    %s\n", o.notes[k].c_str());
  }
  return all_pass ? 0 : 1;
}
