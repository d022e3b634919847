#include "grassgeo/scenarios.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "grassgeo/metricpath.hpp"
#include "grassgeo/oracle.hpp"
#include "grassgeo/random.hpp"

namespace grassgeo::scenarios {

namespace {

constexpr double kPi = std::numbers::pi;

std::string fmt(double x) {
  std::ostringstream o;
  o.precision(10);
  o << x;
  return o.str();
}

bool is_multiple(double t, double base) {
  const double m = t / base;
  const long r = std::lround(m);
  return r >= 1 && std::abs(m - r) <= 1e-8 * std::max(1.0, m);
}

// Classification, turning a cross-check failure into a failed check.
struct Classified {
  bool ok = false;
  ConjugateReport report;
  std::string error;
};

Classified try_classify(const GeodesicState& s, const ConjugateTime& t) {
  Classified c;
  try {
    c.report = classify(s, t);
    c.ok = true;
  } catch (const Error& e) {
    c.error = e.what();
  }
  return c;
}

}  // namespace

GeodesicState pocos_state(double alpha) {
  const AlgebraShape shape({{2, Field::Complex}, {2, Field::Complex}});
  Matrix p = Matrix::Zero(2, 2);
  p(0, 0) = 1.0;
  Matrix v1 = Matrix::Zero(2, 2), v2 = Matrix::Zero(2, 2);
  v1(0, 1) = v1(1, 0) = 1.0;
  v2(0, 1) = v2(1, 0) = alpha;
  return GeodesicState(Element(shape, {p, p}), Element(shape, {v1, v2}));
}

GeodesicState projective_state(int n, Field field) {
  if (n < 2) throw ValidationError("projective space needs n >= 2");
  const AlgebraShape shape = AlgebraShape::single(n, field);
  Matrix p = Matrix::Zero(n, n);
  p(0, 0) = 1.0;
  Matrix v = Matrix::Zero(n, n);
  v(0, 1) = v(1, 0) = 1.0;
  return GeodesicState(Element(shape, {p}), Element(shape, {v}));
}

GeodesicState two_by_two(double scale) {
  const AlgebraShape shape = AlgebraShape::single(2, Field::Complex);
  Matrix p = Matrix::Zero(2, 2);
  p(0, 0) = 1.0;
  Matrix v = Matrix::Zero(2, 2);
  v(0, 1) = v(1, 0) = scale;
  return GeodesicState(Element(shape, {p}), Element(shape, {v}));
}

std::vector<Check> pocos(double alpha, double t_max) {
  std::vector<Check> out;
  const GeodesicState s = pocos_state(alpha);
  const auto& vals = s.speed_spectrum().values;
  const std::vector<double> expect{-1.0, -alpha, alpha, 1.0};
  bool spec_ok = vals.size() == expect.size();
  for (std::size_t i = 0; spec_ok && i < vals.size(); ++i) spec_ok = std::abs(vals[i] - expect[i]) < 1e-12;
  out.push_back({"spectrum is {-1, -a, a, 1}", spec_ok, "alpha = " + fmt(alpha)});

  const double bases[] = {kPi / 2, kPi / (1 + alpha), kPi / (1 - alpha), kPi / (2 * alpha)};
  const auto times = conjugate_times(s, t_max);
  bool in_family = true;
  bool seen[4] = {false, false, false, false};
  for (const auto& t : times) {
    bool any = false;
    for (int f = 0; f < 4; ++f)
      if (is_multiple(t.time, bases[f])) any = seen[f] = true;
    in_family = in_family && any;
  }
  bool families_ok = in_family;
  for (int f = 0; f < 4; ++f) families_ok = families_ok && (seen[f] == (bases[f] <= t_max));
  out.push_back({"candidates form the four families", families_ok, std::to_string(times.size()) + " candidate times"});

  for (const auto& t : times) {
    const bool first_family = is_multiple(t.time, kPi / 2);
    const auto c = try_classify(s, t);
    Check ch;
    ch.name = "T = " + fmt(t.time) + (first_family ? " (k pi/2 family) Monoconjugate" : " NotConjugate");
    if (!c.ok) {
      ch.pass = false;
      ch.detail = c.error;
    } else {
      const bool mono = c.report.classification == Classification::Monoconjugate;
      ch.pass = mono == first_family && c.report.order == c.report.oracle_nullity;
      ch.detail = std::string(to_string(c.report.classification)) + ", order " + std::to_string(c.report.order) +
                  ", oracle " + std::to_string(c.report.oracle_nullity);
    }
    out.push_back(std::move(ch));
  }
  return out;
}

std::vector<Check> projective(int n, Field field, double t_max) {
  std::vector<Check> out;
  const GeodesicState s = projective_state(n, field);
  const auto table = projective_reference(n, field);
  const std::string label = std::string(field == Field::Complex ? "complex" : "real") + " n=" + std::to_string(n);
  for (const auto& t : conjugate_times(s, t_max)) {
    const int expected = reference_order(table, t.time).value_or(0);
    const auto c = try_classify(s, t);
    Check ch;
    ch.name = label + " T = " + fmt(t.time) + " order " + std::to_string(expected);
    if (!c.ok) {
      ch.detail = c.error;
    } else {
      ch.pass = c.report.order == expected && c.report.oracle_nullity == expected;
      ch.detail = "analytic " + std::to_string(c.report.order) + ", oracle " + std::to_string(c.report.oracle_nullity) +
                  ", published " + std::to_string(expected);
    }
    out.push_back(std::move(ch));
  }
  return out;
}

std::vector<Check> dimension_order(int d, Field field, std::uint64_t seed) {
  rnd::Rng rng(seed);
  const int p = d + 1;
  const int m = 2 * d + 3;
  std::vector<double> sigma(d, 1.0);
  std::uniform_real_distribution<double> uni(0.05, 0.95);
  sigma.push_back(uni(rng));
  const GeodesicState s = rnd::planted(m, p, sigma, field, rng);
  const int expected = field == Field::Complex ? d * d : (d * d - d) / 2;
  const auto c = try_classify(s, ConjugateTime{kPi / 2, witnesses_at(s, kPi / 2)});
  const std::string label = std::string(field == Field::Complex ? "complex" : "real") + " d=" + std::to_string(d);
  std::vector<Check> out;
  if (!c.ok) {
    out.push_back({label + " order at pi/2", false, c.error});
    return out;
  }
  out.push_back({label + " order at pi/2 is " + std::to_string(expected), c.report.order == expected,
                 "analytic " + std::to_string(c.report.order) + ", oracle " + std::to_string(c.report.oracle_nullity)});
  out.push_back({label + " no P_v-co-diagonal contribution", c.report.kernel.t_part.empty(),
                 std::to_string(c.report.kernel.t_part.size()) + " co-diagonal vectors"});
  return out;
}

std::vector<Check> noesmono_grid() {
  std::vector<Check> out;
  double prev = INFINITY;
  bool monotone = true;
  double last = 0.0;
  for (int n : {8, 16, 32, 64}) {
    const auto demo = oracle::discretized_epi_demo(n);
    out.push_back({"N = " + std::to_string(n) + " nullity 0", demo.nullity == 0,
                   "min singular " + fmt(demo.min_singular) + ", bound 2/N = " + fmt(2.0 / n)});
    out.push_back({"N = " + std::to_string(n) + " min singular equals 2/N",
                   std::abs(demo.min_singular - 2.0 / n) < 1e-12, fmt(demo.min_singular)});
    monotone = monotone && demo.min_singular < prev;
    prev = demo.min_singular;
    last = demo.min_singular;
  }
  out.push_back({"min singular decreases with N", monotone, ""});
  out.push_back({"min singular below 0.05 at N = 64", last < 0.05, fmt(last)});
  return out;
}

std::vector<Check> second_geodesic() {
  std::vector<Check> out;
  const GeodesicState s = two_by_two(kPi / 2);
  const AlgebraShape shape = AlgebraShape::single(2, Field::Complex);
  Matrix e22 = Matrix::Zero(2, 2);
  e22(1, 1) = 1.0;
  const Element target(shape, {e22});
  try {
    const auto s1 = second_minimizing_geodesic(s);
    out.push_back({"second minimizing geodesic exists", s1.has_value(), ""});
    if (s1) {
      const double r = frobenius_norm(geodesic_eval(*s1, 1.0).p() - target);
      out.push_back({"both geodesics end at e22", r < 1e-9 && frobenius_norm(geodesic_eval(s, 1.0).p() - target) < 1e-9,
                     "residual " + fmt(r)});
      out.push_back({"opposite rotation sense", frobenius_norm(s1->generator() + s.generator()) < 1e-12, ""});
      const double l0 = geodesic_length(s, 1.0), l1 = geodesic_length(*s1, 1.0);
      out.push_back({"equal lengths pi/2", std::abs(l0 - kPi / 2) < 1e-12 && std::abs(l1 - kPi / 2) < 1e-12,
                     fmt(l0) + " and " + fmt(l1)});
    }
    const auto sc = shortcut_past_cut(s, 0.1);
    out.push_back({"shortcut length 0.45 pi vs 0.55 pi",
                   std::abs(sc.length - 0.45 * kPi) < 1e-12 && std::abs(sc.original_length - 0.55 * kPi) < 1e-12 &&
                       sc.length < sc.original_length,
                   fmt(sc.length / kPi) + " pi vs " + fmt(sc.original_length / kPi) + " pi"});
    out.push_back({"shortcut endpoint residual < 1e-9", sc.endpoint_residual < 1e-9, fmt(sc.endpoint_residual)});
  } catch (const Error& e) {
    out.push_back({"second geodesic construction", false, e.what()});
  }
  return out;
}

std::vector<std::string> scenario_names() {
  return {"pocos", "pocos-<alpha>", "projective-complex-N", "projective-real-N", "dimension-order", "noesmono-grid",
          "second-geodesic"};
}

std::vector<Check> reproduce(const std::string& name, std::uint64_t seed) {
  auto suffix_int = [&](const std::string& prefix) {
    const std::string rest = name.substr(prefix.size());
    std::size_t used = 0;
    int n = 0;
    try {
      n = std::stoi(rest, &used);
    } catch (const std::exception&) {
      throw ValidationError("bad scenario size in '" + name + "'");
    }
    if (used != rest.size()) throw ValidationError("bad scenario size in '" + name + "'");
    return n;
  };
  if (name == "pocos") return pocos(0.4);
  if (name.rfind("pocos-", 0) == 0) {
    const std::string rest = name.substr(6);
    double a = 0.0;
    try {
      a = std::stod(rest);
    } catch (const std::exception&) {
      throw ValidationError("bad alpha in '" + name + "'");
    }
    if (!(a > 0.0 && a < 1.0)) throw ValidationError("alpha must lie in (0, 1)");
    return pocos(a);
  }
  if (name.rfind("projective-complex-", 0) == 0) return projective(suffix_int("projective-complex-"), Field::Complex);
  if (name.rfind("projective-real-", 0) == 0) return projective(suffix_int("projective-real-"), Field::Real);
  if (name == "dimension-order") {
    std::vector<Check> out;
    for (Field f : {Field::Complex, Field::Real})
      for (int d = 1; d <= 3; ++d) {
        auto c = dimension_order(d, f, seed + static_cast<std::uint64_t>(d));
        out.insert(out.end(), c.begin(), c.end());
      }
    return out;
  }
  if (name == "noesmono-grid") return noesmono_grid();
  if (name == "second-geodesic") return second_geodesic();
  throw ValidationError("unknown scenario '" + name + "'");
}

}  // namespace grassgeo::scenarios
