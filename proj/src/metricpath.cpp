#include "grassgeo/metricpath.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace grassgeo {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kJoinResidual = 1e-9;

Element polar_unitary(const Element& t) {
  return t * hermitian_function(t.adjoint() * t, [](double x) { return 1.0 / std::sqrt(x); });
}

int total(const std::vector<int>& v) {
  int s = 0;
  for (int x : v) s += x;
  return s;
}

Element clean_generator(const Element& x, const Projection& p) {
  const Element skew = 0.5 * (x - x.adjoint());
  const Element c = codiagonal_projection(skew, p);
  if (frobenius_norm(c - x) > 1e-8 * std::max(1.0, frobenius_norm(x)))
    throw CrossCheckError("join generator is not P-co-diagonal");
  return c;
}

void check_endpoint(const Element& x, const Projection& p, const Projection& q) {
  const Element u = expm_skew(x, p.tolerances());
  const double r = frobenius_norm(u * p.p() * u.adjoint() - q.p());
  if (r > kJoinResidual) throw CrossCheckError("join generator misses Q (residual " + std::to_string(r) + ")");
}

std::pair<Element, Element> half_pi_projections(const GeodesicState& s) {
  const auto& tol = s.tolerances();
  const auto& spec = s.generator_spectrum();
  const AlgebraShape cshape = s.base().shape().complexified();
  Element plus = Element::zero(cshape), minus = Element::zero(cshape);
  for (std::size_t i = 0; i < spec.values.size(); ++i) {
    if (std::abs(spec.values[i] - kPi / 2) <= tol.cluster) plus += spec.projections[i];
    if (std::abs(spec.values[i] + kPi / 2) <= tol.cluster) minus += spec.projections[i];
  }
  return {plus, minus};
}

// i * c * (a - b) brought back to the (possibly real) shape of the algebra.
Element i_times_difference(const Element& a, const Element& b, double c, const AlgebraShape& shape) {
  const Element d = Scalar(0.0, c) * (a - b);
  return Element(shape, d.blocks());
}

void require_half_pi_bound(const GeodesicState& s) {
  const double n = spectral_norm(s.generator());
  if (n > kPi / 2 + 1e-8)
    throw ValidationError("generator norm " + std::to_string(n) + " exceeds pi/2; rescale the state first");
}

}  // namespace

double path_length(const std::vector<Projection>& samples) {
  double l = 0.0;
  for (std::size_t i = 1; i < samples.size(); ++i) l += spectral_norm(samples[i].p() - samples[i - 1].p());
  return l;
}

double geodesic_length(const GeodesicState& s, double t) { return std::abs(t) * spectral_norm(s.speed().x()); }

Projection meet_projection(const Projection& p, const Projection& q) {
  detail::require_same_shape(p.p(), q.p(), "meet");
  const Element pqp = p.p() * q.p() * p.p();
  return Projection(spectral_projection(0.5 * (pqp + pqp.adjoint()), 1.0, p.tolerances()), p.tolerances());
}

JoinResult direct_rotation(const Projection& p, const Projection& q) {
  detail::require_same_shape(p.p(), q.p(), "direct_rotation");
  const double d = spectral_norm(p.p() - q.p());
  if (d >= 1.0 - 1e-12)
    throw ValidationError("direct_rotation needs ||P - Q|| < 1 (got " + std::to_string(d) + "); use geodesic_join");
  const Element one = Element::identity(p.shape());
  const Element t = q.p() * p.p() + (one - q.p()) * (one - p.p());
  const Element x = clean_generator(logm_unitary(polar_unitary(t), p.tolerances()), p);
  JoinResult out;
  out.exists = true;
  out.unique = true;
  out.generator = x;
  out.length = spectral_norm(x);
  if (out.length >= kPi / 2) throw CrossCheckError("direct rotation has norm >= pi/2");
  out.block_dim_p_ker_q.assign(p.shape().size(), 0);
  out.block_dim_q_ker_p.assign(p.shape().size(), 0);
  check_endpoint(x, p, q);
  return out;
}

JoinResult geodesic_join(const Projection& p, const Projection& q) {
  detail::require_same_shape(p.p(), q.p(), "geodesic_join");
  const auto& tol = p.tolerances();
  const auto& shape = p.shape();
  const Element one = Element::identity(shape);
  const Projection m1 = meet_projection(p, Projection(one - q.p(), tol));
  const Projection m2 = meet_projection(q, Projection(one - p.p(), tol));

  JoinResult out;
  out.block_dim_p_ker_q = m1.ranks();
  out.block_dim_q_ker_p = m2.ranks();
  out.dim_p_ker_q = total(out.block_dim_p_ker_q);
  out.dim_q_ker_p = total(out.block_dim_q_ker_p);
  out.exists = out.block_dim_p_ker_q == out.block_dim_q_ker_p;
  out.unique = out.exists && out.dim_p_ker_q == 0;
  if (!out.exists) return out;

  std::vector<Matrix> mis;
  for (std::size_t b = 0; b < shape.size(); ++b) {
    const Matrix e = detail::range_basis(m1.p().block(b), shape[b].field, tol.structural);
    const Matrix f = detail::range_basis(m2.p().block(b), shape[b].field, tol.structural);
    mis.push_back((kPi / 2) * (f * e.adjoint() - e * f.adjoint()));
  }
  const Element x_mis(shape, std::move(mis));

  const Element pp = p.p() - m1.p();
  const Element qq = q.p() - m2.p();
  const Element e = one - m1.p() - m2.p();
  const Element t = qq * pp + (e - qq) * (e - pp) + m1.p() + m2.p();
  const Element x_gen = logm_unitary(polar_unitary(t), tol);
  const Element x = clean_generator(x_gen + x_mis, p);
  check_endpoint(x, p, q);
  out.generator = x;
  out.length = spectral_norm(x);
  return out;
}

std::optional<GeodesicState> second_minimizing_geodesic(const GeodesicState& s) {
  require_half_pi_bound(s);
  const auto [plus, minus] = half_pi_projections(s);
  if (frobenius_norm(plus) == 0.0 && frobenius_norm(minus) == 0.0) return std::nullopt;
  const auto& shape = s.base().shape();
  const Element& v = s.generator();
  const Element v1 = v - i_times_difference(plus, minus, kPi, shape);
  const Projection& p = s.base();
  GeodesicState s1(p, TangentVector(p, bracket(v1, p.p())));

  const Element e2 = expm_skew(2.0 * v, s.tolerances());
  const Element e2b = expm_skew(2.0 * s1.generator(), s.tolerances());
  if (frobenius_norm(e2 - e2b) > 1e-9) throw CrossCheckError("second geodesic: e^{2v} != e^{2v1}");
  const double r = frobenius_norm(geodesic_eval(s, 1.0).p() - geodesic_eval(s1, 1.0).p());
  if (r > 1e-9) throw CrossCheckError("second geodesic: endpoints differ by " + std::to_string(r));
  if (std::abs(geodesic_length(s, 1.0) - geodesic_length(s1, 1.0)) > 1e-9)
    throw CrossCheckError("second geodesic: lengths differ");
  return s1;
}

Shortcut shortcut_past_cut(const GeodesicState& s, double eps) {
  require_half_pi_bound(s);
  const auto [plus, minus] = half_pi_projections(s);
  if (frobenius_norm(plus) == 0.0) throw ValidationError("shortcut: i pi/2 is not an eigenphase of v");
  const auto& shape = s.base().shape();
  const Element& v = s.generator();
  const Element v_perp = v - i_times_difference(plus, minus, kPi / 2, shape);
  const double delta = kPi / 2 - spectral_norm(v_perp);
  if (delta <= s.tolerances().cluster) throw ValidationError("shortcut: eigenphase pi/2 is not isolated");
  const double bound = delta / (kPi - delta);
  if (!(eps > 0.0) || !(eps < bound))
    throw ValidationError("shortcut: eps must lie in (0, " + std::to_string(bound) + ")");
  const Element v2 = (1.0 - eps) * i_times_difference(minus, plus, kPi / 2, shape) + (1.0 + eps) * v_perp;
  const Projection& p = s.base();
  GeodesicState s2(p, TangentVector(p, bracket(v2, p.p())));
  Shortcut out{s2, geodesic_length(s2, 1.0), geodesic_length(s, 1.0 + eps), 0.0};
  out.endpoint_residual = frobenius_norm(geodesic_eval(s2, 1.0).p() - geodesic_eval(s, 1.0 + eps).p());
  if (out.endpoint_residual > 1e-9)
    throw CrossCheckError("shortcut: endpoint residual " + std::to_string(out.endpoint_residual));
  if (std::abs(out.length - (1.0 - eps) * kPi / 2) > 1e-9)
    throw CrossCheckError("shortcut: length is not (1 - eps) pi/2");
  return out;
}

Element exponent_reduction(const Element& v, const Tolerances& tol) {
  if (!v.is_skew(tol.structural)) throw ValidationError("exponent_reduction: input must be skew");
  const double cl = tol.cluster;
  return skew_function(
      v,
      [cl](double th) {
        double r = th - 2.0 * kPi * std::round(th / (2.0 * kPi));
        if (std::abs(std::abs(r) - kPi) <= cl) r = th >= 0 ? kPi : -kPi;
        return Scalar(0.0, r);
      },
      tol);
}

}  // namespace grassgeo
