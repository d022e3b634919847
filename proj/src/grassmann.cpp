#include "grassgeo/grassmann.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace grassgeo {

namespace {

double scale(const Element& a) { return std::max(1.0, frobenius_norm(a)); }

Element unit_i(const Element& a) { return Scalar(0.0, 1.0) * a; }

}  // namespace

Projection::Projection(Element p, Tolerances tol) : tol_(tol) {
  tol_.validate();
  if (!p.is_projection(tol_.structural))
    throw ValidationError("not an orthogonal projection (P^2 = P = P* fails)");
  p_ = 0.5 * (p + p.adjoint());
}

Element Projection::symmetry() const { return 2.0 * p_ - Element::identity(p_.shape()); }

Element Projection::complement() const { return Element::identity(p_.shape()) - p_; }

std::vector<int> Projection::ranks() const {
  std::vector<int> out;
  for (const auto& m : p_.blocks()) out.push_back(static_cast<int>(std::lround(m.trace().real())));
  return out;
}

TangentVector::TangentVector(Projection base, Element x) : base_(std::move(base)) {
  detail::require_same_shape(base_.p(), x, "tangent vector");
  const double tol = base_.tolerances().structural;
  if (!x.is_hermitian(tol)) throw ValidationError("tangent vector must be Hermitian");
  if (!is_codiagonal(x, base_, tol)) throw ValidationError("tangent vector is not P-co-diagonal");
  x_ = 0.5 * (x + x.adjoint());
}

Element TangentVector::skew() const { return bracket(x_, base_.p()); }

Element codiagonal_projection(const Element& a, const Projection& p) {
  const Element& pp = p.p();
  const Element q = p.complement();
  return pp * a * q + q * a * pp;
}

bool is_codiagonal(const Element& a, const Projection& p, double tol) {
  const Element& pp = p.p();
  return frobenius_norm(a * pp + pp * a - a) <= tol * scale(a);
}

TangentVector tangent_from_skew(const Element& x, const Projection& p) {
  const double tol = p.tolerances().structural;
  if (!x.is_skew(tol)) throw ValidationError("generator must be skew-adjoint");
  if (!is_codiagonal(x, p, tol)) throw ValidationError("generator is not P-co-diagonal");
  return TangentVector(p, bracket(x, p.p()));
}

Element skew_from_tangent(const TangentVector& v) { return v.skew(); }

std::vector<int> CornerAlgebra::dims() const {
  std::vector<int> out;
  for (const auto& f : frames) out.push_back(static_cast<int>(f.cols()));
  return out;
}

std::vector<Matrix> CornerAlgebra::compress(const Element& a) const {
  std::vector<Matrix> out;
  for (std::size_t b = 0; b < frames.size(); ++b)
    out.push_back(frames[b].adjoint() * a.block(b) * frames[b]);
  return out;
}

Element CornerAlgebra::expand(const std::vector<Matrix>& a, const AlgebraShape& shape) const {
  std::vector<Matrix> out;
  for (std::size_t b = 0; b < frames.size(); ++b) out.push_back(frames[b] * a[b] * frames[b].adjoint());
  return Element(shape, std::move(out));
}

GeodesicState::GeodesicState(Projection p, TangentVector v) : p_(std::move(p)), v_(std::move(v)) {
  detail::require_same_shape(p_.p(), v_.base().p(), "geodesic state");
  if (frobenius_norm(p_.p() - v_.base().p()) > p_.tolerances().structural * scale(p_.p()))
    throw ValidationError("speed is not based at P");
  const auto& tol = p_.tolerances();
  gen_ = v_.skew();
  spec_speed_ = hermitian_eig(v_.x(), tol);
  spec_gen_ = skew_eig(gen_, tol);
  lambda_ = p_.p() * v_.x() * p_.complement();
  polar_ = polar_rectangular(lambda_, tol);
  support_ = polar_.range + polar_.corange;
  for (std::size_t b = 0; b < p_.shape().size(); ++b) {
    const Field f = p_.shape()[b].field;
    corner_.frames.push_back(detail::range_basis(polar_.range.block(b), f, tol.structural));
    corner_.fields.push_back(f);
  }
}

GeodesicState::GeodesicState(const Element& p, const Element& v, const Tolerances& tol)
    : GeodesicState(Projection(p, tol), TangentVector(Projection(p, tol), v)) {}

GeodesicState GeodesicState::scaled(double c) const {
  return GeodesicState(p_, TangentVector(p_, c * v_.x()));
}

Element geodesic_eval_exp(const GeodesicState& s, double t) {
  const Element u = expm_skew(t * s.generator(), s.tolerances());
  return u * s.base().p() * u.adjoint();
}

Element geodesic_eval_block(const GeodesicState& s, double t) {
  const Element& p = s.base().p();
  const Element q = s.base().complement();
  const auto& pol = s.polar();
  const Element ul = p * hermitian_function(pol.abs_adjoint, [t](double x) {
                       const double c = std::cos(t * x);
                       return c * c;
                     }) * p;
  const Element ur = s.lambda() * hermitian_function(pol.abs, [t](double x) {
                       if (std::abs(x) < 1e-300) return t;
                       return std::cos(t * x) * std::sin(t * x) / x;
                     });
  const Element lr = q * hermitian_function(pol.abs, [t](double x) {
                       const double sn = std::sin(t * x);
                       return sn * sn;
                     }) * q;
  return ul + ur + ur.adjoint() + lr;
}

Projection geodesic_eval(const GeodesicState& s, double t) {
  const Element a = geodesic_eval_exp(s, t);
  const Element b = geodesic_eval_block(s, t);
  const double tol = s.tolerances().structural * std::max(1.0, std::abs(t));
  const double diff = frobenius_norm(a - b);
  if (diff > tol * scale(a))
    throw CrossCheckError("geodesic_eval: exponential and block formulas differ by " + std::to_string(diff));
  return Projection(a, s.tolerances());
}

TangentVector geodesic_velocity(const GeodesicState& s, double t) {
  const Element u = expm_skew(t * s.generator(), s.tolerances());
  return TangentVector(Projection(u * s.base().p() * u.adjoint(), s.tolerances()),
                       u * s.speed().x() * u.adjoint());
}

std::vector<Projection> sample_geodesic(const GeodesicState& s, double t0, double t1, int n) {
  if (n < 1) throw ValidationError("need at least one step");
  std::vector<Projection> out;
  out.reserve(n + 1);
  for (int i = 0; i <= n; ++i) out.push_back(geodesic_eval(s, t0 + (t1 - t0) * i / n));
  return out;
}

TangentVector parallel_transport_geodesic(const GeodesicState& s, const TangentVector& x, double t) {
  if (frobenius_norm(x.base().p() - s.base().p()) > s.tolerances().structural * scale(s.base().p()))
    throw ValidationError("vector is not tangent at the base point");
  const Element u = expm_skew(t * s.generator(), s.tolerances());
  return TangentVector(geodesic_eval(s, t), u * x.x() * u.adjoint());
}

std::vector<Element> grid_derivative(const std::vector<Element>& f, double h) {
  const std::size_t n = f.size();
  if (n < 5) throw ValidationError("grid derivative needs at least five samples");
  const double c = 1.0 / (12.0 * h);
  std::vector<Element> d;
  d.reserve(n);
  d.push_back(c * (-25.0 * f[0] + 48.0 * f[1] - 36.0 * f[2] + 16.0 * f[3] - 3.0 * f[4]));
  d.push_back(c * (-3.0 * f[0] - 10.0 * f[1] + 18.0 * f[2] - 6.0 * f[3] + f[4]));
  for (std::size_t i = 2; i + 2 < n; ++i) d.push_back(c * (f[i - 2] - 8.0 * f[i - 1] + 8.0 * f[i + 1] - f[i + 2]));
  const std::size_t m = n - 1;
  d.push_back(c * (3.0 * f[m] + 10.0 * f[m - 1] - 18.0 * f[m - 2] + 6.0 * f[m - 3] - f[m - 4]));
  d.push_back(c * (25.0 * f[m] - 48.0 * f[m - 1] + 36.0 * f[m - 2] - 16.0 * f[m - 3] + 3.0 * f[m - 4]));
  return d;
}

namespace {

// Cubic Lagrange value at the midpoint of [i, i+1].
Element midpoint(const std::vector<Element>& a, std::size_t i) {
  const std::size_t n = a.size();
  if (i == 0) return (5.0 * a[0] + 15.0 * a[1] - 5.0 * a[2] + a[3]) * (1.0 / 16.0);
  if (i + 2 >= n) {
    const std::size_t m = n - 1;
    return (5.0 * a[m] + 15.0 * a[m - 1] - 5.0 * a[m - 2] + a[m - 3]) * (1.0 / 16.0);
  }
  return (-1.0 * a[i - 1] + 9.0 * a[i] + 9.0 * a[i + 1] - a[i + 2]) * (1.0 / 16.0);
}

Element polar_factor(const Element& u) {
  const Element h = u.adjoint() * u;
  return u * hermitian_function(h, [](double x) { return 1.0 / std::sqrt(x); });
}

}  // namespace

std::vector<Element> horizontal_lift(const std::vector<Projection>& path, double t0, double t1) {
  const std::size_t n = path.size();
  if (n < 5) throw ValidationError("path needs at least five samples");
  const double h = (t1 - t0) / static_cast<double>(n - 1);
  std::vector<Element> ps;
  ps.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    detail::require_same_shape(path[i].p(), path[0].p(), "path");
    if (i > 0 && spectral_norm(path[i].p() - path[i - 1].p()) >= 0.1)
      throw ValidationError("path step " + std::to_string(i) + " too coarse (>= 0.1 in norm)");
    ps.push_back(path[i].p());
  }
  const auto dp = grid_derivative(ps, h);
  std::vector<Element> gen;
  gen.reserve(n);
  for (std::size_t i = 0; i < n; ++i) gen.push_back(bracket(dp[i], ps[i]));

  const Element one = Element::identity(ps[0].shape());
  std::vector<Element> us{one};
  us.reserve(n);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const Element& u = us.back();
    const Element am = midpoint(gen, i);
    const Element k1 = gen[i] * u;
    const Element k2 = am * (u + (0.5 * h) * k1);
    const Element k3 = am * (u + (0.5 * h) * k2);
    const Element k4 = gen[i + 1] * (u + h * k3);
    Element next = u + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    const double drift = frobenius_norm(next.adjoint() * next - one);
    if (drift > 1e-6) throw CrossCheckError("horizontal lift lost unitarity (" + std::to_string(drift) + ")");
    us.push_back(polar_factor(next));
  }
  return us;
}

TangentVector parallel_transport_path(const std::vector<Projection>& path, double t0, double t1,
                                      const TangentVector& x) {
  if (path.empty()) throw ValidationError("empty path");
  if (frobenius_norm(x.base().p() - path.front().p()) > 1e-8 * scale(x.base().p()))
    throw ValidationError("vector is not tangent at the start of the path");
  bool constant = true;
  for (const auto& q : path) constant = constant && frobenius_norm(q.p() - path.front().p()) == 0.0;
  if (constant) return TangentVector(path.back(), x.x());
  const auto us = horizontal_lift(path, t0, t1);
  const Element& u = us.back();
  Element y = u * x.x() * u.adjoint();
  return TangentVector(path.back(), codiagonal_projection(0.5 * (y + y.adjoint()), path.back()));
}

Element christoffel(const Projection& p, const Element& x, const Element& y) {
  const double tol = p.tolerances().structural;
  if (!is_codiagonal(x, p, tol) || !is_codiagonal(y, p, tol))
    throw ValidationError("christoffel: arguments must be P-co-diagonal");
  const Element a = p.symmetry() * (x * y + y * x);
  const Element b = bracket(x, bracket(y, p.p()));
  const double diff = frobenius_norm(a - b);
  if (diff > 1e-12 * std::max(1.0, frobenius_norm(x) * frobenius_norm(y)) * 10)
    throw CrossCheckError("christoffel: the two formulas differ by " + std::to_string(diff));
  return a;
}

std::vector<Element> covariant_derivative(const std::vector<Projection>& path,
                                          const std::vector<Element>& field, double t0, double t1,
                                          Presentation which) {
  const std::size_t n = path.size();
  if (field.size() != n) throw ValidationError("field and path have different sample counts");
  const double h = (t1 - t0) / static_cast<double>(n - 1);
  std::vector<Element> ps;
  for (const auto& q : path) ps.push_back(q.p());
  const auto dp = grid_derivative(ps, h);
  const auto dx = grid_derivative(field, h);

  std::vector<Element> hor, chr, red;
  for (std::size_t i = 0; i < n; ++i) {
    hor.push_back(codiagonal_projection(dx[i], path[i]));
    chr.push_back(dx[i] + path[i].symmetry() * (field[i] * dp[i] + dp[i] * field[i]));
  }
  const auto us = horizontal_lift(path, t0, t1);
  std::vector<Element> pulled;
  for (std::size_t i = 0; i < n; ++i) pulled.push_back(us[i].adjoint() * field[i] * us[i]);
  const auto dpulled = grid_derivative(pulled, h);
  for (std::size_t i = 0; i < n; ++i) red.push_back(us[i] * dpulled[i] * us[i].adjoint());

  double sc = 1.0;
  for (std::size_t i = 0; i < n; ++i) sc = std::max(sc, frobenius_norm(dx[i]));
  for (std::size_t i = 0; i < n; ++i) {
    const double d1 = frobenius_norm(hor[i] - red[i]);
    const double d2 = frobenius_norm(hor[i] - chr[i]);
    if (d1 > 1e-6 * sc || d2 > 1e-6 * sc)
      throw CrossCheckError("covariant_derivative: presentations disagree at sample " + std::to_string(i) +
                            " (horizontal/reductive " + std::to_string(d1) + ", horizontal/christoffel " +
                            std::to_string(d2) + ")");
  }
  switch (which) {
    case Presentation::Horizontal: return hor;
    case Presentation::Reductive: return red;
    case Presentation::Christoffel: return chr;
  }
  return hor;
}

Element curvature(const Element& x, const Element& y, const Element& z) {
  return -1.0 * bracket(bracket(x, y), z);
}

double sectional(const Projection& p, const Element& x, const Element& y) {
  const double tol = p.tolerances().structural;
  if (!is_codiagonal(x, p, tol) || !is_codiagonal(y, p, tol))
    throw ValidationError("sectional: arguments must be tangent");
  constexpr double ortho = 1e-8;
  if (std::abs(trace_inner(x, x) - 1.0) > ortho || std::abs(trace_inner(y, y) - 1.0) > ortho ||
      std::abs(trace_inner(x, y)) > ortho)
    throw ValidationError("sectional: X, Y must be orthonormal");
  const Element xy = x * y;
  const Element yx = y * x;
  const double n = frobenius_norm(xy);
  return -trace_inner(xy, yx) + n * n;
}

TangentVector complex_structure(const TangentVector& x) {
  if (!x.x().shape().all_complex()) throw ValidationError("complex structure needs complex blocks");
  return TangentVector(x.base(), unit_i(bracket(x.base().p(), x.x())));
}

double kks_form(const TangentVector& x, const TangentVector& y) {
  detail::require_same_shape(x.x(), y.x(), "kks_form");
  const Element& p = x.base().p();
  const double w1 = -trace_inner(x.x(), complex_structure(y).x());
  const Scalar w2 = Scalar(0.0, -1.0) * (p * bracket(x.skew(), y.skew())).trace();
  const double sc = std::max(1.0, frobenius_norm(x.x()) * frobenius_norm(y.x()));
  if (std::abs(w2.imag()) > 1e-9 * sc || std::abs(w2.real() - w1) > 1e-9 * sc)
    throw CrossCheckError("kks_form: metric and trace expressions disagree");
  return w1;
}

double moment(const Projection& p, const Element& x) {
  if (!x.is_skew(p.tolerances().structural)) throw ValidationError("moment: X must be skew");
  return (Scalar(0.0, 1.0) * (p.p() * x).trace()).real();
}

Projection geodesic_symmetry(const Projection& p, const Projection& q) {
  const Element s = p.symmetry();
  return Projection(s * q.p() * s, p.tolerances());
}

std::vector<Element> codiagonal_skew_basis(const Projection& p) {
  const auto& shape = p.shape();
  std::vector<Element> out;
  const double inv = 1.0 / std::sqrt(2.0);
  for (std::size_t b = 0; b < shape.size(); ++b) {
    const int n = shape[b].dim;
    const Field f = shape[b].field;
    const auto eig = detail::eigh(p.p().block(b), f);
    std::vector<Eigen::Index> top, bottom;
    for (Eigen::Index i = 0; i < n; ++i) (eig.values(i) > 0.5 ? top : bottom).push_back(i);
    Matrix w(n, n);
    Eigen::Index c = 0;
    for (auto i : top) w.col(c++) = eig.vectors.col(i);
    for (auto i : bottom) w.col(c++) = eig.vectors.col(i);
    const int r = static_cast<int>(top.size());
    for (int i = 0; i < r; ++i) {
      for (int j = 0; j < n - r; ++j) {
        for (int part = 0; part < (f == Field::Complex ? 2 : 1); ++part) {
          const Scalar e = part == 0 ? Scalar(1.0) : Scalar(0.0, 1.0);
          Matrix m = Matrix::Zero(n, n);
          m(i, r + j) = -e;
          m(r + j, i) = std::conj(e);
          std::vector<Matrix> blocks;
          for (std::size_t k = 0; k < shape.size(); ++k)
            blocks.push_back(k == b ? Matrix(inv * (w * m * w.adjoint())) : Matrix::Zero(shape[k].dim, shape[k].dim));
          out.emplace_back(shape, std::move(blocks));
        }
      }
    }
  }
  return out;
}

}  // namespace grassgeo
