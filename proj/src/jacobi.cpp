#include "grassgeo/jacobi.hpp"

#include <cmath>

namespace grassgeo {

Scalar ad_function_value(AdFunction f, Scalar z) {
  const double r = std::abs(z);
  switch (f) {
    case AdFunction::One: return 1.0;
    case AdFunction::Cosh: return std::cosh(z);
    case AdFunction::Sinhc: return r == 0.0 ? Scalar(1.0) : std::sinh(z) / z;
    case AdFunction::F:
      if (r < 1e-3) return 1.0 - z / 2.0 + z * z / 6.0 - z * z * z / 24.0 + z * z * z * z / 120.0;
      return (1.0 - std::exp(-z)) / z;
    case AdFunction::G:
      if (r < 1e-3) return 1.0 + z / 2.0 + z * z / 6.0 + z * z * z / 24.0 + z * z * z * z / 120.0;
      return (std::exp(z) - 1.0) / z;
  }
  return 1.0;
}

AdFunctionOperator::AdFunctionOperator(const Element& v, AdFunction f, double t, const Tolerances& tol)
    : shape_(v.shape()), f_(f), t_(t), tol_(tol.structural) {
  if (!v.is_skew(tol.structural)) throw ValidationError("ad-function generator must be skew");
  for (std::size_t b = 0; b < v.num_blocks(); ++b) {
    const Matrix h = Scalar(0.0, -1.0) * v.block(b);
    const auto eig = detail::eigh(h, Field::Complex);
    theta_.push_back(eig.values);
    frames_.push_back(eig.vectors);
  }
}

Element AdFunctionOperator::apply(const Element& x) const {
  if (!(x.shape() == shape_)) throw ShapeMismatch("ad-function argument shape");
  std::vector<Matrix> out;
  for (std::size_t b = 0; b < shape_.size(); ++b) {
    const Matrix& q = frames_[b];
    Matrix c = q.adjoint() * x.block(b) * q;
    const RealVector& th = theta_[b];
    for (Eigen::Index i = 0; i < c.rows(); ++i)
      for (Eigen::Index j = 0; j < c.cols(); ++j)
        c(i, j) *= ad_function_value(f_, Scalar(0.0, t_ * (th(i) - th(j))));
    Matrix m = q * c * q.adjoint();
    const double sc = std::max(1.0, x.block(b).cwiseAbs().maxCoeff());
    out.push_back(detail::realify(m, shape_[b].field, 1e-9 * sc, "ad-function"));
  }
  return Element(shape_, std::move(out));
}

Element apply_fn_of_ad(const Element& v, AdFunction f, double t, const Element& x, const Tolerances& tol) {
  return AdFunctionOperator(v, f, t, tol).apply(x);
}

namespace {

void require_based(const GeodesicState& s, const TangentVector& x) {
  if (frobenius_norm(x.base().p() - s.base().p()) > 1e-8 * std::max(1.0, frobenius_norm(s.base().p())))
    throw ValidationError("vector is not tangent at the geodesic's base point");
}

Element codiag_hermitian(const Element& a, const Projection& p) {
  return codiagonal_projection(0.5 * (a + a.adjoint()), p);
}

}  // namespace

TangentVector jacobi_field(const GeodesicState& s, const TangentVector& x, const TangentVector& y, double t) {
  require_based(s, x);
  require_based(s, y);
  const auto& tol = s.tolerances();
  const Element& v = s.generator();
  const Element& p = s.base().p();
  const Element a = AdFunctionOperator(v, AdFunction::Cosh, t, tol).apply(x.skew());
  const Element b = AdFunctionOperator(v, AdFunction::Sinhc, t, tol).apply(y.skew());
  const Element inner = bracket(a, p) + t * bracket(b, p);
  const Element u = expm_skew(t * v, tol);
  const Projection at = geodesic_eval(s, t);
  return TangentVector(at, codiag_hermitian(u * inner * u.adjoint(), at));
}

TangentVector dexp(const GeodesicState& s, double big_t, const TangentVector& y) {
  require_based(s, y);
  const auto& tol = s.tolerances();
  const Element& v = s.generator();
  const Element b = AdFunctionOperator(v, AdFunction::Sinhc, big_t, tol).apply(y.skew());
  const Element u = expm_skew(big_t * v, tol);
  const Projection at = geodesic_eval(s, big_t);
  return TangentVector(at, codiag_hermitian(u * bracket(b, s.base().p()) * u.adjoint(), at));
}

RealMatrix dexp_matrix(const GeodesicState& s, double big_t) {
  const auto basis = codiagonal_skew_basis(s.base());
  const AdFunctionOperator op(s.generator(), AdFunction::Sinhc, big_t, s.tolerances());
  const auto n = static_cast<Eigen::Index>(basis.size());
  RealMatrix m(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const Element img = op.apply(basis[j]);
    for (Eigen::Index i = 0; i < n; ++i) m(i, j) = trace_inner(basis[i], img);
  }
  return m;
}

Element lie_dexp(const Element& v, const Element& w, const Tolerances& tol) {
  if (!w.is_skew(tol.structural)) throw ValidationError("lie_dexp: direction must be skew");
  return expm_skew(v, tol) * AdFunctionOperator(v, AdFunction::F, 1.0, tol).apply(w);
}

}  // namespace grassgeo
