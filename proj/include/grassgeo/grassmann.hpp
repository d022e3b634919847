#pragma once

// Projections, co-diagonal tangent calculus, geodesics, parallel transport,
// the connection in its three presentations, curvature and the Kahler extras.

#include <vector>

#include "grassgeo/matcore.hpp"

namespace grassgeo {

class Projection {
 public:
  Projection() = default;
  explicit Projection(Element p, Tolerances tol = {});

  const Element& p() const { return p_; }
  const AlgebraShape& shape() const { return p_.shape(); }
  const Tolerances& tolerances() const { return tol_; }
  /// s_P = 2P - 1.
  Element symmetry() const;
  Element complement() const;
  /// Rank of each block.
  std::vector<int> ranks() const;

 private:
  Element p_;
  Tolerances tol_;
};

/// Hermitian X with X = XP + PX at the base point P.
class TangentVector {
 public:
  TangentVector() = default;
  TangentVector(Projection base, Element x);

  const Projection& base() const { return base_; }
  const Element& x() const { return x_; }
  /// The skew generator [X, P].
  Element skew() const;

 private:
  Projection base_;
  Element x_;
};

/// PA(1-P) + (1-P)AP.
Element codiagonal_projection(const Element& a, const Projection& p);
bool is_codiagonal(const Element& a, const Projection& p, double tol);

/// X = [x, P] for skew co-diagonal x.
TangentVector tangent_from_skew(const Element& x, const Projection& p);
/// x = [X, P].
Element skew_from_tangent(const TangentVector& v);

/// Compression of A to the corner P_{|lambda|} A P_{|lambda|}, one orthonormal
/// frame per block. A block of the corner may be empty.
struct CornerAlgebra {
  std::vector<Matrix> frames;  // n_b x r_b, orthonormal columns
  std::vector<Field> fields;

  std::vector<int> dims() const;
  std::vector<Matrix> compress(const Element& a) const;
  Element expand(const std::vector<Matrix>& a, const AlgebraShape& shape) const;
};

/// Everything derived from a base point and an initial speed.
class GeodesicState {
 public:
  GeodesicState(Projection p, TangentVector v);
  /// Convenience constructor validating V as tangent at P.
  GeodesicState(const Element& p, const Element& v, const Tolerances& tol = {});

  const Projection& base() const { return p_; }
  const TangentVector& speed() const { return v_; }
  const Element& generator() const { return gen_; }
  const Tolerances& tolerances() const { return p_.tolerances(); }
  const SpectralData& speed_spectrum() const { return spec_speed_; }
  const SpectralData& generator_spectrum() const { return spec_gen_; }

  /// lambda = P V (1 - P) and its polar data.
  const Element& lambda() const { return lambda_; }
  const PolarData& polar() const { return polar_; }
  /// P_v = P_{|lambda|} + P_{|lambda*|}.
  const Element& support() const { return support_; }
  const CornerAlgebra& corner() const { return corner_; }

  /// Same base point, speed multiplied by c.
  GeodesicState scaled(double c) const;

 private:
  Projection p_;
  TangentVector v_;
  Element gen_;
  SpectralData spec_speed_;
  SpectralData spec_gen_;
  Element lambda_;
  PolarData polar_;
  Element support_;
  CornerAlgebra corner_;
};

/// gamma(t) by conjugation with e^{tv}.
Element geodesic_eval_exp(const GeodesicState& s, double t);
/// gamma(t) by the closed block formula in lambda, |lambda|, |lambda*|.
Element geodesic_eval_block(const GeodesicState& s, double t);
/// gamma(t); both routes are evaluated and must agree.
Projection geodesic_eval(const GeodesicState& s, double t);
/// gamma'(t) = e^{tv} V e^{-tv}.
TangentVector geodesic_velocity(const GeodesicState& s, double t);

/// Uniform samples gamma(t0 + i (t1 - t0) / n), i = 0..n.
std::vector<Projection> sample_geodesic(const GeodesicState& s, double t0, double t1, int n);

TangentVector parallel_transport_geodesic(const GeodesicState& s, const TangentVector& x, double t);

/// Horizontal lift U_i along a uniformly sampled path on [t0, t1]: U' = [P', P] U,
/// U_0 = 1, classical RK4 with fourth-order difference derivatives, polar
/// re-unitarization after every step.
std::vector<Element> horizontal_lift(const std::vector<Projection>& path, double t0, double t1);
TangentVector parallel_transport_path(const std::vector<Projection>& path, double t0, double t1,
                                      const TangentVector& x);

/// Gamma_P(X, Y) = s_P (XY + YX); cross-checked against [X, [Y, P]].
Element christoffel(const Projection& p, const Element& x, const Element& y);

enum class Presentation { Horizontal, Reductive, Christoffel };

/// Covariant derivative of a field sampled on the same uniform grid as the path.
/// All presentations are computed; horizontal and reductive must agree.
std::vector<Element> covariant_derivative(const std::vector<Projection>& path,
                                          const std::vector<Element>& field, double t0, double t1,
                                          Presentation which = Presentation::Horizontal);

/// R(X, Y)Z = -[[X, Y], Z].
Element curvature(const Element& x, const Element& y, const Element& z);
/// -<XY, YX> + ||XY||_2^2 for orthonormal X, Y.
double sectional(const Projection& p, const Element& x, const Element& y);

/// J(X) = i[P, X]; complex blocks only.
TangentVector complex_structure(const TangentVector& x);
/// omega_P(X, Y) = -<X, JY>, cross-checked against -i tau(P [x, y]).
double kks_form(const TangentVector& x, const TangentVector& y);
/// mu^X(P) = Re(i tau(P X)) for skew X.
double moment(const Projection& p, const Element& x);
/// S_P(Q) = s_P Q s_P.
Projection geodesic_symmetry(const Projection& p, const Projection& q);

/// Canonical orthonormal real basis of the skew P-co-diagonal space, ordered by
/// (block, row, column, re/im) in the eigenframe of P with ran P first.
std::vector<Element> codiagonal_skew_basis(const Projection& p);

/// Fourth-order finite-difference derivative of uniformly spaced samples.
std::vector<Element> grid_derivative(const std::vector<Element>& samples, double h);

}  // namespace grassgeo
