#pragma once

// Jacobi fields and the differential of the exponential map through analytic
// functions of ad v, evaluated as double spectral sums.

#include <vector>

#include "grassgeo/grassmann.hpp"

namespace grassgeo {

enum class AdFunction {
  One,    // 1
  Cosh,   // cosh z
  Sinhc,  // sinh z / z, 1 at 0
  F,      // (1 - e^{-z}) / z, 1 at 0
  G,      // (e^z - 1) / z, 1 at 0
};

Scalar ad_function_value(AdFunction f, Scalar z);

/// f(t ad v) for a fixed skew v: x -> sum_{a,b} f(i t (theta_a - theta_b)) Q_a x Q_b,
/// where -iv = sum theta_a Q_a.
class AdFunctionOperator {
 public:
  AdFunctionOperator(const Element& v, AdFunction f, double t, const Tolerances& tol = {});

  Element apply(const Element& x) const;

 private:
  AlgebraShape shape_;
  AdFunction f_;
  double t_;
  double tol_;
  std::vector<RealVector> theta_;  // per block
  std::vector<Matrix> frames_;     // per block eigenvectors of -iv
};

Element apply_fn_of_ad(const Element& v, AdFunction f, double t, const Element& x,
                       const Tolerances& tol = {});

/// mu(t) = e^{tv} { [cosh(t ad v) x, P] + t [sinhc(t ad v) y, P] } e^{-tv}.
TangentVector jacobi_field(const GeodesicState& s, const TangentVector& x, const TangentVector& y, double t);

/// D(Exp_P)_{TV}(Y) = e^{Tv} [sinhc(T ad v) y, P] e^{-Tv}.
TangentVector dexp(const GeodesicState& s, double big_t, const TangentVector& y);

/// Matrix of y -> sinhc(T ad v) y on the canonical basis of the skew co-diagonal space.
RealMatrix dexp_matrix(const GeodesicState& s, double big_t);

/// e^v F(ad v) w, the differential of exp at v in direction w.
Element lie_dexp(const Element& v, const Element& w, const Tolerances& tol = {});

}  // namespace grassgeo
