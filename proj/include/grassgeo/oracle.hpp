#pragma once

// Brute-force and finite-difference verifiers. Nothing here calls into the
// jacobi or conjugate modules' evaluation paths; exponentials use Eigen's
// Pade-based matrix exponential and functions of ad v use their own loop.

#include <cstdint>
#include <functional>
#include <vector>

#include "grassgeo/grassmann.hpp"

namespace grassgeo::oracle {

using Operator = std::function<Element(const Element&)>;

struct VectorizedOperator {
  RealMatrix matrix;
  std::vector<Element> basis;  // orthonormal for trace_inner; domain = codomain
};

/// Column j = coordinates of op(basis[j]). Throws CrossCheckError when an image
/// leaves the span of the basis.
VectorizedOperator vectorize(const Operator& op, const std::vector<Element>& basis, double tol = 1e-9);

struct Nullity {
  int dim = 0;
  std::vector<Element> basis;
  RealVector singular_values;  // of the normalized operator, descending
};

/// SVD after scaling to unit spectral norm; singular values below rank_tol count as zero.
Nullity nullity(const VectorizedOperator& m, double rank_tol = 1e-9);

/// sinhc(T ad v) on the canonical co-diagonal skew basis, evaluated through a
/// complex Schur form of v and an explicit double loop.
VectorizedOperator sinhc_operator(const GeodesicState& s, double big_t);

/// Matrix exponential of an arbitrary element (Pade scaling and squaring).
Element expm(const Element& a);

/// || d/ds nu_s(t) |_{s=0} - jacobi_field || in Frobenius norm, with
/// nu_s(t) = e^{sx} e^{t(v+sy)} P e^{-t(v+sy)} e^{-sx} and central differences.
double fd_variation_check(const GeodesicState& s, const TangentVector& x, const TangentVector& y, double t,
                          double h);

/// Central difference of s -> Exp_P(T V + s Y) at s = 0.
Element fd_dexp(const GeodesicState& s, double big_t, const TangentVector& y, double h);

struct EpiDemo {
  double min_singular = 0.0;
  int nullity = 0;
};

/// L + R - 2 on complex skew N x N matrices with |lambda| = diag(|x_i|),
/// x_i = -1 + (2i + 1)/N.
EpiDemo discretized_epi_demo(int n, double rank_tol = 1e-9);

struct JoinSearch {
  bool found = false;
  double residual = 0.0;
  Element x;
};

/// Searches a skew P-co-diagonal x with e^x P e^{-x} = Q by gradient descent
/// from random restarts.
JoinSearch brute_force_join(const Projection& p, const Projection& q, int restarts, std::uint64_t seed);

}  // namespace grassgeo::oracle
