#pragma once

// Block-matrix arithmetic and spectral calculus for finite direct sums of full
// matrix algebras M_n(R) and M_n(C).
//
// Every block is stored as a complex dense matrix. Real blocks keep an exactly
// zero imaginary part: constructors reject imaginary residue above the
// structural tolerance and zero whatever remains.

#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "grassgeo/error.hpp"

namespace grassgeo {

using Scalar = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

enum class Field { Real, Complex };

const char* to_string(Field f);
Field field_from_string(const std::string& s);

struct Tolerances {
  double structural = 1e-10;  // idempotency, adjointness, agreement checks
  double rank = 1e-9;         // singular values below this count as zero
  double cluster = 1e-8;      // eigenvalue grouping

  /// Throws ValidationError unless all are positive and rank >= structural.
  void validate() const;
};

struct BlockShape {
  int dim = 1;
  Field field = Field::Complex;

  bool operator==(const BlockShape&) const = default;
};

class AlgebraShape {
 public:
  AlgebraShape() = default;
  explicit AlgebraShape(std::vector<BlockShape> blocks);

  static AlgebraShape single(int dim, Field field) { return AlgebraShape({{dim, field}}); }

  std::size_t size() const { return blocks_.size(); }
  const BlockShape& operator[](std::size_t i) const { return blocks_[i]; }
  const std::vector<BlockShape>& blocks() const { return blocks_; }

  bool all_complex() const;
  /// Same block dimensions, every field replaced by C.
  AlgebraShape complexified() const;

  bool operator==(const AlgebraShape&) const = default;

 private:
  std::vector<BlockShape> blocks_;
};

class Element {
 public:
  Element() = default;
  Element(AlgebraShape shape, std::vector<Matrix> blocks);

  static Element zero(const AlgebraShape& shape);
  static Element identity(const AlgebraShape& shape);

  const AlgebraShape& shape() const { return shape_; }
  std::size_t num_blocks() const { return blocks_.size(); }
  const Matrix& block(std::size_t i) const { return blocks_[i]; }
  const std::vector<Matrix>& blocks() const { return blocks_; }

  Element adjoint() const;
  /// Sum of the block traces (unnormalized).
  Scalar trace() const;

  bool is_hermitian(double tol) const;
  bool is_skew(double tol) const;
  bool is_projection(double tol) const;
  bool is_unitary(double tol) const;

  Element& operator+=(const Element& o);
  Element& operator-=(const Element& o);
  Element& operator*=(Scalar s);

  friend Element operator+(Element a, const Element& b) { return a += b; }
  friend Element operator-(Element a, const Element& b) { return a -= b; }
  friend Element operator-(Element a) { return a *= Scalar(-1.0); }
  friend Element operator*(Scalar s, Element a) { return a *= s; }
  friend Element operator*(Element a, Scalar s) { return a *= s; }
  friend Element operator*(double s, Element a) { return a *= Scalar(s); }
  friend Element operator*(Element a, double s) { return a *= Scalar(s); }
  friend Element operator*(const Element& a, const Element& b);

 private:
  AlgebraShape shape_;
  std::vector<Matrix> blocks_;
};

/// Block-wise product; throws ShapeMismatch when shapes differ.
Element multiply(const Element& a, const Element& b);
/// Commutator ab - ba.
Element bracket(const Element& a, const Element& b);

struct Norms {
  double spectral = 0.0;
  double frobenius = 0.0;
};

Norms norms(const Element& a);
double spectral_norm(const Element& a);
double frobenius_norm(const Element& a);
/// Re tau(a b*), tau the sum of block traces.
double trace_inner(const Element& a, const Element& b);

enum class SpectralKind { Hermitian, Skew };

/// Spectral resolution of a Hermitian (or skew-adjoint) element. For skew input
/// the values are the imaginary parts of the eigenvalues, and the projections
/// live in the complexified algebra.
struct SpectralData {
  SpectralKind kind = SpectralKind::Hermitian;
  std::vector<double> values;  // ascending, clustered
  std::vector<Element> projections;
  double cluster_tolerance = 0.0;

  Element reconstruct() const;
};

SpectralData hermitian_eig(const Element& h, const Tolerances& tol = {});
/// Always treats the input as skew, even when it is zero.
SpectralData skew_eig(const Element& x, const Tolerances& tol = {});

Element expm_skew(const Element& x, const Tolerances& tol = {});
/// Principal logarithm, eigenphases in (-pi, pi). Refuses eigenvalue -1.
Element logm_unitary(const Element& u, const Tolerances& tol = {});

/// Polar data of a rectangular corner lambda = P V (1-P), stored as a full
/// element supported on ran(1-P) -> ran(P).
struct PolarData {
  Element omega;          // partial isometry, lambda = omega * abs
  Element abs;            // |lambda| = (lambda* lambda)^{1/2}
  Element abs_adjoint;    // |lambda*| = omega |lambda| omega*
  Element range;          // P_{|lambda|}  = omega* omega
  Element corange;        // P_{|lambda*|} = omega omega*
};

PolarData polar_rectangular(const Element& lambda, const Tolerances& tol = {});

/// Orthogonal projection onto the eigenvectors of h with eigenvalue within the
/// cluster tolerance of `value`; zero when there are none.
Element spectral_projection(const Element& h, double value, const Tolerances& tol = {});

/// Apply f to a Hermitian element through its eigendecomposition.
template <class F>
Element hermitian_function(const Element& h, F&& f);

/// Apply f(theta) to a skew element x = sum i*theta_a Q_a, f returning complex.
template <class F>
Element skew_function(const Element& x, F&& f, const Tolerances& tol = {});

namespace detail {

struct BlockEig {
  RealVector values;  // ascending
  Matrix vectors;     // orthonormal columns
};

/// Eigendecomposition of a Hermitian block; real arithmetic for real blocks.
BlockEig eigh(const Matrix& h, Field field);

struct BlockSvd {
  Matrix u;
  RealVector sigma;  // descending
  Matrix v;
};

/// Full SVD; real arithmetic for real blocks.
BlockSvd svd(const Matrix& a, Field field);

/// Orthonormal basis (columns) of the range of a Hermitian projection block.
Matrix range_basis(const Matrix& projection, Field field, double tol);

/// Drop the imaginary part of a real-field block, throwing if it is not
/// negligible relative to max(1, |m|).
Matrix realify(const Matrix& m, Field field, double tol, const char* what);

void require_same_shape(const Element& a, const Element& b, const char* op);

}  // namespace detail

// ---------------------------------------------------------------------------

template <class F>
Element hermitian_function(const Element& h, F&& f) {
  std::vector<Matrix> out;
  out.reserve(h.num_blocks());
  for (std::size_t b = 0; b < h.num_blocks(); ++b) {
    const auto eig = detail::eigh(h.block(b), h.shape()[b].field);
    Eigen::VectorXcd fv(eig.values.size());
    for (Eigen::Index i = 0; i < eig.values.size(); ++i) fv(i) = Scalar(f(eig.values(i)));
    out.push_back(eig.vectors * fv.asDiagonal() * eig.vectors.adjoint());
  }
  return Element(h.shape(), std::move(out));
}

template <class F>
Element skew_function(const Element& x, F&& f, const Tolerances& tol) {
  std::vector<Matrix> out;
  out.reserve(x.num_blocks());
  for (std::size_t b = 0; b < x.num_blocks(); ++b) {
    const Matrix h = Scalar(0.0, -1.0) * x.block(b);
    const auto eig = detail::eigh(0.5 * (h + h.adjoint()), Field::Complex);
    Eigen::VectorXcd fv(eig.values.size());
    for (Eigen::Index i = 0; i < eig.values.size(); ++i) fv(i) = Scalar(f(eig.values(i)));
    Matrix m = eig.vectors * fv.asDiagonal() * eig.vectors.adjoint();
    out.push_back(detail::realify(m, x.shape()[b].field, tol.structural, "skew_function"));
  }
  return Element(x.shape(), std::move(out));
}

}  // namespace grassgeo
