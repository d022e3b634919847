#include "grassgeo/random.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

#include <Eigen/QR>

namespace grassgeo::rnd {

std::uint64_t seed_from_env(std::uint64_t fallback) {
  const char* s = std::getenv("GRASSGEO_SEED");
  if (!s || !*s) return fallback;
  try {
    return std::stoull(s);
  } catch (const std::exception&) {
    throw ValidationError(std::string("GRASSGEO_SEED is not an unsigned integer: ") + s);
  }
}

Matrix gaussian(int rows, int cols, Field f, Rng& rng) {
  std::normal_distribution<double> nd;
  Matrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = f == Field::Real ? Scalar(nd(rng)) : Scalar(nd(rng), nd(rng));
  return m;
}

Matrix unitary(int n, Field f, Rng& rng) {
  const Matrix g = gaussian(n, n, f, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < n; ++i) {
    const double a = std::abs(r(i, i));
    if (a > 0) q.col(i) *= r(i, i) / a;
  }
  if (f == Field::Real) q = q.real().cast<Scalar>();
  return q;
}

Element hermitian(const AlgebraShape& shape, Rng& rng) {
  std::vector<Matrix> b;
  for (const auto& s : shape.blocks()) {
    const Matrix g = gaussian(s.dim, s.dim, s.field, rng);
    b.push_back(0.5 * (g + g.adjoint()));
  }
  return Element(shape, std::move(b));
}

Element skew(const AlgebraShape& shape, Rng& rng) {
  std::vector<Matrix> b;
  for (const auto& s : shape.blocks()) {
    const Matrix g = gaussian(s.dim, s.dim, s.field, rng);
    b.push_back(0.5 * (g - g.adjoint()));
  }
  return Element(shape, std::move(b));
}

Projection projection(const AlgebraShape& shape, const std::vector<int>& ranks, Rng& rng, const Tolerances& tol) {
  if (ranks.size() != shape.size()) throw ValidationError("one rank per block required");
  std::vector<Matrix> b;
  for (std::size_t i = 0; i < shape.size(); ++i) {
    const auto& s = shape[i];
    if (ranks[i] < 0 || ranks[i] > s.dim) throw ValidationError("rank out of range");
    const Matrix u = unitary(s.dim, s.field, rng);
    const Matrix c = u.leftCols(ranks[i]);
    b.push_back(c * c.adjoint());
  }
  return Projection(Element(shape, std::move(b)), tol);
}

Projection projection(const AlgebraShape& shape, Rng& rng, const Tolerances& tol) {
  std::vector<int> ranks;
  for (const auto& s : shape.blocks()) {
    if (s.dim == 1) {
      ranks.push_back(std::uniform_int_distribution<int>(0, 1)(rng));
    } else {
      ranks.push_back(std::uniform_int_distribution<int>(1, s.dim - 1)(rng));
    }
  }
  return projection(shape, ranks, rng, tol);
}

TangentVector tangent(const Projection& p, Rng& rng) {
  return TangentVector(p, codiagonal_projection(hermitian(p.shape(), rng), p));
}

TangentVector unit_tangent(const Projection& p, Rng& rng) {
  const TangentVector t = tangent(p, rng);
  const double n = spectral_norm(t.x());
  if (n == 0.0) return t;
  return TangentVector(p, (1.0 / n) * t.x());
}

Element codiagonal_skew(const Projection& p, double norm, Rng& rng) {
  const Element x = codiagonal_projection(skew(p.shape(), rng), p);
  const double n = spectral_norm(x);
  if (n == 0.0) return x;
  return (norm / n) * x;
}

GeodesicState planted(int m, int p, const std::vector<double>& sigma, Field f, Rng& rng) {
  if (p < 1 || p >= m) throw ValidationError("planted: need 1 <= p < m");
  if (static_cast<int>(sigma.size()) > std::min(p, m - p)) throw ValidationError("planted: too many singular values");
  const AlgebraShape shape = AlgebraShape::single(m, f);
  Matrix pm = Matrix::Zero(m, m);
  pm.topLeftCorner(p, p).setIdentity();
  Matrix vm = Matrix::Zero(m, m);
  for (std::size_t i = 0; i < sigma.size(); ++i) {
    vm(static_cast<Eigen::Index>(i), p + static_cast<Eigen::Index>(i)) = sigma[i];
    vm(p + static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = sigma[i];
  }
  const Matrix u = unitary(m, f, rng);
  return GeodesicState(Element(shape, {u * pm * u.adjoint()}), Element(shape, {u * vm * u.adjoint()}));
}

}  // namespace grassgeo::rnd
