#pragma once

#include <cmath>
#include <numbers>
#include <random>

#include <doctest.h>

#include "grassgeo/grassmann.hpp"
#include "grassgeo/random.hpp"

namespace support {

using namespace grassgeo;

inline constexpr double kPi = std::numbers::pi;

inline Matrix mat(std::initializer_list<std::initializer_list<Scalar>> rows) {
  const auto n = static_cast<Eigen::Index>(rows.size());
  Matrix m(n, static_cast<Eigen::Index>(rows.begin()->size()));
  Eigen::Index i = 0;
  for (const auto& r : rows) {
    Eigen::Index j = 0;
    for (const auto& x : r) m(i, j++) = x;
    ++i;
  }
  return m;
}

inline Element single(const Matrix& m, Field f = Field::Complex) {
  return Element(AlgebraShape::single(static_cast<int>(m.rows()), f), {m});
}

inline Matrix unit(int n, int i, int j) {
  Matrix m = Matrix::Zero(n, n);
  m(i, j) = 1.0;
  return m;
}

inline double dist(const Element& a, const Element& b) { return frobenius_norm(a - b); }

// Random shape with 1..max_blocks blocks of size 2..max_dim, fields mixed.
inline AlgebraShape random_shape(rnd::Rng& rng, int max_blocks = 3, int max_dim = 4) {
  std::uniform_int_distribution<int> nb(1, max_blocks), dim(2, max_dim), coin(0, 1);
  std::vector<BlockShape> b;
  const int k = nb(rng);
  for (int i = 0; i < k; ++i) b.push_back({dim(rng), coin(rng) ? Field::Complex : Field::Real});
  return AlgebraShape(std::move(b));
}

// Random unit-speed geodesic with nonzero speed.
inline GeodesicState random_state(rnd::Rng& rng, int max_blocks = 3, int max_dim = 4) {
  for (;;) {
    const auto p = rnd::projection(random_shape(rng, max_blocks, max_dim), rng);
    const auto v = rnd::unit_tangent(p, rng);
    if (spectral_norm(v.x()) > 0.5) return GeodesicState(p, v);
  }
}

}  // namespace support
