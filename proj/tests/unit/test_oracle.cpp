#include "grassgeo/conjugate.hpp"
#include "grassgeo/jacobi.hpp"
#include "grassgeo/oracle.hpp"
#include "grassgeo/scenarios.hpp"
#include "support.hpp"

using namespace grassgeo;
using namespace support;

TEST_CASE("vectorization") {
  rnd::Rng rng(71);
  const Projection p = rnd::projection(AlgebraShape({{4, Field::Complex}, {3, Field::Real}}), rng);
  const auto basis = codiagonal_skew_basis(p);
  const auto id = oracle::vectorize([](const Element& x) { return x; }, basis);
  CHECK((id.matrix - RealMatrix::Identity(id.matrix.rows(), id.matrix.cols())).norm() < 1e-14);
  CHECK(oracle::nullity(id).dim == 0);

  // Leaving the span is a cross-check failure.
  CHECK_THROWS_AS(oracle::vectorize([&](const Element& x) { return x + p.p(); }, basis), CrossCheckError);
}

TEST_CASE("ad^2 v spectrum on the co-diagonal space") {
  rnd::Rng rng(72);
  const auto s = rnd::planted(6, 3, {1.0, 0.5, 0.2}, Field::Complex, rng);
  const Element& v = s.generator();
  const auto m = oracle::vectorize([&](const Element& x) { return bracket(v, bracket(v, x)); },
                                   codiagonal_skew_basis(s.base()));
  CHECK((m.matrix - m.matrix.transpose()).norm() < 1e-12);
  const Eigen::SelfAdjointEigenSolver<RealMatrix> es(m.matrix);
  const auto& vals = s.speed_spectrum().values;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const double e = es.eigenvalues()(i);
    CHECK(e <= 1e-12);
    CHECK(e >= -4.0 - 1e-12);
    double best = INFINITY;
    for (double a : vals)
      for (double b : vals) best = std::min(best, std::abs(e + (a - b) * (a - b)));
    CHECK(best < 1e-10);
  }
}

TEST_CASE("oracle operator matches dexp_matrix") {
  rnd::Rng rng(73);
  for (int i = 0; i < 10; ++i) {
    const auto s = random_state(rng, 3, 5);
    for (double t : {0.7, 2.9, 7.5})
      CHECK((oracle::sinhc_operator(s, t).matrix - dexp_matrix(s, t)).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("nullity") {
  const int n = 5;
  std::vector<Element> basis;
  for (int i = 0; i < n; ++i) basis.push_back(single(unit(n, i, i), Field::Real));
  const Element q = single(unit(n, 2, 2), Field::Real);
  const auto m = oracle::vectorize([&](const Element& x) { return x - q * x * q; }, basis);
  CHECK(oracle::nullity(m).dim == 1);

  // Complex projective plane at pi: the kernel has dimension 2n - 3 = 3.
  const auto cp2 = scenarios::projective_state(3, Field::Complex);
  CHECK(oracle::nullity(oracle::sinhc_operator(cp2, kPi)).dim == 3);
  CHECK(oracle::nullity(oracle::sinhc_operator(cp2, kPi / 2)).dim == 1);
}

TEST_CASE("finite-difference variation check") {
  rnd::Rng rng(74);
  const auto s = random_state(rng);
  const TangentVector zero(s.base(), Element::zero(s.base().shape()));
  CHECK(oracle::fd_variation_check(s, zero, zero, 1.2, 1e-4) < 1e-12);
  const auto x = rnd::tangent(s.base(), rng);
  const auto y = rnd::tangent(s.base(), rng);
  CHECK(oracle::fd_variation_check(s, x, y, 1.2, 1e-4) < 1e-6);
  const double r1 = oracle::fd_variation_check(s, x, y, 1.2, 1e-2);
  const double r2 = oracle::fd_variation_check(s, x, y, 1.2, 5e-3);
  CHECK(r1 / r2 == doctest::Approx(4.0).epsilon(0.05));
}

TEST_CASE("discretized epi demo") {
  CHECK(oracle::discretized_epi_demo(4).nullity == 0);
  const auto d8 = oracle::discretized_epi_demo(8);
  const auto d64 = oracle::discretized_epi_demo(64);
  CHECK(d64.min_singular < d8.min_singular);
  for (int n : {4, 8, 16, 32, 64}) CHECK(oracle::discretized_epi_demo(n).min_singular <= 2.0 / n + 1e-14);
}

TEST_CASE("brute-force join search") {
  rnd::Rng rng(75);
  const Projection p = rnd::projection(AlgebraShape::single(4, Field::Complex), {2}, rng);
  const Element x0 = rnd::codiagonal_skew(p, 1.2, rng);
  const Element u = expm_skew(x0);
  const Projection q(u * p.p() * u.adjoint());
  const auto found = oracle::brute_force_join(p, q, 8, 1);
  CHECK(found.found);
  const auto other = rnd::projection(AlgebraShape::single(4, Field::Complex), {1}, rng);
  CHECK_FALSE(oracle::brute_force_join(p, other, 4, 2).found);
}
