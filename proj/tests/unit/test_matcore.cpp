#include "support.hpp"

using namespace grassgeo;
using namespace support;

TEST_CASE("shapes and fields") {
  CHECK(field_from_string("real") == Field::Real);
  CHECK(field_from_string("C") == Field::Complex);
  CHECK_THROWS_AS(field_from_string("quaternion"), ValidationError);
  CHECK_THROWS_AS(AlgebraShape({{0, Field::Real}}), ValidationError);
  const AlgebraShape s({{2, Field::Real}, {3, Field::Complex}});
  CHECK_FALSE(s.all_complex());
  CHECK(s.complexified().all_complex());
}

TEST_CASE("tolerances validate") {
  Tolerances t;
  CHECK_NOTHROW(t.validate());
  t.rank = 0.0;
  CHECK_THROWS_AS(t.validate(), ValidationError);
  t = Tolerances{};
  t.rank = 1e-12;  // below structural
  CHECK_THROWS_AS(t.validate(), ValidationError);
}

TEST_CASE("real blocks reject complex entries") {
  CHECK_THROWS_AS(single(mat({{0, Scalar(0, 1)}, {0, 0}}), Field::Real), ValidationError);
}

TEST_CASE("shape mismatch is reported") {
  const Element a = single(Matrix::Identity(2, 2));
  const Element b = single(Matrix::Identity(3, 3));
  CHECK_THROWS_AS(a + b, ShapeMismatch);
  CHECK_THROWS_AS(bracket(a, b), ShapeMismatch);
}

TEST_CASE("multiply and bracket") {
  rnd::Rng rng(1);
  const AlgebraShape shape({{3, Field::Complex}, {2, Field::Real}});
  const Element x = rnd::hermitian(shape, rng);
  CHECK(dist(multiply(Element::identity(shape), x), x) == 0.0);
  CHECK(frobenius_norm(bracket(x, x)) == 0.0);

  // Pauli-like pair against a scalar triple loop.
  const Matrix a = mat({{0, 1}, {1, 0}});
  const Matrix b = mat({{0, Scalar(0, -1)}, {Scalar(0, 1), 0}});
  Matrix naive = Matrix::Zero(2, 2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k) naive(i, j) += a(i, k) * b(k, j) - b(i, k) * a(k, j);
  CHECK((bracket(single(a), single(b)).block(0) - naive).norm() < 1e-15);
}

TEST_CASE("spectral decomposition") {
  SUBCASE("diag(1, -1)") {
    const auto sd = hermitian_eig(single(mat({{1, 0}, {0, -1}})));
    REQUIRE(sd.values.size() == 2);
    CHECK(sd.values[0] == doctest::Approx(-1.0));
    CHECK(sd.values[1] == doctest::Approx(1.0));
    for (const auto& q : sd.projections) CHECK(std::abs(q.trace().real() - 1.0) < 1e-12);
  }
  SUBCASE("reflection") {
    const auto sd = hermitian_eig(single(mat({{0, 1}, {1, 0}})));
    REQUIRE(sd.values.size() == 2);
    CHECK(sd.values[0] == doctest::Approx(-1.0));
    CHECK(sd.values[1] == doctest::Approx(1.0));
  }
  SUBCASE("clusters across blocks and reconstructs") {
    rnd::Rng rng(2);
    const AlgebraShape shape({{3, Field::Real}, {4, Field::Complex}});
    const Element h = rnd::hermitian(shape, rng);
    const auto sd = hermitian_eig(h);
    CHECK(dist(sd.reconstruct(), h) < 1e-12);
    Element sum = Element::zero(shape);
    for (const auto& q : sd.projections) {
      CHECK(q.is_projection(1e-12));
      sum += q;
    }
    CHECK(dist(sum, Element::identity(shape)) < 1e-12);
  }
  SUBCASE("skew spectrum of a real rotation generator") {
    const Element x = single(mat({{0, 1}, {-1, 0}}), Field::Real);
    const auto sd = skew_eig(x);
    REQUIRE(sd.values.size() == 2);
    CHECK(sd.values[0] == doctest::Approx(-1.0));
    CHECK(sd.values[1] == doctest::Approx(1.0));
    CHECK(sd.projections[0].shape().all_complex());
    CHECK(dist(sd.reconstruct(), Element(x.shape().complexified(), x.blocks())) < 1e-12);
  }
}

TEST_CASE("expm and logm") {
  const double th = kPi / 3;
  const Element x = single(th * mat({{0, 1}, {-1, 0}}), Field::Real);
  CHECK(dist(expm_skew(Element::zero(x.shape())), Element::identity(x.shape())) == 0.0);
  const Element u = expm_skew(x);
  const Element rot = single(mat({{std::cos(th), std::sin(th)}, {-std::sin(th), std::cos(th)}}), Field::Real);
  CHECK(dist(u, rot) < 1e-14);
  CHECK(dist(logm_unitary(u), x) < 1e-14);

  rnd::Rng rng(3);
  for (int i = 0; i < 20; ++i) {
    const AlgebraShape shape = random_shape(rng, 3, 5);
    Element y = rnd::skew(shape, rng);
    y = (1.5 / spectral_norm(y)) * y;
    CHECK(dist(logm_unitary(expm_skew(y)), y) < 1e-10);
  }
  CHECK_THROWS_AS(logm_unitary(single(-1.0 * Matrix::Identity(2, 2))), ValidationError);
}

TEST_CASE("polar decomposition") {
  SUBCASE("identity") {
    const auto pd = polar_rectangular(single(Matrix::Identity(2, 2)));
    CHECK(dist(pd.omega, single(Matrix::Identity(2, 2))) < 1e-14);
    CHECK(dist(pd.abs, single(Matrix::Identity(2, 2))) < 1e-14);
  }
  SUBCASE("zero") {
    const auto pd = polar_rectangular(single(Matrix::Zero(2, 2)));
    CHECK(frobenius_norm(pd.omega) == 0.0);
    CHECK(frobenius_norm(pd.abs) == 0.0);
  }
  SUBCASE("diag(1, 2/5)") {
    const Element l = single(mat({{1, 0}, {0, 0.4}}));
    const auto pd = polar_rectangular(l);
    CHECK(dist(pd.abs, l) < 1e-14);
    CHECK(dist(pd.omega, single(Matrix::Identity(2, 2))) < 1e-14);
    CHECK(dist(pd.omega * pd.abs, l) < 1e-14);
  }
  SUBCASE("random rectangular corner against an SVD") {
    rnd::Rng rng(4);
    const Matrix g = rnd::gaussian(5, 5, Field::Complex, rng);
    Matrix l = Matrix::Zero(5, 5);
    l.topRightCorner(2, 3) = g.topRightCorner(2, 3);
    const auto pd = polar_rectangular(single(l));
    CHECK(dist(pd.omega * pd.abs, single(l)) < 1e-12);
    CHECK(dist(pd.abs_adjoint, pd.omega * pd.abs * pd.omega.adjoint()) < 1e-12);
    CHECK(dist(pd.range, pd.omega.adjoint() * pd.omega) < 1e-12);
    CHECK(dist(pd.corange, pd.omega * pd.omega.adjoint()) < 1e-12);
    Eigen::JacobiSVD<Matrix> svd(l);
    CHECK(std::abs(pd.abs.trace().real() - svd.singularValues().sum()) < 1e-12);
  }
}

TEST_CASE("spectral projection") {
  CHECK(dist(spectral_projection(single(mat({{1, 0}, {0, 0}})), 1.0), single(unit(2, 0, 0))) < 1e-14);
  CHECK(frobenius_norm(spectral_projection(single(Matrix::Identity(2, 2)), 0.0)) == 0.0);

  const AlgebraShape shape({{2, Field::Complex}, {2, Field::Complex}});
  const Element abs_l(shape, {unit(2, 1, 1), 0.4 * unit(2, 1, 1)});
  const Element q = spectral_projection(abs_l, 0.4);
  CHECK(frobenius_norm(Element(shape, {q.block(0), Matrix::Zero(2, 2)})) < 1e-14);
  CHECK(std::abs(q.trace().real() - 1.0) < 1e-12);
}

TEST_CASE("norms and trace") {
  const AlgebraShape shape({{2, Field::Complex}, {2, Field::Complex}});
  const Element one = Element::identity(shape);
  CHECK(spectral_norm(one) == doctest::Approx(1.0));
  CHECK(one.trace().real() == doctest::Approx(4.0));

  rnd::Rng rng(5);
  for (int i = 0; i < 10; ++i) {
    const AlgebraShape s = random_shape(rng);
    const Element a = rnd::hermitian(s, rng) + rnd::skew(s, rng);
    const Element b = rnd::hermitian(s, rng);
    double top = 0.0;
    for (const auto& m : a.blocks()) top = std::max(top, Eigen::JacobiSVD<Matrix>(m).singularValues()(0));
    CHECK(spectral_norm(a) == doctest::Approx(top).epsilon(1e-12));
    CHECK(spectral_norm(a * b) <= spectral_norm(a) * spectral_norm(b) * (1 + 1e-12));
    std::vector<Matrix> us;
    for (const auto& bs : s.blocks()) us.push_back(rnd::unitary(bs.dim, bs.field, rng));
    const Element u(s, us);
    CHECK(spectral_norm(u * a * u.adjoint()) == doctest::Approx(spectral_norm(a)).epsilon(1e-12));
  }

  // A unit tangent has spectrum in [-1, 1] with 1 attained.
  const auto p = rnd::projection(AlgebraShape::single(4, Field::Complex), {2}, rng);
  const auto v = rnd::unit_tangent(p, rng);
  const auto sd = hermitian_eig(v.x());
  CHECK(sd.values.back() == doctest::Approx(1.0));
  CHECK(sd.values.front() >= -1.0 - 1e-12);
}
