#include "grassgeo/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <unsupported/Eigen/MatrixFunctions>

#include "grassgeo/jacobi.hpp"

namespace grassgeo::oracle {

VectorizedOperator vectorize(const Operator& op, const std::vector<Element>& basis, double tol) {
  const auto n = static_cast<Eigen::Index>(basis.size());
  VectorizedOperator out{RealMatrix::Zero(n, n), basis};
  for (Eigen::Index j = 0; j < n; ++j) {
    const Element img = op(basis[j]);
    Element rest = img;
    for (Eigen::Index i = 0; i < n; ++i) {
      const double c = trace_inner(basis[i], img);
      out.matrix(i, j) = c;
      rest -= c * basis[i];
    }
    const double res = frobenius_norm(rest);
    if (res > tol * std::max(1.0, frobenius_norm(img)))
      throw CrossCheckError("vectorize: image of basis vector " + std::to_string(j) +
                            " leaves the span (residual " + std::to_string(res) + ")");
  }
  return out;
}

Nullity nullity(const VectorizedOperator& m, double rank_tol) {
  Nullity out;
  const auto n = m.matrix.cols();
  if (n == 0) return out;
  Eigen::JacobiSVD<RealMatrix> svd(m.matrix, Eigen::ComputeFullV);
  const double top = svd.singularValues()(0);
  out.singular_values = top > 0 ? RealVector(svd.singularValues() / top) : RealVector(RealVector::Zero(n));
  for (Eigen::Index k = 0; k < n; ++k) {
    if (out.singular_values(k) >= rank_tol) continue;
    ++out.dim;
    Element e = Element::zero(m.basis.front().shape());
    for (Eigen::Index i = 0; i < n; ++i) e += svd.matrixV()(i, k) * m.basis[i];
    out.basis.push_back(std::move(e));
  }
  return out;
}

namespace {

Scalar sinhc_direct(Scalar z) {
  if (z == Scalar(0.0)) return 1.0;
  return std::sinh(z) / z;
}

}  // namespace

VectorizedOperator sinhc_operator(const GeodesicState& s, double big_t) {
  const Element& v = s.generator();
  const auto& shape = v.shape();
  std::vector<Matrix> us;
  std::vector<Eigen::VectorXcd> ds;
  for (std::size_t b = 0; b < shape.size(); ++b) {
    Eigen::ComplexSchur<Matrix> schur(v.block(b));
    us.push_back(schur.matrixU());
    ds.push_back(schur.matrixT().diagonal());
  }
  auto op = [&](const Element& y) {
    std::vector<Matrix> out;
    for (std::size_t b = 0; b < shape.size(); ++b) {
      const Matrix& u = us[b];
      const Eigen::VectorXcd& d = ds[b];
      Matrix c = u.adjoint() * y.block(b) * u;
      for (Eigen::Index i = 0; i < c.rows(); ++i)
        for (Eigen::Index j = 0; j < c.cols(); ++j) c(i, j) *= sinhc_direct(big_t * (d(i) - d(j)));
      Matrix r = u * c * u.adjoint();
      if (shape[b].field == Field::Real) r = r.real().cast<Scalar>();
      out.push_back(std::move(r));
    }
    return Element(shape, std::move(out));
  };
  return vectorize(op, codiagonal_skew_basis(s.base()));
}

Element expm(const Element& a) {
  std::vector<Matrix> out;
  for (std::size_t b = 0; b < a.num_blocks(); ++b) {
    Matrix e = a.block(b).exp();
    if (a.shape()[b].field == Field::Real) e = e.real().cast<Scalar>();
    out.push_back(std::move(e));
  }
  return Element(a.shape(), std::move(out));
}

double fd_variation_check(const GeodesicState& s, const TangentVector& x, const TangentVector& y, double t,
                          double h) {
  const Element xs = bracket(x.x(), s.base().p());
  const Element ys = bracket(y.x(), s.base().p());
  const Element& v = s.generator();
  const Element& p = s.base().p();
  auto nu = [&](double sv) {
    const Element a = expm(sv * xs);
    const Element b = expm(t * (v + sv * ys));
    const Element ai = expm(-sv * xs);
    const Element bi = expm(-t * (v + sv * ys));
    return a * b * p * bi * ai;
  };
  const Element fd = (1.0 / (2.0 * h)) * (nu(h) - nu(-h));
  return frobenius_norm(fd - jacobi_field(s, x, y, t).x());
}

Element fd_dexp(const GeodesicState& s, double big_t, const TangentVector& y, double h) {
  const Element& p = s.base().p();
  const Element w0 = big_t * bracket(s.speed().x(), p);
  const Element dw = bracket(y.x(), p);
  auto ex = [&](double sv) {
    const Element w = w0 + sv * dw;
    return expm(w) * p * expm(-1.0 * w);
  };
  return (1.0 / (2.0 * h)) * (ex(h) - ex(-h));
}

EpiDemo discretized_epi_demo(int n, double rank_tol) {
  if (n < 1) throw ValidationError("grid size must be positive");
  RealVector absx(n);
  for (int i = 0; i < n; ++i) absx(i) = std::abs(-1.0 + (2.0 * i + 1.0) / n);
  const Eigen::VectorXcd d = absx.cast<Scalar>();
  auto op = [&](const Matrix& b) -> Matrix { return d.asDiagonal() * b + b * d.asDiagonal() - 2.0 * b; };

  const double inv = 1.0 / std::sqrt(2.0);
  std::vector<double> coeffs;
  auto probe = [&](const Matrix& e) {
    const Matrix img = op(e);
    const double c = (e.conjugate().cwiseProduct(img)).sum().real();
    if ((img - c * e).norm() > 1e-12 * std::max(1.0, img.norm()))
      throw CrossCheckError("epi demo: operator is not diagonal in the elementary skew basis");
    coeffs.push_back(c);
  };
  for (int i = 0; i < n; ++i) {
    Matrix e = Matrix::Zero(n, n);
    e(i, i) = Scalar(0.0, 1.0);
    probe(e);
    for (int j = i + 1; j < n; ++j) {
      Matrix a = Matrix::Zero(n, n);
      a(i, j) = inv;
      a(j, i) = -inv;
      probe(a);
      Matrix c = Matrix::Zero(n, n);
      c(i, j) = Scalar(0.0, inv);
      c(j, i) = Scalar(0.0, inv);
      probe(c);
    }
  }
  EpiDemo out;
  double top = 0.0;
  out.min_singular = std::numeric_limits<double>::infinity();
  for (double c : coeffs) {
    top = std::max(top, std::abs(c));
    out.min_singular = std::min(out.min_singular, std::abs(c));
  }
  for (double c : coeffs)
    if (std::abs(c) < rank_tol * top) ++out.nullity;
  return out;
}

JoinSearch brute_force_join(const Projection& p, const Projection& q, int restarts, std::uint64_t seed) {
  const auto basis = codiagonal_skew_basis(p);
  const auto m = static_cast<Eigen::Index>(basis.size());
  JoinSearch best;
  best.residual = std::numeric_limits<double>::infinity();
  if (m == 0) {
    best.residual = frobenius_norm(p.p() - q.p());
    best.found = best.residual < 1e-6;
    best.x = Element::zero(p.shape());
    return best;
  }
  auto assemble = [&](const RealVector& c) {
    Element x = Element::zero(p.shape());
    for (Eigen::Index i = 0; i < m; ++i) x += c(i) * basis[i];
    return x;
  };
  auto residual = [&](const RealVector& c) {
    const Element x = assemble(c);
    const Element r = expm(x) * p.p() * expm(-1.0 * x) - q.p();
    std::vector<double> flat;
    for (const auto& blk : r.blocks())
      for (Eigen::Index i = 0; i < blk.size(); ++i) {
        flat.push_back(blk(i).real());
        flat.push_back(blk(i).imag());
      }
    return RealVector(Eigen::Map<RealVector>(flat.data(), static_cast<Eigen::Index>(flat.size())));
  };

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(-2.0, 2.0);
  for (int r = 0; r < restarts; ++r) {
    RealVector c(m);
    for (Eigen::Index i = 0; i < m; ++i) c(i) = r == 0 ? 0.0 : uni(rng);
    RealVector res = residual(c);
    double mu = 1e-3;
    for (int it = 0; it < 200 && res.norm() > 1e-12; ++it) {
      RealMatrix jac(res.size(), m);
      constexpr double h = 1e-6;
      for (Eigen::Index k = 0; k < m; ++k) {
        RealVector cp = c, cm = c;
        cp(k) += h;
        cm(k) -= h;
        jac.col(k) = (residual(cp) - residual(cm)) / (2.0 * h);
      }
      const RealMatrix jtj = jac.transpose() * jac;
      const RealVector g = jac.transpose() * res;
      bool improved = false;
      for (int tries = 0; tries < 30; ++tries) {
        RealMatrix a = jtj;
        a.diagonal().array() += mu * (1.0 + jtj.diagonal().array());
        const RealVector step = a.ldlt().solve(-g);
        const RealVector cn = c + step;
        const RealVector rn = residual(cn);
        if (rn.norm() < res.norm()) {
          c = cn;
          res = rn;
          mu = std::max(mu / 3.0, 1e-12);
          improved = true;
          break;
        }
        mu *= 4.0;
      }
      if (!improved) break;
    }
    const double rn = res.norm();
    if (rn < best.residual) {
      best.residual = rn;
      best.x = assemble(c);
    }
    if (best.residual < 1e-8) break;
  }
  best.found = best.residual < 1e-6;
  return best;
}

}  // namespace grassgeo::oracle
