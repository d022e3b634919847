#include "grassgeo/matcore.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace grassgeo {

const char* to_string(Field f) { return f == Field::Real ? "real" : "complex"; }

Field field_from_string(const std::string& s) {
  if (s == "real" || s == "R" || s == "r") return Field::Real;
  if (s == "complex" || s == "C" || s == "c") return Field::Complex;
  throw ValidationError("unknown field '" + s + "' (expected real or complex)");
}

void Tolerances::validate() const {
  if (!(structural > 0) || !(rank > 0) || !(cluster > 0))
    throw ValidationError("tolerances must be strictly positive");
  if (rank < structural) throw ValidationError("rank tolerance must be >= structural tolerance");
}

AlgebraShape::AlgebraShape(std::vector<BlockShape> blocks) : blocks_(std::move(blocks)) {
  if (blocks_.empty()) throw ValidationError("algebra needs at least one block");
  for (const auto& b : blocks_)
    if (b.dim < 1) throw ValidationError("block dimension must be >= 1");
}

bool AlgebraShape::all_complex() const {
  return std::all_of(blocks_.begin(), blocks_.end(),
                     [](const BlockShape& b) { return b.field == Field::Complex; });
}

AlgebraShape AlgebraShape::complexified() const {
  auto out = blocks_;
  for (auto& b : out) b.field = Field::Complex;
  return AlgebraShape(std::move(out));
}

namespace detail {

Matrix realify(const Matrix& m, Field field, double tol, const char* what) {
  if (field == Field::Complex) return m;
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  const double im = m.size() ? m.imag().cwiseAbs().maxCoeff() : 0.0;
  if (im > tol * scale)
    throw ValidationError(std::string(what) + ": real block acquired imaginary part " +
                          std::to_string(im));
  return m.real().cast<Scalar>();
}

void require_same_shape(const Element& a, const Element& b, const char* op) {
  if (!(a.shape() == b.shape())) throw ShapeMismatch(std::string(op) + ": shape mismatch");
}

BlockEig eigh(const Matrix& h, Field field) {
  BlockEig out;
  if (field == Field::Real) {
    const RealMatrix r = 0.5 * (h.real() + h.real().transpose());
    Eigen::SelfAdjointEigenSolver<RealMatrix> es(r);
    out.values = es.eigenvalues();
    out.vectors = es.eigenvectors().cast<Scalar>();
  } else {
    const Matrix c = 0.5 * (h + h.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> es(c);
    out.values = es.eigenvalues();
    out.vectors = es.eigenvectors();
  }
  return out;
}

BlockSvd svd(const Matrix& a, Field field) {
  BlockSvd out;
  if (field == Field::Real) {
    Eigen::JacobiSVD<RealMatrix> s(a.real(), Eigen::ComputeFullU | Eigen::ComputeFullV);
    out.u = s.matrixU().cast<Scalar>();
    out.sigma = s.singularValues();
    out.v = s.matrixV().cast<Scalar>();
  } else {
    Eigen::JacobiSVD<Matrix> s(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
    out.u = s.matrixU();
    out.sigma = s.singularValues();
    out.v = s.matrixV();
  }
  return out;
}

Matrix range_basis(const Matrix& projection, Field field, double tol) {
  (void)tol;
  const auto eig = eigh(projection, field);
  std::vector<Eigen::Index> cols;
  for (Eigen::Index i = eig.values.size() - 1; i >= 0; --i)
    if (eig.values(i) > 0.5) cols.push_back(i);
  Matrix out(projection.rows(), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t c = 0; c < cols.size(); ++c) out.col(c) = eig.vectors.col(cols[c]);
  return out;
}

}  // namespace detail

Element::Element(AlgebraShape shape, std::vector<Matrix> blocks)
    : shape_(std::move(shape)), blocks_(std::move(blocks)) {
  if (blocks_.size() != shape_.size())
    throw ShapeMismatch("element has " + std::to_string(blocks_.size()) + " blocks, shape has " +
                        std::to_string(shape_.size()));
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    const int n = shape_[i].dim;
    if (blocks_[i].rows() != n || blocks_[i].cols() != n)
      throw ShapeMismatch("block " + std::to_string(i) + " is not " + std::to_string(n) + "x" +
                          std::to_string(n));
    blocks_[i] = detail::realify(blocks_[i], shape_[i].field, 1e-10, "Element");
  }
}

Element Element::zero(const AlgebraShape& shape) {
  std::vector<Matrix> b;
  for (const auto& s : shape.blocks()) b.push_back(Matrix::Zero(s.dim, s.dim));
  return Element(shape, std::move(b));
}

Element Element::identity(const AlgebraShape& shape) {
  std::vector<Matrix> b;
  for (const auto& s : shape.blocks()) b.push_back(Matrix::Identity(s.dim, s.dim));
  return Element(shape, std::move(b));
}

Element Element::adjoint() const {
  std::vector<Matrix> b;
  for (const auto& m : blocks_) b.push_back(m.adjoint());
  return Element(shape_, std::move(b));
}

Scalar Element::trace() const {
  Scalar t = 0.0;
  for (const auto& m : blocks_) t += m.trace();
  return t;
}

namespace {

double scale_of(const Element& a) { return std::max(1.0, frobenius_norm(a)); }

}  // namespace

bool Element::is_hermitian(double tol) const {
  return frobenius_norm(*this - adjoint()) <= tol * scale_of(*this);
}

bool Element::is_skew(double tol) const {
  return frobenius_norm(*this + adjoint()) <= tol * scale_of(*this);
}

bool Element::is_projection(double tol) const {
  return is_hermitian(tol) && frobenius_norm(*this * *this - *this) <= tol * scale_of(*this);
}

bool Element::is_unitary(double tol) const {
  const Element one = identity(shape_);
  return frobenius_norm(adjoint() * *this - one) <= tol * scale_of(one);
}

Element& Element::operator+=(const Element& o) {
  detail::require_same_shape(*this, o, "add");
  for (std::size_t i = 0; i < blocks_.size(); ++i) blocks_[i] += o.blocks_[i];
  return *this;
}

Element& Element::operator-=(const Element& o) {
  detail::require_same_shape(*this, o, "subtract");
  for (std::size_t i = 0; i < blocks_.size(); ++i) blocks_[i] -= o.blocks_[i];
  return *this;
}

Element& Element::operator*=(Scalar s) {
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    blocks_[i] *= s;
    if (shape_[i].field == Field::Real && s.imag() != 0.0)
      blocks_[i] = detail::realify(blocks_[i], Field::Real, 1e-10, "scalar multiple");
  }
  return *this;
}

Element operator*(const Element& a, const Element& b) { return multiply(a, b); }

Element multiply(const Element& a, const Element& b) {
  detail::require_same_shape(a, b, "multiply");
  std::vector<Matrix> out;
  out.reserve(a.num_blocks());
  for (std::size_t i = 0; i < a.num_blocks(); ++i) out.push_back(a.block(i) * b.block(i));
  return Element(a.shape(), std::move(out));
}

Element bracket(const Element& a, const Element& b) { return a * b - b * a; }

Norms norms(const Element& a) { return {spectral_norm(a), frobenius_norm(a)}; }

double spectral_norm(const Element& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.num_blocks(); ++i) {
    if (a.block(i).size() == 0) continue;
    Eigen::JacobiSVD<Matrix> svd(a.block(i));
    s = std::max(s, svd.singularValues()(0));
  }
  return s;
}

double frobenius_norm(const Element& a) {
  double s = 0.0;
  for (const auto& m : a.blocks()) s += m.squaredNorm();
  return std::sqrt(s);
}

double trace_inner(const Element& a, const Element& b) {
  detail::require_same_shape(a, b, "trace_inner");
  double s = 0.0;
  for (std::size_t i = 0; i < a.num_blocks(); ++i)
    s += a.block(i).cwiseProduct(b.block(i).conjugate()).sum().real();
  return s;
}

Element SpectralData::reconstruct() const {
  if (projections.empty()) throw ValidationError("empty spectral data");
  Element out = Element::zero(projections.front().shape());
  const Scalar unit = kind == SpectralKind::Hermitian ? Scalar(1.0) : Scalar(0.0, 1.0);
  for (std::size_t i = 0; i < values.size(); ++i) out += (unit * values[i]) * projections[i];
  return out;
}

namespace {

SpectralData eig_impl(const Element& h, bool skew, const Tolerances& tol) {
  SpectralData out;
  out.cluster_tolerance = tol.cluster;
  AlgebraShape target = h.shape();
  std::vector<Matrix> work;
  if (!skew) {
    out.kind = SpectralKind::Hermitian;
    work = h.blocks();
  } else {
    out.kind = SpectralKind::Skew;
    target = h.shape().complexified();
    for (const auto& m : h.blocks()) work.push_back(Scalar(0.0, -1.0) * m);
  }

  struct Entry {
    double value;
    std::size_t block;
    Eigen::Index col;
  };
  std::vector<detail::BlockEig> eigs;
  std::vector<Entry> entries;
  for (std::size_t b = 0; b < work.size(); ++b) {
    eigs.push_back(detail::eigh(work[b], target[b].field));
    for (Eigen::Index i = 0; i < eigs.back().values.size(); ++i)
      entries.push_back({eigs.back().values(i), b, i});
  }
  std::stable_sort(entries.begin(), entries.end(),
                   [](const Entry& a, const Entry& b) { return a.value < b.value; });

  std::size_t start = 0;
  while (start < entries.size()) {
    std::size_t end = start + 1;
    while (end < entries.size() && entries[end].value - entries[end - 1].value <= tol.cluster) ++end;
    double mean = 0.0;
    std::vector<Matrix> blocks;
    for (const auto& s : target.blocks()) blocks.push_back(Matrix::Zero(s.dim, s.dim));
    for (std::size_t i = start; i < end; ++i) {
      mean += entries[i].value;
      const auto& vec = eigs[entries[i].block].vectors.col(entries[i].col);
      blocks[entries[i].block] += vec * vec.adjoint();
    }
    out.values.push_back(mean / static_cast<double>(end - start));
    out.projections.emplace_back(target, std::move(blocks));
    start = end;
  }

  const Element input = out.kind == SpectralKind::Hermitian
                            ? h
                            : Element(target, h.blocks());
  if (frobenius_norm(out.reconstruct() - input) > tol.structural * std::max(1.0, frobenius_norm(h)) * 10)
    throw CrossCheckError("hermitian_eig: reconstruction residual too large");
  return out;
}

}  // namespace

SpectralData hermitian_eig(const Element& h, const Tolerances& tol) {
  if (h.is_hermitian(tol.structural)) return eig_impl(h, false, tol);
  if (h.is_skew(tol.structural)) return eig_impl(h, true, tol);
  throw ValidationError("hermitian_eig: input is neither Hermitian nor skew-adjoint");
}

SpectralData skew_eig(const Element& x, const Tolerances& tol) {
  if (!x.is_skew(tol.structural)) throw ValidationError("skew_eig: input is not skew-adjoint");
  return eig_impl(x, true, tol);
}

Element expm_skew(const Element& x, const Tolerances& tol) {
  if (!x.is_skew(tol.structural)) throw ValidationError("expm_skew: input is not skew-adjoint");
  return skew_function(x, [](double t) { return std::polar(1.0, t); }, tol);
}

Element logm_unitary(const Element& u, const Tolerances& tol) {
  if (!u.is_unitary(tol.structural)) throw ValidationError("logm_unitary: input is not unitary");
  std::vector<Matrix> out;
  for (std::size_t b = 0; b < u.num_blocks(); ++b) {
    Eigen::ComplexSchur<Matrix> schur(u.block(b));
    const Matrix& t = schur.matrixT();
    const Matrix& z = schur.matrixU();
    Eigen::VectorXcd phases(t.rows());
    for (Eigen::Index i = 0; i < t.rows(); ++i) {
      const Scalar lam = t(i, i);
      if (std::abs(lam + 1.0) <= tol.cluster)
        throw ValidationError("logm_unitary: eigenvalue -1, principal logarithm is ambiguous");
      phases(i) = Scalar(0.0, std::arg(lam));
    }
    Matrix l = z * phases.asDiagonal() * z.adjoint();
    l = 0.5 * (l - l.adjoint());
    out.push_back(detail::realify(l, u.shape()[b].field, std::max(tol.structural, 1e-9), "logm_unitary"));
  }
  return Element(u.shape(), std::move(out));
}

PolarData polar_rectangular(const Element& lambda, const Tolerances& tol) {
  const auto& shape = lambda.shape();
  std::vector<Matrix> omega, abs, absa, range, corange;
  for (std::size_t b = 0; b < lambda.num_blocks(); ++b) {
    const auto s = detail::svd(lambda.block(b), shape[b].field);
    Eigen::Index r = 0;
    while (r < s.sigma.size() && s.sigma(r) > tol.rank) ++r;
    const Matrix ur = s.u.leftCols(r);
    const Matrix wr = s.v.leftCols(r);
    const Eigen::VectorXcd sig = s.sigma.head(r).cast<Scalar>();
    omega.push_back(ur * wr.adjoint());
    abs.push_back(wr * sig.asDiagonal() * wr.adjoint());
    absa.push_back(ur * sig.asDiagonal() * ur.adjoint());
    range.push_back(wr * wr.adjoint());
    corange.push_back(ur * ur.adjoint());
  }
  return {Element(shape, std::move(omega)), Element(shape, std::move(abs)),
          Element(shape, std::move(absa)), Element(shape, std::move(range)),
          Element(shape, std::move(corange))};
}

Element spectral_projection(const Element& h, double value, const Tolerances& tol) {
  if (!h.is_hermitian(tol.structural)) throw ValidationError("spectral_projection: input is not Hermitian");
  std::vector<Matrix> out;
  for (std::size_t b = 0; b < h.num_blocks(); ++b) {
    const auto eig = detail::eigh(h.block(b), h.shape()[b].field);
    Matrix p = Matrix::Zero(h.block(b).rows(), h.block(b).cols());
    for (Eigen::Index i = 0; i < eig.values.size(); ++i)
      if (std::abs(eig.values(i) - value) <= tol.cluster) p += eig.vectors.col(i) * eig.vectors.col(i).adjoint();
    out.push_back(std::move(p));
  }
  return Element(h.shape(), std::move(out));
}

}  // namespace grassgeo
