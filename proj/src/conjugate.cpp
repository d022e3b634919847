#include "grassgeo/conjugate.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include <Eigen/SVD>

#include "grassgeo/jacobi.hpp"
#include "grassgeo/oracle.hpp"

namespace grassgeo {

namespace {

constexpr double kPi = std::numbers::pi;

double time_tol(const Tolerances& tol, double t) { return tol.cluster * std::max(1.0, t); }

// Eigen-groups of a Hermitian corner block: cluster value and orthonormal columns.
struct Group {
  double value;
  Matrix vectors;
};

std::vector<Group> groups_of(const Matrix& h, Field f, double cluster) {
  std::vector<Group> out;
  if (h.rows() == 0) return out;
  const auto eig = detail::eigh(h, f);
  Eigen::Index start = 0;
  const Eigen::Index n = eig.values.size();
  while (start < n) {
    Eigen::Index end = start + 1;
    while (end < n && eig.values(end) - eig.values(end - 1) <= cluster) ++end;
    out.push_back({eig.values.segment(start, end - start).mean(), eig.vectors.middleCols(start, end - start)});
    start = end;
  }
  return out;
}

bool resonant(double value, const std::vector<double>& mus, double cluster) {
  return std::any_of(mus.begin(), mus.end(), [&](double m) { return std::abs(value - m) <= cluster; });
}

CornerElement corner_zero(const CornerAlgebra& a0) {
  CornerElement z;
  for (int d : a0.dims()) z.push_back(Matrix::Zero(d, d));
  return z;
}

// Units for off-diagonal blocks: 1 always, i for complex blocks.
std::vector<Scalar> units(Field f) {
  if (f == Field::Complex) return {Scalar(1.0), Scalar(0.0, 1.0)};
  return {Scalar(1.0)};
}

Element full_zero_like(const AlgebraShape& shape) { return Element::zero(shape); }

Element block_element(const AlgebraShape& shape, std::size_t b, const Matrix& m) {
  Element e = full_zero_like(shape);
  std::vector<Matrix> blocks = e.blocks();
  blocks[b] = m;
  return Element(shape, std::move(blocks));
}

void require_independent(const std::vector<TangentVector>& vs, const char* what) {
  if (vs.empty()) return;
  const auto n = static_cast<Eigen::Index>(vs.size());
  RealMatrix g(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) g(i, j) = trace_inner(vs[i].x(), vs[j].x());
  Eigen::JacobiSVD<RealMatrix> svd(g);
  const auto& sv = svd.singularValues();
  if (sv(n - 1) <= 1e-10 * sv(0))
    throw CrossCheckError(std::string(what) + ": kernel vectors are linearly dependent");
}

}  // namespace

const char* to_string(Classification c) {
  return c == Classification::Monoconjugate ? "Monoconjugate" : "NotConjugate";
}

const char* to_string(KernelSource k) {
  switch (k) {
    case KernelSource::H: return "H";
    case KernelSource::K: return "K";
    case KernelSource::Codiagonal: return "codiagonal";
  }
  return "?";
}

void require_unit_speed(const GeodesicState& s) {
  const double n = spectral_norm(s.speed().x());
  if (std::abs(n - 1.0) > 1e-8)
    throw ValidationError("speed must have unit norm (got " + std::to_string(n) + "); normalize first");
}

std::vector<ConjugateTime> conjugate_times(const GeodesicState& s, double t_max) {
  require_unit_speed(s);
  const auto& tol = s.tolerances();
  const auto& vals = s.speed_spectrum().values;
  std::vector<std::pair<double, Witness>> raw;
  for (std::size_t i = 0; i < vals.size(); ++i) {
    for (std::size_t j = i + 1; j < vals.size(); ++j) {
      const double gap = vals[j] - vals[i];
      for (int k = 1;; ++k) {
        const double t = k * kPi / gap;
        if (t > t_max + time_tol(tol, t_max)) break;
        raw.push_back({t, Witness{k, vals[j], vals[i]}});
      }
    }
  }
  std::stable_sort(raw.begin(), raw.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<ConjugateTime> out;
  for (const auto& [t, w] : raw) {
    if (!out.empty() && std::abs(out.back().time - t) <= time_tol(tol, t)) {
      out.back().witnesses.push_back(w);
    } else {
      out.push_back({t, {w}});
    }
  }
  return out;
}

std::vector<Witness> witnesses_at(const GeodesicState& s, double big_t) {
  const auto& tol = s.tolerances();
  const auto& vals = s.speed_spectrum().values;
  std::vector<Witness> out;
  if (big_t <= 0) return out;
  for (std::size_t i = 0; i < vals.size(); ++i) {
    for (std::size_t j = i + 1; j < vals.size(); ++j) {
      const double gap = vals[j] - vals[i];
      const long k = std::lround(big_t * gap / kPi);
      if (k >= 1 && std::abs(k * kPi / gap - big_t) <= time_tol(tol, big_t))
        out.push_back({static_cast<int>(k), vals[j], vals[i]});
    }
  }
  return out;
}

MuSet mu_set(const GeodesicState& s, int k, double sv, double sp) {
  const auto& tol = s.tolerances();
  const double gap = std::abs(sv - sp);
  if (gap <= tol.cluster) throw ValidationError("mu_set: s and s' must differ");
  if (k == 0) throw ValidationError("mu_set: k must be nonzero");
  const int ak = std::abs(k);
  const auto& vals = s.speed_spectrum().values;
  std::vector<double> gaps;
  for (std::size_t i = 0; i < vals.size(); ++i)
    for (std::size_t j = i + 1; j < vals.size(); ++j) gaps.push_back(vals[j] - vals[i]);
  const double top = gaps.empty() ? 0.0 : *std::max_element(gaps.begin(), gaps.end());

  MuSet out;
  out.k = k;
  out.gap = gap;
  const double res_tol = tol.cluster * std::max(1, ak);
  for (int j = 1; j * gap <= ak * top + res_tol; ++j) {
    double best = INFINITY;
    for (double g : gaps) best = std::min(best, std::abs(j * gap - ak * g));
    if (best <= res_tol) {
      out.js.push_back(j);
      out.mus.push_back(j * gap / ak);
      if (best > tol.structural) out.tolerance_resolved = true;
    }
  }
  return out;
}

std::vector<CornerElement> kernel_H(const CornerAlgebra& a0, const CornerElement& abs_lambda,
                                    const std::vector<double>& mus, const Tolerances& tol) {
  std::vector<double> active;
  for (double m : mus)
    if (m < 1.0 - tol.cluster) active.push_back(m);
  std::vector<CornerElement> out;
  if (active.empty()) return out;
  for (std::size_t b = 0; b < a0.frames.size(); ++b) {
    const auto gs = groups_of(abs_lambda[b], a0.fields[b], tol.cluster);
    for (std::size_t i = 0; i < gs.size(); ++i) {
      for (std::size_t j = i + 1; j < gs.size(); ++j) {
        if (!resonant(std::abs(gs[i].value - gs[j].value), active, tol.cluster)) continue;
        for (Eigen::Index a = 0; a < gs[i].vectors.cols(); ++a)
          for (Eigen::Index c = 0; c < gs[j].vectors.cols(); ++c)
            for (const Scalar u : units(a0.fields[b])) {
              const Matrix f = u * gs[i].vectors.col(a) * gs[j].vectors.col(c).adjoint();
              CornerElement z = corner_zero(a0);
              z[b] = f + f.adjoint();
              out.push_back(std::move(z));
            }
      }
    }
  }
  return out;
}

std::vector<CornerElement> kernel_K(const CornerAlgebra& a0, const CornerElement& abs_lambda,
                                    const std::vector<double>& mus, const Tolerances& tol) {
  std::vector<CornerElement> out;
  if (mus.empty()) return out;
  for (std::size_t b = 0; b < a0.frames.size(); ++b) {
    const Field fld = a0.fields[b];
    const auto gs = groups_of(abs_lambda[b], fld, tol.cluster);
    for (std::size_t i = 0; i < gs.size(); ++i) {
      for (std::size_t j = i; j < gs.size(); ++j) {
        if (!resonant(gs[i].value + gs[j].value, mus, tol.cluster)) continue;
        const Matrix& ei = gs[i].vectors;
        const Matrix& ej = gs[j].vectors;
        if (i != j) {
          for (Eigen::Index a = 0; a < ei.cols(); ++a)
            for (Eigen::Index c = 0; c < ej.cols(); ++c)
              for (const Scalar u : units(fld)) {
                const Matrix f = u * ei.col(a) * ej.col(c).adjoint();
                CornerElement z = corner_zero(a0);
                z[b] = f - f.adjoint();
                out.push_back(std::move(z));
              }
          continue;
        }
        const Eigen::Index m = ei.cols();
        for (Eigen::Index a = 0; a < m; ++a) {
          if (fld == Field::Complex) {
            CornerElement z = corner_zero(a0);
            z[b] = Scalar(0.0, 1.0) * ei.col(a) * ei.col(a).adjoint();
            out.push_back(std::move(z));
          }
          for (Eigen::Index c = a + 1; c < m; ++c)
            for (const Scalar u : units(fld)) {
              const Matrix f = u * ei.col(a) * ei.col(c).adjoint();
              CornerElement z = corner_zero(a0);
              z[b] = f - f.adjoint();
              out.push_back(std::move(z));
            }
        }
      }
    }
  }
  return out;
}

namespace {

std::vector<double> union_mus(const GeodesicState& s, const std::vector<Witness>& ws, bool* resolved) {
  std::vector<double> mus;
  for (const auto& w : ws) {
    const MuSet m = mu_set(s, w.k, w.s, w.s_prime);
    if (m.tolerance_resolved && resolved) *resolved = true;
    for (double mu : m.mus)
      if (!resonant(mu, mus, s.tolerances().cluster)) mus.push_back(mu);
  }
  std::sort(mus.begin(), mus.end());
  return mus;
}

TangentVector from_corner(const GeodesicState& s, const CornerElement& z) {
  const auto& shape = s.base().shape();
  const Element zf = s.corner().expand(z, shape);
  const Element oz = s.polar().omega * zf;
  return TangentVector(s.base(), oz + oz.adjoint());
}

}  // namespace

std::vector<TangentVector> kernel_S(const GeodesicState& s, double big_t, const std::vector<Witness>& witnesses,
                                    std::vector<KernelSource>* sources) {
  (void)big_t;
  const auto mus = union_mus(s, witnesses, nullptr);
  const auto abs0 = s.corner().compress(s.polar().abs);
  std::vector<TangentVector> out;
  for (const auto& a : kernel_H(s.corner(), abs0, mus, s.tolerances())) {
    out.push_back(from_corner(s, a));
    if (sources) sources->push_back(KernelSource::H);
  }
  for (const auto& b : kernel_K(s.corner(), abs0, mus, s.tolerances())) {
    out.push_back(from_corner(s, b));
    if (sources) sources->push_back(KernelSource::K);
  }
  return out;
}

std::vector<TangentVector> kernel_codiag(const GeodesicState& s, double big_t) {
  const auto& tol = s.tolerances();
  const auto& shape = s.base().shape();
  const auto& spec = s.generator_spectrum();
  std::vector<Matrix> q0(shape.size());
  for (std::size_t b = 0; b < shape.size(); ++b) q0[b] = Matrix::Zero(shape[b].dim, shape[b].dim);
  for (std::size_t i = 0; i < spec.values.size(); ++i) {
    const double th = std::abs(spec.values[i]);
    if (th <= tol.cluster) continue;
    const long j = std::lround(big_t * th / kPi);
    if (j < 1 || std::abs(big_t * th - j * kPi) > time_tol(tol, big_t)) continue;
    for (std::size_t b = 0; b < shape.size(); ++b) q0[b] += spec.projections[i].block(b);
  }
  const Element q0e(shape, std::move(q0));
  const Element& p = s.base().p();
  const Element one = Element::identity(shape);
  const Element off = one - s.support();
  const Element n1 = p * off;
  const Element n2 = (one - p) * off;
  const Element left_top = q0e * p;
  const Element left_bottom = q0e * (one - p);

  std::vector<TangentVector> out;
  for (std::size_t b = 0; b < shape.size(); ++b) {
    const Field f = shape[b].field;
    const std::pair<const Element*, const Element*> pairs[] = {{&left_top, &n2}, {&left_bottom, &n1}};
    for (const auto& [l, r] : pairs) {
      const Matrix bl = detail::range_basis(l->block(b), f, tol.structural);
      const Matrix br = detail::range_basis(r->block(b), f, tol.structural);
      for (Eigen::Index a = 0; a < bl.cols(); ++a)
        for (Eigen::Index c = 0; c < br.cols(); ++c)
          for (const Scalar u : units(f)) {
            const Matrix w = u * bl.col(a) * br.col(c).adjoint();
            const Element x = block_element(shape, b, w - w.adjoint());
            out.push_back(TangentVector(s.base(), bracket(x, p)));
          }
    }
  }
  return out;
}

ConjugateReport classify(const GeodesicState& s, const ConjugateTime& t) {
  require_unit_speed(s);
  const auto& tol = s.tolerances();
  ConjugateReport rep;
  rep.time = t;
  bool resolved = false;
  union_mus(s, t.witnesses, &resolved);
  rep.kernel.s_part = kernel_S(s, t.time, t.witnesses, &rep.kernel.s_sources);
  rep.kernel.t_part = kernel_codiag(s, t.time);
  rep.order = rep.kernel.total_dim();
  rep.classification = rep.order > 0 ? Classification::Monoconjugate : Classification::NotConjugate;
  rep.tolerance_resolved = resolved;

  rep.oracle_nullity = oracle::nullity(oracle::sinhc_operator(s, t.time), tol.rank).dim;
  if (rep.oracle_nullity != rep.order) {
    std::ostringstream msg;
    msg << "classify: analytic order " << rep.order << " (S " << rep.kernel.s_part.size() << ", T "
        << rep.kernel.t_part.size() << ") differs from oracle nullity " << rep.oracle_nullity << " at T = "
        << t.time;
    throw CrossCheckError(msg.str());
  }
  std::vector<TangentVector> all = rep.kernel.s_part;
  all.insert(all.end(), rep.kernel.t_part.begin(), rep.kernel.t_part.end());
  require_independent(all, "classify");
  for (const auto& w : all) {
    const double r = frobenius_norm(dexp(s, t.time, w).x()) / frobenius_norm(w.x());
    rep.max_residual = std::max(rep.max_residual, r);
  }
  if (rep.max_residual >= tol.rank)
    throw CrossCheckError("classify: kernel vector not annihilated (residual " + std::to_string(rep.max_residual) +
                          ")");
  return rep;
}

ConjugateReport classify(const GeodesicState& s, double big_t) {
  if (!(big_t > 0)) throw ValidationError("classify: T must be positive");
  return classify(s, ConjugateTime{big_t, witnesses_at(s, big_t)});
}

std::vector<ReferenceRow> projective_reference(int n, Field field) {
  if (n < 2) throw ValidationError("projective_reference: n must be >= 2");
  if (field == Field::Complex)
    return {{"(2k+1)pi/2", kPi / 2, true, 1}, {"k*pi", kPi, false, 2 * (2 * n - 3)}};
  if (n == 2) return {};
  return {{"(2k+1)pi/2", kPi / 2, true, 0}, {"k*pi", kPi, false, 2 * n - 3}};
}

std::optional<int> reference_order(const std::vector<ReferenceRow>& table, double big_t, double tol) {
  for (const auto& row : table) {
    const double m = big_t / row.base;
    const long r = std::lround(m);
    if (r < 1 || std::abs(m - r) > tol * std::max(1.0, m)) continue;
    if (row.odd_only && r % 2 == 0) continue;
    return row.order;
  }
  return std::nullopt;
}

std::optional<TangentVector> eigen_witness_kernel(const GeodesicState& s, int k, double sv, double sp) {
  const auto& tol = s.tolerances();
  if (k == 0) return std::nullopt;
  const auto& vals = s.speed_spectrum().values;
  auto in_spec = [&](double x) {
    return std::any_of(vals.begin(), vals.end(), [&](double v) { return std::abs(v - x) <= tol.cluster; });
  };
  if (!in_spec(sv) || !in_spec(sp) || std::abs(sv - sp) <= tol.cluster) return std::nullopt;
  double a = sv, b = sp;
  if (std::abs(a) < std::abs(b)) std::swap(a, b);
  if (a < 0) {
    a = -a;
    b = -b;
  }
  if (std::abs(b) <= tol.cluster) return std::nullopt;
  const double big_t = std::abs(k) * std::numbers::pi / std::abs(a - b);

  const auto& shape = s.base().shape();
  const Element& absl = s.polar().abs;
  for (std::size_t blk = 0; blk < shape.size(); ++blk) {
    const Field f = shape[blk].field;
    const auto eig = detail::eigh(absl.block(blk), f);
    std::vector<Eigen::Index> ia, ib;
    for (Eigen::Index i = 0; i < eig.values.size(); ++i) {
      if (std::abs(eig.values(i) - a) <= tol.cluster) ia.push_back(i);
      if (std::abs(eig.values(i) - std::abs(b)) <= tol.cluster) ib.push_back(i);
    }
    if (ia.empty() || ib.empty()) continue;
    Matrix z;
    const auto xi = eig.vectors.col(ia.front());
    if (b > 0) {
      const auto xp = eig.vectors.col(ib.front());
      z = xi * xp.adjoint() + xp * xi.adjoint();
    } else if (std::abs(a + b) > tol.cluster) {
      const auto xp = eig.vectors.col(ib.front());
      z = xi * xp.adjoint() - xp * xi.adjoint();
    } else if (f == Field::Complex) {
      const Matrix xp = Scalar(0.0, 1.0) * xi;
      z = xi * xp.adjoint() - xp * xi.adjoint();
    } else if (ia.size() >= 2) {
      const auto xp = eig.vectors.col(ia[1]);
      z = xi * xp.adjoint() - xp * xi.adjoint();
    } else {
      continue;
    }
    const Element oz = s.polar().omega * block_element(shape, blk, z);
    const TangentVector w(s.base(), oz + oz.adjoint());
    const double r = frobenius_norm(dexp(s, big_t, w).x()) / frobenius_norm(w.x());
    if (r >= tol.rank)
      throw CrossCheckError("eigen_witness_kernel: witness not annihilated (residual " + std::to_string(r) + ")");
    return w;
  }
  return std::nullopt;
}

}  // namespace grassgeo
