#pragma once

// Candidate conjugate times, analytic kernel bases of D(Exp_P)_{TV}, and the
// classification of gamma(T).
//
// In finite dimensions D(Exp_P)_{TV} is a square operator, so a point is
// monoconjugate exactly when it is epiconjugate. There is no separate
// epiconjugate state.

#include <optional>
#include <string>
#include <vector>

#include "grassgeo/grassmann.hpp"

namespace grassgeo {

struct Witness {
  int k = 1;
  double s = 0.0;
  double s_prime = 0.0;
};

struct ConjugateTime {
  double time = 0.0;
  std::vector<Witness> witnesses;
};

struct MuSet {
  int k = 1;
  double gap = 0.0;          // |s - s'|
  std::vector<int> js;       // Lambda
  std::vector<double> mus;   // mu_j = j gap / |k|
  bool tolerance_resolved = false;
};

enum class KernelSource { H, K, Codiagonal };

struct KernelBasis {
  std::vector<TangentVector> s_part;
  std::vector<KernelSource> s_sources;  // H or K per s_part entry
  std::vector<TangentVector> t_part;
  int total_dim() const { return static_cast<int>(s_part.size() + t_part.size()); }
};

enum class Classification { NotConjugate, Monoconjugate };

struct ConjugateReport {
  ConjugateTime time;
  Classification classification = Classification::NotConjugate;
  int order = 0;
  KernelBasis kernel;
  int oracle_nullity = 0;
  bool tolerance_resolved = false;
  double max_residual = 0.0;  // max ||dexp(w)|| / ||w|| over kernel vectors
};

/// Requires ||V|| = 1.
void require_unit_speed(const GeodesicState& s);

/// All T = k pi / |s - s'| <= t_max, merged within tolerance, ascending.
std::vector<ConjugateTime> conjugate_times(const GeodesicState& s, double t_max);

MuSet mu_set(const GeodesicState& s, int k, double sv, double sp);

/// Corner-algebra elements, one matrix per block of A_0.
using CornerElement = std::vector<Matrix>;

/// Hermitian solutions of prod_j ((L-R)^2 - mu_j^2) a = 0 in A_0.
std::vector<CornerElement> kernel_H(const CornerAlgebra& a0, const CornerElement& abs_lambda,
                                    const std::vector<double>& mus, const Tolerances& tol = {});
/// Skew solutions of prod_j (L + R - mu_j) b = 0 in A_0.
std::vector<CornerElement> kernel_K(const CornerAlgebra& a0, const CornerElement& abs_lambda,
                                    const std::vector<double>& mus, const Tolerances& tol = {});

/// X = Omega z + (Omega z)* for z = a + b with a from kernel_H and b from kernel_K.
std::vector<TangentVector> kernel_S(const GeodesicState& s, double big_t, const std::vector<Witness>& witnesses,
                                    std::vector<KernelSource>* sources = nullptr);
/// Solutions that are co-diagonal with respect to P_v.
std::vector<TangentVector> kernel_codiag(const GeodesicState& s, double big_t);

/// Kernel of D(Exp_P)_{TV} at an arbitrary T > 0, cross-checked against the
/// oracle nullity and against direct evaluation of dexp on every basis vector.
ConjugateReport classify(const GeodesicState& s, double big_t);
ConjugateReport classify(const GeodesicState& s, const ConjugateTime& t);

/// Witnesses (k, s, s') with k pi / |s - s'| = T.
std::vector<Witness> witnesses_at(const GeodesicState& s, double big_t);

struct ReferenceRow {
  std::string family;   // "(2k+1)pi/2" or "k*pi"
  double base = 0.0;    // pi/2 or pi
  bool odd_only = false;
  int order = 0;
};

/// Published orders for projective spaces, stated as closed formulas.
std::vector<ReferenceRow> projective_reference(int n, Field field);
/// Order the published table assigns to T, or nullopt if T is in no family.
std::optional<int> reference_order(const std::vector<ReferenceRow>& table, double big_t, double tol = 1e-8);

/// Rank-one built kernel vector for a pair of eigenvalues of V, verified to be
/// annihilated by dexp. Absent when the construction is unavailable.
std::optional<TangentVector> eigen_witness_kernel(const GeodesicState& s, int k, double sv, double sp);

const char* to_string(Classification c);
const char* to_string(KernelSource k);

}  // namespace grassgeo
