#pragma once

// Seeded random instances for verification commands and tests.

#include <cstdint>
#include <random>
#include <vector>

#include "grassgeo/grassmann.hpp"

namespace grassgeo::rnd {

using Rng = std::mt19937_64;

/// Seed from GRASSGEO_SEED when set, else `fallback`.
std::uint64_t seed_from_env(std::uint64_t fallback);

Matrix gaussian(int rows, int cols, Field f, Rng& rng);
/// Haar-distributed unitary (orthogonal for real fields).
Matrix unitary(int n, Field f, Rng& rng);

Element hermitian(const AlgebraShape& shape, Rng& rng);
Element skew(const AlgebraShape& shape, Rng& rng);
/// Random projection with the given rank per block.
Projection projection(const AlgebraShape& shape, const std::vector<int>& ranks, Rng& rng,
                      const Tolerances& tol = {});
/// Random projection with ranks drawn uniformly in [1, dim - 1] (0 allowed for dim 1).
Projection projection(const AlgebraShape& shape, Rng& rng, const Tolerances& tol = {});
TangentVector tangent(const Projection& p, Rng& rng);
/// Tangent vector rescaled to unit spectral norm (zero stays zero).
TangentVector unit_tangent(const Projection& p, Rng& rng);
/// Skew P-co-diagonal element with spectral norm `norm`.
Element codiagonal_skew(const Projection& p, double norm, Rng& rng);

/// P = U diag(1_p, 0) U*, V = U [[0, L], [L*, 0]] U* with L = diag(sigma) of size p x (m - p).
GeodesicState planted(int m, int p, const std::vector<double>& sigma, Field f, Rng& rng);

}  // namespace grassgeo::rnd
