#pragma once

// Rectifiable distance, geodesic joins between projections, and the explicit
// constructions past the cut time.

#include <optional>
#include <vector>

#include "grassgeo/grassmann.hpp"

namespace grassgeo {

struct JoinResult {
  bool exists = false;
  bool unique = false;
  Element generator;      // skew, P-co-diagonal, e^x P e^{-x} = Q
  double length = 0.0;    // ||x||
  int dim_p_ker_q = 0;    // rank of P ^ (1 - Q)
  int dim_q_ker_p = 0;    // rank of Q ^ (1 - P)
  std::vector<int> block_dim_p_ker_q;
  std::vector<int> block_dim_q_ker_p;
};

/// Sum of spectral-norm chords.
double path_length(const std::vector<Projection>& samples);
/// |t| ||V||.
double geodesic_length(const GeodesicState& s, double t);

/// Unique skew co-diagonal x with ||x|| < pi/2 and e^x P e^{-x} = Q. Needs ||P - Q|| < 1.
JoinResult direct_rotation(const Projection& p, const Projection& q);
/// Any geodesic from P to Q, or exists = false with the two mismatch dimensions.
JoinResult geodesic_join(const Projection& p, const Projection& q);
/// Projection onto ran P intersected with ran Q.
Projection meet_projection(const Projection& p, const Projection& q);

/// For a state with +-i pi/2 in the spectrum of v: the geodesic with generator
/// v_perp - i pi/2 (p+ - p-). Absent when pi/2 is not an eigenphase.
std::optional<GeodesicState> second_minimizing_geodesic(const GeodesicState& s);

struct Shortcut {
  GeodesicState state;
  double length = 0.0;           // (1 - eps) pi/2
  double original_length = 0.0;  // (1 + eps) pi/2
  double endpoint_residual = 0.0;
};

/// Generator (1 - eps) i pi/2 (p- - p+) + (1 + eps) v_perp reaching gamma(1 + eps).
Shortcut shortcut_past_cut(const GeodesicState& s, double eps);

/// z with e^z = e^v and every eigenphase reduced modulo 2 pi into [-pi, pi].
Element exponent_reduction(const Element& v, const Tolerances& tol = {});

}  // namespace grassgeo
