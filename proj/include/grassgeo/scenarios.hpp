#pragma once

// Built-in worked examples with PASS/FAIL assertions.

#include <cstdint>
#include <string>
#include <vector>

#include "grassgeo/conjugate.hpp"

namespace grassgeo::scenarios {

struct Check {
  std::string name;
  bool pass = false;
  std::string detail;
};

/// P = e11 + e11, V = offdiag(1, 1) + offdiag(alpha, alpha) in M2(C) + M2(C).
GeodesicState pocos_state(double alpha);
/// P = e11, V = e12 + e21 in M_n over the given field.
GeodesicState projective_state(int n, Field field);
/// P = e11, V = offdiag(1, 1) in M2(C), speed scaled by `scale`.
GeodesicState two_by_two(double scale = 1.0);

std::vector<Check> pocos(double alpha, double t_max = 3.0 * 3.141592653589793);
std::vector<Check> projective(int n, Field field, double t_max = 3.0 * 3.141592653589793);
std::vector<Check> dimension_order(int d, Field field, std::uint64_t seed);
std::vector<Check> noesmono_grid();
std::vector<Check> second_geodesic();

/// Dispatch by name: pocos, pocos-<alpha>, projective-complex-N, projective-real-N,
/// dimension-order, noesmono-grid, second-geodesic.
std::vector<Check> reproduce(const std::string& name, std::uint64_t seed);

std::vector<std::string> scenario_names();

}  // namespace grassgeo::scenarios
