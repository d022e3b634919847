#pragma once

// Problem files and JSON views of reports.
//
//   {"algebra": <shape>, "P": <element>, "V": <element>,
//    "X": <element>?, "Y": <element>?, "Q": <element>?,
//    "options": {"structural": .., "rank": .., "cluster": ..}?}

#include <optional>
#include <string>

#include "grassgeo/conjugate.hpp"
#include "grassgeo/metricpath.hpp"
#include "grassgeo/serialize.hpp"

namespace grassgeo {

struct ProblemFile {
  AlgebraShape algebra;
  Tolerances tolerances;
  Element p;
  std::optional<Element> v, x, y, q;
};

ProblemFile problem_from_json(const Json& j, Tolerances base = {});
ProblemFile load_problem(const std::string& path, Tolerances base = {});
Json problem_to_json(const ProblemFile& pf);

Json report_to_json(const ConjugateReport& r, bool with_kernel);
Json join_to_json(const JoinResult& r);

}  // namespace grassgeo
