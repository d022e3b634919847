#include "grassgeo/problem.hpp"

#include <fstream>

namespace grassgeo {

ProblemFile problem_from_json(const Json& j, Tolerances base) {
  if (!j.is_object()) throw ValidationError("problem file must be a JSON object");
  if (!j.contains("algebra")) throw ValidationError("problem file needs 'algebra'");
  if (!j.contains("P")) throw ValidationError("problem file needs 'P'");
  ProblemFile pf;
  pf.algebra = shape_from_json(j["algebra"]);
  pf.tolerances = j.contains("options") ? tolerances_from_json(j["options"], base) : base;
  pf.tolerances.validate();
  pf.p = element_from_json(j["P"], &pf.algebra);
  auto opt = [&](const char* key) -> std::optional<Element> {
    if (!j.contains(key) || j[key].is_null()) return std::nullopt;
    return element_from_json(j[key], &pf.algebra);
  };
  pf.v = opt("V");
  pf.x = opt("X");
  pf.y = opt("Y");
  pf.q = opt("Q");
  return pf;
}

ProblemFile load_problem(const std::string& path, Tolerances base) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path);
  Json j;
  try {
    in >> j;
  } catch (const Json::parse_error& e) {
    throw ValidationError(path + ": " + e.what());
  }
  return problem_from_json(j, base);
}

Json problem_to_json(const ProblemFile& pf) {
  Json j{{"algebra", shape_to_json(pf.algebra)},
         {"P", element_to_json(pf.p)},
         {"options", tolerances_to_json(pf.tolerances)}};
  if (pf.v) j["V"] = element_to_json(*pf.v);
  if (pf.x) j["X"] = element_to_json(*pf.x);
  if (pf.y) j["Y"] = element_to_json(*pf.y);
  if (pf.q) j["Q"] = element_to_json(*pf.q);
  return j;
}

Json report_to_json(const ConjugateReport& r, bool with_kernel) {
  Json ws = Json::array();
  for (const auto& w : r.time.witnesses) ws.push_back({{"k", w.k}, {"s", w.s}, {"s_prime", w.s_prime}});
  Json j{{"time", r.time.time},
         {"witnesses", std::move(ws)},
         {"classification", to_string(r.classification)},
         {"order", r.order},
         {"oracle_nullity", r.oracle_nullity},
         {"s_dim", r.kernel.s_part.size()},
         {"t_dim", r.kernel.t_part.size()},
         {"tolerance_resolved", r.tolerance_resolved}};
  if (with_kernel) {
    Json kb = Json::array();
    for (std::size_t i = 0; i < r.kernel.s_part.size(); ++i)
      kb.push_back({{"source", to_string(r.kernel.s_sources[i])}, {"vector", element_to_json(r.kernel.s_part[i].x())}});
    for (const auto& t : r.kernel.t_part)
      kb.push_back({{"source", to_string(KernelSource::Codiagonal)}, {"vector", element_to_json(t.x())}});
    j["kernel_basis"] = std::move(kb);
  }
  return j;
}

Json join_to_json(const JoinResult& r) {
  Json j{{"exists", r.exists},
         {"unique", r.unique},
         {"length", r.length},
         {"dim_p_ker_q", r.dim_p_ker_q},
         {"dim_q_ker_p", r.dim_q_ker_p}};
  j["generator"] = r.exists ? element_to_json(r.generator) : Json(nullptr);
  return j;
}

}  // namespace grassgeo
