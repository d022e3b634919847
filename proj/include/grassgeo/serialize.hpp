#pragma once

// JSON encoding of shapes, elements and tolerances.
//
//   shape:   [{"dim": 2, "field": "complex"}, ...]
//   element: {"shape": <shape>, "blocks": [<rows of entries>, ...]}
//
// Complex entries are [re, im] pairs, real-block entries plain numbers. Doubles
// are written in shortest round-trip form, so parse(dump(e)) == e bit for bit.

#include <string>

#include <json.hpp>

#include "grassgeo/matcore.hpp"

namespace grassgeo {

using Json = nlohmann::json;

Json shape_to_json(const AlgebraShape& shape);
AlgebraShape shape_from_json(const Json& j);

Json element_to_json(const Element& e);
/// Parses an element. When `expected` is given the embedded shape must match it.
Element element_from_json(const Json& j, const AlgebraShape* expected = nullptr);

Json tolerances_to_json(const Tolerances& t);
/// Overrides fields present in j on top of `base`, then validates.
Tolerances tolerances_from_json(const Json& j, Tolerances base = {});

}  // namespace grassgeo
