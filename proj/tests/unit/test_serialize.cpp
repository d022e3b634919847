#include <cstring>

#include "grassgeo/problem.hpp"
#include "support.hpp"

using namespace grassgeo;
using namespace support;

namespace {

bool bitwise_equal(const Element& a, const Element& b) {
  if (!(a.shape() == b.shape())) return false;
  for (std::size_t i = 0; i < a.num_blocks(); ++i)
    if (std::memcmp(a.block(i).data(), b.block(i).data(), sizeof(Scalar) * a.block(i).size()) != 0) return false;
  return true;
}

}  // namespace

TEST_CASE("elements round-trip bit for bit") {
  rnd::Rng rng(11);
  for (int i = 0; i < 25; ++i) {
    const AlgebraShape shape = random_shape(rng, 3, 5);
    const Element a = rnd::hermitian(shape, rng) * 1e-7 + rnd::skew(shape, rng) * 3.3e5;
    const std::string text = element_to_json(a).dump();
    CHECK(bitwise_equal(element_from_json(Json::parse(text)), a));
  }
}

TEST_CASE("real blocks serialize as plain numbers") {
  const Element a = single(mat({{1, 2}, {3, 4}}), Field::Real);
  const Json j = element_to_json(a);
  CHECK(j["blocks"][0][0][1].is_number());
  const Element c = single(mat({{1, Scalar(0, 2)}, {3, 4}}));
  CHECK(element_to_json(c)["blocks"][0][0][1].is_array());
}

TEST_CASE("malformed elements are rejected") {
  CHECK_THROWS_AS(element_from_json(Json::parse(R"({"shape":[{"dim":2}],"blocks":[[[1,0]]]})")), ShapeMismatch);
  CHECK_THROWS_AS(element_from_json(Json::parse(R"({"shape":[{"dim":2}],"blocks":[[[1,0],[0]]]})")), ShapeMismatch);
  CHECK_THROWS_AS(element_from_json(Json::parse(R"({"shape":[{"dim":1}],"blocks":[[["x"]]]})")), ValidationError);
  CHECK_THROWS_AS(shape_from_json(Json::parse(R"([{"dim":1.5}])")), ValidationError);
  const AlgebraShape other = AlgebraShape::single(3, Field::Complex);
  CHECK_THROWS_AS(element_from_json(element_to_json(single(Matrix::Identity(2, 2))), &other), ShapeMismatch);
}

TEST_CASE("tolerances override the base") {
  Tolerances base;
  base.rank = 1e-8;
  const Tolerances t = tolerances_from_json(Json::parse(R"({"cluster": 1e-7})"), base);
  CHECK(t.rank == 1e-8);
  CHECK(t.cluster == 1e-7);
  CHECK(tolerances_from_json(tolerances_to_json(t)).cluster == t.cluster);
}

TEST_CASE("problem files") {
  const Json j = Json::parse(R"({
    "algebra": [{"dim": 2, "field": "complex"}],
    "P": {"shape": [{"dim": 2, "field": "complex"}], "blocks": [[[1, 0], [0, 0]]]},
    "V": {"shape": [{"dim": 2, "field": "complex"}], "blocks": [[[0, 1], [1, 0]]]}
  })");
  const ProblemFile pf = problem_from_json(j);
  CHECK(pf.v.has_value());
  CHECK_FALSE(pf.x.has_value());
  const ProblemFile back = problem_from_json(problem_to_json(pf));
  CHECK(bitwise_equal(back.p, pf.p));
  CHECK_THROWS_AS(problem_from_json(Json::parse(R"({"algebra": []})")), ValidationError);
  CHECK_THROWS_AS(load_problem("/nonexistent/problem.json"), ValidationError);
}
