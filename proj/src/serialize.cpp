#include "grassgeo/serialize.hpp"

namespace grassgeo {

Json shape_to_json(const AlgebraShape& shape) {
  Json out = Json::array();
  for (const auto& b : shape.blocks()) out.push_back({{"dim", b.dim}, {"field", to_string(b.field)}});
  return out;
}

AlgebraShape shape_from_json(const Json& j) {
  if (!j.is_array()) throw ValidationError("shape must be an array of blocks");
  std::vector<BlockShape> blocks;
  for (const auto& b : j) {
    if (!b.is_object() || !b.contains("dim")) throw ValidationError("block needs a dim");
    if (!b["dim"].is_number_integer()) throw ValidationError("block dim must be an integer");
    const Field f = field_from_string(b.value("field", std::string("complex")));
    blocks.push_back({b["dim"].get<int>(), f});
  }
  return AlgebraShape(std::move(blocks));
}

Json element_to_json(const Element& e) {
  Json blocks = Json::array();
  for (std::size_t b = 0; b < e.num_blocks(); ++b) {
    const Matrix& m = e.block(b);
    const bool real = e.shape()[b].field == Field::Real;
    Json rows = Json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      Json row = Json::array();
      for (Eigen::Index k = 0; k < m.cols(); ++k) {
        if (real)
          row.push_back(m(i, k).real());
        else
          row.push_back(Json::array({m(i, k).real(), m(i, k).imag()}));
      }
      rows.push_back(std::move(row));
    }
    blocks.push_back(std::move(rows));
  }
  return {{"shape", shape_to_json(e.shape())}, {"blocks", std::move(blocks)}};
}

namespace {

Scalar parse_entry(const Json& v) {
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
    return {v[0].get<double>(), v[1].get<double>()};
  throw ValidationError("matrix entry must be a number or a [re, im] pair");
}

}  // namespace

Element element_from_json(const Json& j, const AlgebraShape* expected) {
  if (!j.is_object() || !j.contains("shape") || !j.contains("blocks"))
    throw ValidationError("element needs 'shape' and 'blocks'");
  const AlgebraShape shape = shape_from_json(j["shape"]);
  if (expected && !(shape == *expected)) throw ShapeMismatch("element shape differs from algebra");
  const Json& blocks = j["blocks"];
  if (!blocks.is_array() || blocks.size() != shape.size())
    throw ShapeMismatch("block count does not match shape");
  std::vector<Matrix> out;
  for (std::size_t b = 0; b < shape.size(); ++b) {
    const int n = shape[b].dim;
    const Json& rows = blocks[b];
    if (!rows.is_array() || static_cast<int>(rows.size()) != n)
      throw ShapeMismatch("block " + std::to_string(b) + " has the wrong number of rows");
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) {
      if (!rows[i].is_array() || static_cast<int>(rows[i].size()) != n)
        throw ShapeMismatch("block " + std::to_string(b) + " has a ragged row");
      for (int k = 0; k < n; ++k) m(i, k) = parse_entry(rows[i][k]);
    }
    if (shape[b].field == Field::Real && m.imag().cwiseAbs().maxCoeff() != 0.0)
      throw ValidationError("real block " + std::to_string(b) + " has complex entries");
    out.push_back(std::move(m));
  }
  return Element(shape, std::move(out));
}

Json tolerances_to_json(const Tolerances& t) {
  return {{"structural", t.structural}, {"rank", t.rank}, {"cluster", t.cluster}};
}

Tolerances tolerances_from_json(const Json& j, Tolerances base) {
  if (!j.is_object()) throw ValidationError("tolerances must be an object");
  if (j.contains("structural")) base.structural = j["structural"].get<double>();
  if (j.contains("rank")) base.rank = j["rank"].get<double>();
  if (j.contains("cluster")) base.cluster = j["cluster"].get<double>();
  base.validate();
  return base;
}

}  // namespace grassgeo
