#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "grassgeo/conjugate.hpp"
#include "grassgeo/jacobi.hpp"
#include "grassgeo/metricpath.hpp"
#include "grassgeo/oracle.hpp"
#include "grassgeo/scenarios.hpp"

namespace py = pybind11;
using namespace grassgeo;

namespace {

Element make_element(const std::vector<Matrix>& blocks, const std::vector<std::string>& fields) {
  if (!fields.empty() && fields.size() != blocks.size()) throw ValidationError("one field per block");
  std::vector<BlockShape> shape;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    if (blocks[i].rows() != blocks[i].cols()) throw ValidationError("blocks must be square");
    shape.push_back({static_cast<int>(blocks[i].rows()), fields.empty() ? Field::Complex : field_from_string(fields[i])});
  }
  return Element(AlgebraShape(std::move(shape)), blocks);
}

std::vector<std::string> fields_of(const Element& e) {
  std::vector<std::string> out;
  for (const auto& b : e.shape().blocks()) out.emplace_back(to_string(b.field));
  return out;
}

py::dict report_dict(const ConjugateReport& r) {
  py::dict d;
  d["time"] = r.time.time;
  d["classification"] = to_string(r.classification);
  d["order"] = r.order;
  d["oracle_nullity"] = r.oracle_nullity;
  d["s_dim"] = r.kernel.s_part.size();
  d["t_dim"] = r.kernel.t_part.size();
  d["tolerance_resolved"] = r.tolerance_resolved;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Geometry of Grassmann manifolds of finite-dimensional matrix algebras";

  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<CrossCheckError>(m, "CrossCheckError", PyExc_RuntimeError);

  py::enum_<Field>(m, "Field").value("Real", Field::Real).value("Complex", Field::Complex);

  py::class_<Element>(m, "Element")
      .def(py::init(&make_element), py::arg("blocks"), py::arg("fields") = std::vector<std::string>{})
      .def_property_readonly("blocks", [](const Element& e) { return e.blocks(); })
      .def_property_readonly("fields", &fields_of)
      .def("adjoint", &Element::adjoint)
      .def("trace", &Element::trace)
      .def("__add__", [](const Element& a, const Element& b) { return a + b; })
      .def("__sub__", [](const Element& a, const Element& b) { return a - b; })
      .def("__mul__", [](const Element& a, const Element& b) { return a * b; })
      .def("__rmul__", [](const Element& a, double s) { return s * a; });

  m.def("spectral_norm", &spectral_norm);
  m.def("frobenius_norm", &frobenius_norm);
  m.def("bracket", &bracket);

  py::class_<GeodesicState>(m, "Geodesic")
      .def(py::init([](const Element& p, const Element& v) { return GeodesicState(p, v); }), py::arg("P"),
           py::arg("V"))
      .def_property_readonly("P", [](const GeodesicState& s) { return s.base().p(); })
      .def_property_readonly("V", [](const GeodesicState& s) { return s.speed().x(); })
      .def_property_readonly("generator", &GeodesicState::generator)
      .def_property_readonly("speed_spectrum", [](const GeodesicState& s) { return s.speed_spectrum().values; })
      .def("__call__", [](const GeodesicState& s, double t) { return geodesic_eval(s, t).p(); })
      .def("velocity", [](const GeodesicState& s, double t) { return geodesic_velocity(s, t).x(); })
      .def("transport",
           [](const GeodesicState& s, const Element& x, double t) {
             return parallel_transport_geodesic(s, TangentVector(s.base(), x), t).x();
           })
      .def("jacobi",
           [](const GeodesicState& s, const Element& x, const Element& y, double t) {
             return jacobi_field(s, TangentVector(s.base(), x), TangentVector(s.base(), y), t).x();
           })
      .def("dexp", [](const GeodesicState& s, double big_t,
                      const Element& y) { return dexp(s, big_t, TangentVector(s.base(), y)).x(); })
      .def("dexp_matrix", &dexp_matrix)
      .def("oracle_matrix", [](const GeodesicState& s, double big_t) { return oracle::sinhc_operator(s, big_t).matrix; })
      .def("conjugate_times",
           [](const GeodesicState& s, double t_max) {
             std::vector<double> out;
             for (const auto& t : conjugate_times(s, t_max)) out.push_back(t.time);
             return out;
           })
      .def("classify", [](const GeodesicState& s, double big_t) { return report_dict(classify(s, big_t)); });

  m.def("geodesic_join", [](const Element& p, const Element& q) {
    const auto r = geodesic_join(Projection(p), Projection(q));
    py::dict d;
    d["exists"] = r.exists;
    d["unique"] = r.unique;
    d["length"] = r.length;
    d["generator"] = r.exists ? py::cast(r.generator) : py::none();
    return d;
  });

  m.def("projective", &scenarios::projective_state, py::arg("n"), py::arg("field") = Field::Complex);

  m.def("reproduce", [](const std::string& name, std::uint64_t seed) {
    std::vector<std::tuple<std::string, bool, std::string>> out;
    for (const auto& c : scenarios::reproduce(name, seed)) out.emplace_back(c.name, c.pass, c.detail);
    return out;
  }, py::arg("name"), py::arg("seed") = 20240607);

  m.def("epi_demo", [](int n) {
    const auto d = oracle::discretized_epi_demo(n);
    return std::make_pair(d.min_singular, d.nullity);
  });
}
