#include <sstream>

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qfzeta/cli.hpp"

namespace py = pybind11;
using namespace qfzeta;

namespace {

GroupDefinition group_from_text(const std::string& text) {
  std::istringstream in(text);
  GroupDefinition g = parse_group(in, "<string>");
  g.validate();
  return g;
}

// Library errors surface as ValueError with the module-qualified code first.
template <class F>
auto guarded(F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    throw py::value_error(e.code() + ": " + e.what());
  }
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Bindings for the qfzeta C++ core; reports are JSON strings.";

  m.def("run", [](const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = cli_main(args, out, err);
    return py::make_tuple(code, out.str(), err.str());
  }, py::arg("args"), "Runs the command line front end; returns (exit code, stdout, stderr).");

  m.def("multiplier", [](Complex a, Complex b, Complex c, Complex d) {
    return guarded([&] { return multiplier(MoebiusMap(a, b, c, d)).lambda; });
  }, "Multiplier of a loxodromic map given by its matrix entries.");

  m.def("conjugacy_classes", [](const std::string& group, int L) {
    return guarded([&] {
      const GroupDefinition g = group_from_text(group);
      return classes_json(conjugacy_classes(g, L), g).dump();
    });
  }, py::arg("group"), py::arg("max_length"));

  m.def("multiplier_series", [](const std::string& group, int n, int L) {
    return guarded([&] { return series_json(multiplier_series(group_from_text(group), n, L), n).dump(); });
  }, py::arg("group"), py::arg("n"), py::arg("max_length"));

  m.def("F", [](const std::string& group, int n, int L, int m_trunc) {
    return guarded([&] {
      ZetaOptions o;
      o.m_trunc = m_trunc;
      return product_json(F_function(group_from_text(group), n, L, o), "F", n, o).dump();
    });
  }, py::arg("group"), py::arg("n"), py::arg("max_length"), py::arg("m_trunc") = 64);

  m.def("Z", [](const std::string& group, double s, int L, int m_trunc) {
    return guarded([&] {
      ZetaOptions o;
      o.m_trunc = m_trunc;
      return product_json(selberg_Z(group_from_text(group), s, L, o), "Z", s, o).dump();
    });
  }, py::arg("group"), py::arg("s"), py::arg("max_length"), py::arg("m_trunc") = 64);

  m.def("kernel", [](const std::string& group, int n, Complex z, Complex w, const std::string& side, int L) {
    return guarded([&] {
      if (side != "plus" && side != "minus") throw bers_error("BadSide", "side must be 'plus' or 'minus'");
      const Side s = side == "plus" ? Side::plus : Side::minus;
      return kernel_json(kernel(group_from_text(group), n, z, w, s, L)).dump();
    });
  }, py::arg("group"), py::arg("n"), py::arg("z"), py::arg("w"), py::arg("side"), py::arg("max_length"));

  m.def("hyperbolic_area", [](const std::string& group, Complex center) {
    return guarded([&] { return hyperbolic_area(dirichlet_domain(group_from_text(group), center)); });
  }, py::arg("group"), py::arg("center") = Complex(0.0, 1.0));
}
