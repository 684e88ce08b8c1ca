#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>

#include "parabasin/io.hpp"

namespace py = pybind11;
using namespace parabasin;

namespace {

std::string status_name(OrbitStatus s) {
  switch (s) {
    case OrbitStatus::ConvergedToDirection: return "ConvergedToDirection";
    case OrbitStatus::Escaped: return "Escaped";
    default: return "Undecided";
  }
}

ModelDomain make_domain(const std::string& name, double low, double high) {
  if (name == "halfplane") return HalfPlane{};
  if (name == "slit") return SlitPlane{};
  if (name == "sector") return Sector{low, high};
  if (name == "double") return DoubleSector{low, high};
  throw Error(ErrorKind::InvalidArgument, "unknown domain '" + name + "'");
}

}  // namespace

PYBIND11_MODULE(_parabasin, m) {
  m.doc() = "Parabolic basins: orbits, petals, Kobayashi distances, certificates";

  static py::exception<Error> error(m, "ParabasinError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      error((std::string(to_string(e.kind())) + ": " + e.what()).c_str());
    }
  });

  py::class_<ParabolicMap>(m, "ParabolicMap")
      .def_property_readonly("m", &ParabolicMap::m)
      .def_property_readonly("a", &ParabolicMap::a)
      .def_property_readonly("degree", &ParabolicMap::degree)
      .def_property_readonly("coefficients", [](const ParabolicMap& f) {
        return std::vector<Complex>(f.coefficients().begin(), f.coefficients().end());
      })
      .def_property_readonly("attraction", &ParabolicMap::attraction)
      .def_property_readonly("repulsion", [](const ParabolicMap& f) { return f.vectors().repulsion; })
      .def("__call__", &ParabolicMap::operator());

  m.def("analyze_parabolic", &analyze_parabolic, py::arg("coefficients"));

  m.def("forward_orbit", [](const ParabolicMap& f, Complex z0, std::size_t n) {
    const OrbitRecord r = forward_orbit(f, z0, n);
    return py::make_tuple(r.points, status_name(r.status));
  }, py::arg("f"), py::arg("z0"), py::arg("n"));

  m.def("classify_direction", [](const ParabolicMap& f, Complex z0, std::size_t n_max, double tol) {
    const OrbitRecord r = classify_direction(f, z0, n_max, tol);
    return py::make_tuple(status_name(r.status), r.direction, r.direction_error);
  }, py::arg("f"), py::arg("z0"), py::arg("n_max"), py::arg("tol"));

  m.def("preimages", &preimages, py::arg("f"), py::arg("w"), py::arg("tol") = 1e-10);

  m.def("enumerate_q", [](const ParabolicMap& f, Complex q, int k_max, int l_max,
                          int direction, double tol, bool membership_filter) {
    EnumerateOptions options;
    options.membership_filter = membership_filter;
    py::list out;
    for (const auto& p : enumerate_q(f, q, k_max, l_max, direction, tol, options).points) {
      out.append(py::make_tuple(p.value, p.k, p.l, p.residual));
    }
    return out;
  }, py::arg("f"), py::arg("q"), py::arg("k_max"), py::arg("l_max"),
     py::arg("direction") = 0, py::arg("tol") = 1e-10, py::arg("membership_filter") = true);

  m.def("_construct_pacman", [](const ParabolicMap& f, double theta0) {
    return io::to_json(construct_pacman(f, theta0)).dump();
  });

  m.def("distance_exact", [](const std::string& domain, Complex z1, Complex z2,
                             double low, double high) {
    return distance_exact(make_domain(domain, low, high), z1, z2).value;
  }, py::arg("domain"), py::arg("z1"), py::arg("z2"), py::arg("low") = 0.0,
     py::arg("high") = 0.0);

  m.def("path_length", [](const std::string& domain, const std::vector<Complex>& vertices,
                          double low, double high) {
    PathPolyline path;
    for (const Complex& z : vertices) path.vertices.emplace_back(z);
    return path_length(make_domain(domain, low, high), path);
  }, py::arg("domain"), py::arg("vertices"), py::arg("low") = 0.0, py::arg("high") = 0.0);

  m.def("_verify_theorem", [](const ParabolicMap& f, double C, Complex q, int k_max,
                              int l_max, int direction) {
    py::gil_scoped_release release;
    return io::to_json(verify_theorem(f, C, q, k_max, l_max, direction)).dump();
  });

  m.def("_prop3", [](const ParabolicMap& f, double R, double theta0, int resolution,
                     std::size_t n_max) {
    py::gil_scoped_release release;
    return io::to_json(prop3_disjointness(f, R, theta0, resolution, n_max)).dump();
  });
}
