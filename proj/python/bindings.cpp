#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "rayland/errors.hpp"
#include "rayland/geometry.hpp"
#include "rayland/io.hpp"
#include "rayland/portrait.hpp"
#include "rayland/potential.hpp"
#include "rayland/rays.hpp"
#include "rayland/shift_locus.hpp"

namespace py = pybind11;
using namespace rayland;

namespace {

// Reports cross the boundary as plain dicts with the same schema as the CLI.
py::object to_py(const io::json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

io::json from_py(const py::object& o) {
  return io::json::parse(py::module_::import("json").attr("dumps")(o).cast<std::string>());
}

CriticalPortrait portrait_arg(const py::object& o) { return io::portrait_from_json(from_py(o)); }

py::dict ray_dict(const RayPath& p) {
  py::dict d = to_py(io::to_json(p));
  py::list s, z, res;
  for (const auto& x : p.samples) {
    s.append(x.potential);
    z.append(x.point);
    res.append(x.green_residual);
  }
  d["potential"] = s;
  d["points"] = z;
  d["green_residual"] = res;
  return d;
}

NestedDiskSystem system_arg(const py::object& o) { return io::disk_system_from_json(from_py(o)); }

}  // namespace

PYBIND11_MODULE(_rayland, m) {
  m.doc() = "Critical portraits, Green functions, external rays, shift-locus parameter rays and distortion geometry";

  auto base = py::register_exception<Error>(m, "Error");
  py::register_exception<DomainError>(m, "DomainError", base.ptr());
  auto numeric = py::register_exception<NumericError>(m, "NumericError", base.ptr());
  py::register_exception<BranchError>(m, "BranchError", numeric.ptr());
  py::register_exception<ResourceError>(m, "ResourceError", base.ptr());

  py::class_<MonicPolynomial>(m, "Polynomial")
      .def(py::init<unsigned, std::vector<cplx>>(), py::arg("degree"), py::arg("lower"),
           "z^d + a_{d-2} z^{d-2} + ... + a_0 from the lower coefficients a_0..a_{d-2}")
      .def_static("quadratic", &MonicPolynomial::quadratic, py::arg("c"))
      .def_static("power", &MonicPolynomial::power, py::arg("degree"))
      .def_property_readonly("degree", &MonicPolynomial::degree)
      .def_property_readonly("lower", [](const MonicPolynomial& f) {
        return std::vector<cplx>(f.lower().begin(), f.lower().end());
      })
      .def("__call__", &MonicPolynomial::operator(), py::arg("z"))
      .def("derivative", &MonicPolynomial::derivative, py::arg("z"))
      .def("to_dict", [](const MonicPolynomial& f) { return to_py(io::to_json(f)); })
      .def_static("from_dict", [](const py::object& o) { return io::polynomial_from_json(from_py(o)); })
      .def("__eq__", [](const MonicPolynomial& a, const MonicPolynomial& b) { return a == b; })
      .def("__repr__", [](const MonicPolynomial& f) { return "Polynomial(" + io::to_json(f).dump() + ")"; });

  m.def("critical_points", [](const MonicPolynomial& f) {
    std::vector<std::pair<cplx, unsigned>> out;
    for (const auto& c : critical_points(f)) out.emplace_back(c.location, c.multiplicity);
    return out;
  }, py::arg("f"), "[(location, multiplicity)]");

  // portraits: {"degree": d, "blocks": [["p/q", ...], ...]}
  m.def("quadratic_portrait", [](const std::string& theta) {
    return to_py(io::to_json(quadratic_portrait(Angle::parse(theta))));
  }, py::arg("theta"));
  m.def("validate_portrait", [](const py::object& p) { return to_py(io::to_json(validate_portrait(portrait_arg(p)))); },
        py::arg("portrait"));
  m.def("classify_portrait", [](const py::object& p) { return std::string(to_string(classify_portrait(portrait_arg(p)))); },
        py::arg("portrait"));
  m.def("enumerate_portraits", [](unsigned d, unsigned max_den, std::size_t cap) {
    io::json arr = io::json::array();
    for (const auto& p : enumerate_portraits(d, max_den, cap)) arr.push_back(io::to_json(p));
    return to_py(arr);
  }, py::arg("degree"), py::arg("max_den"), py::arg("cap") = 200000);

  // potential
  m.def("green", [](const MonicPolynomial& f, cplx z, double tol) { return green(f, z, tol).green; },
        py::arg("f"), py::arg("z"), py::arg("tol") = 1e-14);
  m.def("green_gradient", &green_gradient, py::arg("f"), py::arg("z"));
  m.def("bottcher", [](const MonicPolynomial& f, cplx z, std::optional<cplx> witness) {
    return bottcher(f, z, witness).value;
  }, py::arg("f"), py::arg("z"), py::arg("witness") = std::nullopt);
  m.def("equipotential", &equipotential, py::arg("f"), py::arg("level"), py::arg("samples"));
  m.def("critical_value_rates", [](const MonicPolynomial& f) {
    std::vector<std::pair<cplx, double>> out;
    for (const auto& c : critical_value_rates(f)) out.emplace_back(c.value, c.rate);
    return out;
  }, py::arg("f"));

  // rays
  m.def("trace_ray", [](const MonicPolynomial& f, const std::string& theta, std::optional<double> s_start,
                        double s_end) {
    const double top = s_start ? *s_start : default_top_potential(f);
    return ray_dict(trace_ray(f, Angle::parse(theta), top, s_end));
  }, py::arg("f"), py::arg("theta"), py::arg("s_start") = std::nullopt, py::arg("s_end") = 1e-9);
  m.def("ray_point", [](const MonicPolynomial& f, const std::string& theta, double s) {
    return ray_point(f, Angle::parse(theta), s);
  }, py::arg("f"), py::arg("theta"), py::arg("s"));
  m.def("landing_point", [](const MonicPolynomial& f, const std::string& theta, double tol) {
    return landing_point(f, Angle::parse(theta), tol).point;
  }, py::arg("f"), py::arg("theta"), py::arg("tol") = 1e-9);

  // shift locus
  m.def("solve_f_r", [](const py::object& p, double r, double r_from) {
    const auto P = portrait_arg(p);
    return continue_param_ray(P, std::max(r, r_from), r).back().poly;
  }, py::arg("portrait"), py::arg("r"), py::arg("r_from") = 10.0,
     "polynomial with the given portrait and all critical values at escape rate r");
  m.def("param_ray", [](const py::object& p, double r_from, double r_to, double rho) {
    std::vector<std::pair<double, MonicPolynomial>> out;
    for (const auto& pt : continue_param_ray(portrait_arg(p), r_from, r_to, rho)) out.emplace_back(pt.r, pt.poly);
    return out;
  }, py::arg("portrait"), py::arg("r_from"), py::arg("r_to"), py::arg("rho") = 0.5);
  m.def("landing_probe", [](const py::object& p, double r_min, double tol) {
    return to_py(io::to_json(landing_probe(portrait_arg(p), r_min, tol)));
  }, py::arg("portrait"), py::arg("r_min"), py::arg("tol") = 1e-3);
  m.def("portrait_of", [](const MonicPolynomial& f) { return to_py(io::to_json(portrait_of(f))); }, py::arg("f"));

  // geometry
  m.def("shape", [](const std::vector<cplx>& polygon, cplx z) { return shape(Region::polygon(polygon), z); },
        py::arg("polygon"), py::arg("z"));
  m.def("modulus_concentric", [](double r_in, double r_out) {
    return modulus(AnnulusSpec::concentric(0.0, r_in, r_out));
  }, py::arg("r_in"), py::arg("r_out"));
  m.def("modulus_circle_pair", [](cplx c_out, double r_out, cplx c_in, double r_in) {
    return modulus(AnnulusSpec::circle_pair({c_out, r_out}, {c_in, r_in}));
  }, py::arg("outer_center"), py::arg("outer_radius"), py::arg("inner_center"), py::arg("inner_radius"));
  m.def("area_rho_star_annulus", [](double r1, double r2, cplx center) {
    return area_rho_star(AnnulusSpec::concentric(center, r1, r2));
  }, py::arg("r_in"), py::arg("r_out"), py::arg("center") = cplx(0.0));
  m.def("area_rho_star_disk", [](cplx c, double r) { return area_rho_star(Disk{c, r}); },
        py::arg("center"), py::arg("radius"));
  m.def("validate_m_nested", [](const py::object& sys, double mm) {
    return to_py(io::to_json(validate_m_nested(system_arg(sys), mm)));
  }, py::arg("system"), py::arg("m"));
  m.def("preimage_components", [](const MonicPolynomial& f, cplx center, double radius, int depth) {
    py::list levels;
    for (const auto& lv : preimage_components(f, Region::circle(center, radius, 256), depth)) {
      py::list comps;
      for (const auto& c : lv) {
        py::dict d;
        d["boundary"] = c.boundary;
        d["degree"] = c.degree;
        d["diameter"] = c.diameter;
        d["parent"] = c.parent;
        comps.append(d);
      }
      levels.append(comps);
    }
    return levels;
  }, py::arg("f"), py::arg("center"), py::arg("radius"), py::arg("depth"));
  m.def("backward_stability_probe", [](const MonicPolynomial& f, cplx center, double radius, int depth,
                                       int burn_in, unsigned eta) {
    return to_py(io::to_json(backward_stability_probe(f, Region::circle(center, radius, 256), depth, burn_in, eta)));
  }, py::arg("f"), py::arg("center"), py::arg("radius"), py::arg("depth"), py::arg("burn_in") = 2,
     py::arg("eta") = 2);
}
