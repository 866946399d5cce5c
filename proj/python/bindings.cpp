#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fraclaw/errors.hpp"
#include "fraclaw/kernel.hpp"
#include "fraclaw/solver.hpp"
#include "fraclaw/verification.hpp"

namespace py = pybind11;
using namespace pybind11::literals;
using namespace fraclaw;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

Field to_field(const Array& a, const Grid& g) {
  if (a.ndim() != 1 || static_cast<std::size_t>(a.shape(0)) != g.size()) {
    throw GridMismatch("array length " + std::to_string(a.size()) + " does not match n = " +
                       std::to_string(g.size()));
  }
  return Field(g, std::vector<double>(a.data(), a.data() + a.size()));
}

Array to_array(const Field& f) { return Array(f.size(), f.values.data()); }

py::array_t<std::complex<double>> to_array(const Spectrum& s) {
  return py::array_t<std::complex<double>>(s.size(), s.data());
}

}  // namespace

PYBIND11_MODULE(_fraclaw, m) {
  m.doc() = "Nonlocal conservation laws with one-sided fractional diffusion";

  py::register_exception<InvalidParameter>(m, "InvalidParameter", PyExc_ValueError);
  py::register_exception<GridMismatch>(m, "GridMismatch", PyExc_ValueError);
  py::register_exception<SupportEscapes>(m, "SupportEscapes", PyExc_ValueError);
  py::register_exception<Unresolved>(m, "Unresolved", PyExc_RuntimeError);
  py::register_exception<BlowUp>(m, "BlowUp", PyExc_RuntimeError);
  py::register_exception<InsufficientData>(m, "InsufficientData", PyExc_RuntimeError);

  py::class_<Grid>(m, "Grid")
      .def(py::init<std::size_t, double>(), "n"_a, "half_width"_a)
      .def_property_readonly("n", &Grid::size)
      .def_property_readonly("half_width", &Grid::half_width)
      .def_property_readonly("dx", &Grid::dx)
      .def("points", [](const Grid& g) { return py::array(py::cast(g.points())); })
      .def("wavenumbers", [](const Grid& g) { return py::array(py::cast(g.wavenumbers())); })
      .def("__repr__", [](const Grid& g) {
        return "Grid(n=" + std::to_string(g.size()) + ", half_width=" +
               std::to_string(g.half_width()) + ")";
      });

  py::class_<FractionalOperatorSpec>(m, "Operator")
      .def_static("weyl_marchaud", &FractionalOperatorSpec::weyl_marchaud, "alpha"_a)
      .def_static("weyl_marchaud_adjoint", &FractionalOperatorSpec::weyl_marchaud_adjoint,
                  "alpha"_a)
      .def_static("dx_weyl_marchaud", &FractionalOperatorSpec::dx_weyl_marchaud, "alpha"_a)
      .def_static("dx_weyl_marchaud_adjoint", &FractionalOperatorSpec::dx_weyl_marchaud_adjoint,
                  "alpha"_a)
      .def_static("riesz_feller", &FractionalOperatorSpec::riesz_feller, "beta"_a, "gamma"_a)
      .def_static("fractional_laplacian", &FractionalOperatorSpec::fractional_laplacian,
                  "theta"_a)
      .def_property_readonly("kind", [](const FractionalOperatorSpec& s) { return to_string(s.kind); })
      .def_property_readonly("stability_index", &FractionalOperatorSpec::stability_index)
      .def_property_readonly("skewness", &FractionalOperatorSpec::skewness)
      .def("__repr__", [](const FractionalOperatorSpec& s) {
        return "Operator(" + to_string(s.kind) + ", alpha=" + std::to_string(s.alpha) +
               ", beta=" + std::to_string(s.beta) + ", gamma=" + std::to_string(s.gamma) + ")";
      });

  m.def("symbol", [](const FractionalOperatorSpec& s, const Grid& g) {
    return to_array(make_symbol(s, g).values);
  }, "spec"_a, "grid"_a, "Multiplier on the half spectrum of the grid.");
  m.def("apply_spectral", [](const FractionalOperatorSpec& s, const Grid& g, const Array& f) {
    return to_array(apply_spectral(s, to_field(f, g)));
  }, "spec"_a, "grid"_a, "values"_a);
  m.def("apply_quadrature", [](const FractionalOperatorSpec& s, const Grid& g, const Array& f) {
    return to_array(apply_quadrature(s, to_field(f, g)));
  }, "spec"_a, "grid"_a, "values"_a);
  m.def("riesz_feller_coeffs", [](double beta, double gamma) {
    const auto c = riesz_feller_coeffs(beta, gamma);
    return py::make_tuple(c.c1, c.c2);
  }, "beta"_a, "gamma"_a);

  m.def("kernel", [](double t, const FractionalOperatorSpec& s, const Grid& g) {
    return to_array(kernel_field(t, s, g).field);
  }, "t"_a, "spec"_a, "grid"_a, "Semigroup kernel K(t, .) sampled on the grid.");
  m.def("evolve_linear", [](const FractionalOperatorSpec& s, const Grid& g, const Array& f,
                            double t) { return to_array(evolve_linear(to_field(f, g), s, t)); },
        "spec"_a, "grid"_a, "values"_a, "t"_a);
  m.def("self_similarity_residual", &self_similarity_residual, "t"_a, "spec"_a, "grid"_a);
  m.def("loglog_slope", &loglog_slope, "x"_a, "y"_a);

  py::class_<SolverConfig>(m, "SolverConfig")
      .def(py::init<>())
      .def_readwrite("q", &SolverConfig::q)
      .def_readwrite("spec", &SolverConfig::spec)
      .def_readwrite("grid", &SolverConfig::grid)
      .def_readwrite("dt", &SolverConfig::dt)
      .def_readwrite("t_end", &SolverConfig::t_end)
      .def_property("scheme", [](const SolverConfig& c) { return to_string(c.scheme); },
                    [](SolverConfig& c, const std::string& s) { c.scheme = scheme_from_string(s); })
      .def_readwrite("dealias", &SolverConfig::dealias)
      .def_readwrite("delta", &SolverConfig::delta)
      .def_readwrite("epsilon", &SolverConfig::epsilon)
      .def_readwrite("diffusion_scale", &SolverConfig::diffusion_scale)
      .def_readwrite("nonlinear", &SolverConfig::nonlinear)
      .def("validate", &SolverConfig::validate)
      .def_property_readonly("subcritical", &SolverConfig::subcritical);

  py::class_<InitialProfile>(m, "InitialProfile")
      .def_static("gaussian", &InitialProfile::gaussian, "mass"_a, "width"_a, "center"_a = 0.0)
      .def_static("box", &InitialProfile::box, "mass"_a, "width"_a, "center"_a = 0.0)
      .def_readonly("mass", &InitialProfile::mass)
      .def_readonly("width", &InitialProfile::width)
      .def_readonly("center", &InitialProfile::center)
      .def("sample", [](const InitialProfile& p, const Grid& g) { return to_array(p.sample(g)); });

  py::class_<Trajectory>(m, "Trajectory")
      .def_readonly("config", &Trajectory::config)
      .def_readonly("initial_mass", &Trajectory::initial_mass)
      .def_property_readonly("times", [](const Trajectory& t) { return py::array(py::cast(t.times)); })
      .def_property_readonly("initial", [](const Trajectory& t) { return to_array(t.initial); })
      .def_property_readonly("fields", [](const Trajectory& t) {
        const std::size_t n = t.config.grid.size();
        py::array_t<double> out({t.fields.size(), n});
        auto w = out.mutable_unchecked<2>();
        for (std::size_t i = 0; i < t.fields.size(); ++i) {
          for (std::size_t j = 0; j < n; ++j) w(i, j) = t.fields[i][j];
        }
        return out;
      })
      .def("at", [](const Trajectory& t, double s) { return to_array(t.at(s)); }, "t"_a);

  m.def("solve", [](const Array& u0, const SolverConfig& c, const std::vector<double>& times) {
    const Field f = to_field(u0, c.grid);
    py::gil_scoped_release release;
    return solve(f, c, times);
  }, "u0"_a, "config"_a, "snapshot_times"_a);
  m.def("solve_rescaled", [](const InitialProfile& p, const SolverConfig& c, double lambda,
                             const std::vector<double>& times) {
    py::gil_scoped_release release;
    return solve_rescaled(p, c, lambda, times);
  }, "profile"_a, "config"_a, "lam"_a, "snapshot_times"_a);
  m.def("uniform_snapshots", &uniform_snapshots, "dt"_a, "t_end"_a, "every"_a);
  m.def("mild_residual", &mild_residual, "trajectory"_a, "t"_a);

  py::class_<NWaveParams>(m, "NWaveParams")
      .def(py::init([](double mass, double q) { return NWaveParams{mass, q}; }), "mass"_a = 1.0,
           "q"_a = 1.3)
      .def_readwrite("mass", &NWaveParams::mass)
      .def_readwrite("q", &NWaveParams::q);
  m.def("nwave_front", &nwave_front, "t"_a, "params"_a);
  m.def("nwave_max", &nwave_max, "t"_a, "params"_a);
  m.def("nwave_cell_averages", [](double t, const Grid& g, const NWaveParams& p) {
    return to_array(nwave_cell_averages(t, g, p));
  }, "t"_a, "grid"_a, "params"_a);

  m.def("oleinik_sup", [](const Grid& g, const Array& u, double q) {
    return oleinik_sup(to_field(u, g), q);
  }, "grid"_a, "values"_a, "q"_a);
  m.def("lp_decay_bound", &lp_decay_bound, "t"_a, "p"_a, "q"_a, "mass"_a);
  m.def("asymptotic_distance", [](const Grid& g, const Array& u, double t, double p,
                                  const NWaveParams& params) {
    return asymptotic_distance(to_field(u, g), t, p, params);
  }, "grid"_a, "values"_a, "t"_a, "p"_a, "params"_a);
}
