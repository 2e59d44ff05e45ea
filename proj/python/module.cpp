#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "detfield/errors.hpp"
#include "detfield/flows.hpp"
#include "detfield/fredholm.hpp"
#include "detfield/glsolver.hpp"
#include "detfield/gramian.hpp"
#include "detfield/kernels.hpp"
#include "detfield/pointfield.hpp"
#include "detfield/realization.hpp"
#include "detfield/verify.hpp"

namespace py = pybind11;
using namespace detfield;

namespace {

std::vector<BoundState> to_bound_states(const std::vector<std::pair<double, double>>& pairs) {
  std::vector<BoundState> out;
  for (const auto& [kappa, c] : pairs) out.push_back({kappa, c});
  return out;
}

}  // namespace

PYBIND11_MODULE(_detfield, m) {
  m.doc() = "Determinant fields of finite-rank state-space systems";

  auto error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<InvalidArgument>(m, "InvalidArgument", error.ptr());
  py::register_exception<HypothesisViolation>(m, "HypothesisViolation", error.ptr());
  py::register_exception<SingularMatrix>(m, "SingularMatrix", error.ptr());
  py::register_exception<NumericalFailure>(m, "NumericalFailure", error.ptr());

  py::class_<ScatteringData>(m, "ScatteringData")
      .def(py::init([](const std::vector<std::pair<double, double>>& pairs) {
             return ScatteringData(to_bound_states(pairs));
           }),
           py::arg("bound_states"))
      .def_property_readonly("bound_states",
                             [](const ScatteringData& d) {
                               std::vector<std::pair<double, double>> out;
                               for (const BoundState& b : d.bound_states()) out.emplace_back(b.kappa, b.c);
                               return out;
                             })
      .def("__len__", &ScatteringData::size);

  py::class_<StateSpaceSystem>(m, "StateSpaceSystem")
      .def(py::init<Matrix, Matrix, Matrix>(), py::arg("A"), py::arg("B"), py::arg("C"))
      .def_property_readonly("dim", &StateSpaceSystem::dim)
      .def_property_readonly("A", &StateSpaceSystem::a)
      .def_property_readonly("B", &StateSpaceSystem::b)
      .def_property_readonly("C", &StateSpaceSystem::c)
      .def_property_readonly("eigenvalues", &StateSpaceSystem::eigenvalues)
      .def("impulse", &StateSpaceSystem::impulse)
      .def("is_self_adjoint", &StateSpaceSystem::is_self_adjoint, py::arg("tol") = 1e-12);

  py::class_<HypothesisReport>(m, "HypothesisReport")
      .def_readonly("traceclass_bound", &HypothesisReport::traceclass_bound)
      .def_readonly("norm_Q0", &HypothesisReport::norm_Q0)
      .def_readonly("norm_L0", &HypothesisReport::norm_L0)
      .def_readonly("ok", &HypothesisReport::ok);

  m.def("realize_from_bound_states", &realize_from_bound_states);
  m.def("phi", &phi);
  m.def("shift", &shift);
  m.def("transfer", &transfer);
  m.def("validate_hypotheses", &validate_hypotheses);

  py::class_<GramianBundle>(m, "GramianBundle")
      .def_readonly("x", &GramianBundle::x)
      .def_readonly("Q", &GramianBundle::Q)
      .def_readonly("L", &GramianBundle::L)
      .def_readonly("R", &GramianBundle::R);
  m.def("gramians", &gramians);
  m.def("lyapunov_residual", py::overload_cast<const StateSpaceSystem&, double>(&lyapunov_residual));

  m.def("det_gap", &det_gap);
  m.def("det_gramian", &det_gramian);
  m.def("det_hankel", &det_hankel_via_R);
  m.def("det_square", &det_square);
  m.def("det_zs", &det_zs);

  py::enum_<GLKind>(m, "GLKind").value("scalar", GLKind::scalar).value("zs", GLKind::zs);
  py::class_<GLSolution>(m, "GLSolution")
      .def(py::init<StateSpaceSystem, Complex, GLKind>(), py::arg("system"), py::arg("lam") = Complex(1.0),
           py::arg("kind") = GLKind::scalar)
      .def_property_readonly("kind", &GLSolution::kind);
  m.def("gl_T", &gl_T);
  m.def("potential_q", &potential_q, py::arg("sol"), py::arg("x"), py::arg("h") = 1e-4);
  m.def("potential_q_analytic", &potential_q_analytic);
  m.def("schrodinger_residual", &schrodinger_residual, py::arg("sol"), py::arg("x"), py::arg("k"),
        py::arg("h") = 1e-3);
  m.def("zs_potential", &zs_potential);
  m.def("nls_potential_sq", &nls_potential_sq, py::arg("sol"), py::arg("x"), py::arg("h") = 1e-3);

  m.def("airy", &airy);
  m.def("airy_kernel", &airy_kernel, py::arg("x"), py::arg("y"), py::arg("lam") = 0.0);
  m.def("sine_kernel", &sine_kernel);
  m.def("tw_gap", &tw_gap, py::arg("s"), py::arg("n") = 120);

  py::class_<CountDistribution>(m, "CountDistribution")
      .def_property_readonly("eigenvalues", &CountDistribution::eigenvalues)
      .def_property_readonly("probabilities", &CountDistribution::probabilities)
      .def_property_readonly("mean", &CountDistribution::mean);
  m.def("count_distribution", py::overload_cast<const std::vector<double>&>(&count_distribution));
  m.def("gap_probability", &gap_probability);
  m.def("sample_count", py::overload_cast<const CountDistribution&, std::uint64_t>(&sample_count));

  m.def("kdv_evolve", &kdv_evolve);
  m.def("kdv_potential", &kdv_potential);
  m.def("kdv_pde_residual", &kdv_pde_residual, py::arg("data"), py::arg("x"), py::arg("t"), py::arg("h_x") = 1e-2,
        py::arg("h_t") = 1e-3);

  py::class_<VerifyRow>(m, "VerifyRow")
      .def_readonly("name", &VerifyRow::name)
      .def_readonly("passed", &VerifyRow::passed)
      .def_readonly("error", &VerifyRow::error)
      .def_readonly("tolerance", &VerifyRow::tolerance)
      .def_readonly("detail", &VerifyRow::detail);
  py::class_<VerifyReport>(m, "VerifyReport")
      .def_readonly("rows", &VerifyReport::rows)
      .def("all_passed", &VerifyReport::all_passed);
  m.def("run_verification", &run_verification, py::call_guard<py::gil_scoped_release>());
}
