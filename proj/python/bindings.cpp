#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ni/ellipsoid.hpp"
#include "ni/errors.hpp"
#include "ni/fields.hpp"
#include "ni/geometry.hpp"
#include "ni/neutrality.hpp"
#include "ni/polarization.hpp"
#include "ni/quadrature_domains.hpp"

namespace py = pybind11;
using namespace ni;

namespace {

ConductivityProfile make_profile(double sigma_c, double sigma_s, double sigma_m, int d) {
  ConductivityProfile p;
  p.sigma_c = sigma_c;
  p.sigma_s = sigma_s;
  p.sigma_m = {sigma_m, sigma_m, sigma_m};
  p.d = d;
  return p;
}

} // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Boundary-integral tools for neutral and weakly neutral inclusions";

  py::register_exception<validation_error>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<numerical_error>(m, "NumericalError", PyExc_RuntimeError);

  m.attr("K_INF") = kInf;

  py::class_<ConformalMap>(m, "ConformalMap")
      .def(py::init<std::vector<complexd>>(), py::arg("coeffs"))
      .def_property_readonly("b_D", &ConformalMap::b_D)
      .def("map", &ConformalMap::map, py::arg("zeta"))
      .def("enclosed_area", &ConformalMap::enclosed_area)
      .def_readonly("coeffs", &ConformalMap::coeffs);

  py::class_<BoundaryCurve>(m, "BoundaryCurve")
      .def_readonly("n", &BoundaryCurve::n)
      .def("area", &BoundaryCurve::area)
      .def("perimeter", &BoundaryCurve::perimeter)
      .def("circumradius", &BoundaryCurve::circumradius)
      .def("is_star_shaped", &BoundaryCurve::is_star_shaped);

  m.def(
      "circle",
      [](double r, double cx, double cy, int n) {
        return build_curve(CurveSpec::circle(r, {cx, cy}), n);
      },
      py::arg("r"), py::arg("cx") = 0.0, py::arg("cy") = 0.0, py::arg("n") = 256);
  m.def(
      "ellipse",
      [](double a, double b, double cx, double cy, int n) {
        return build_curve(CurveSpec::ellipse(a, b, {cx, cy}), n);
      },
      py::arg("a"), py::arg("b"), py::arg("cx") = 0.0, py::arg("cy") = 0.0, py::arg("n") = 256);
  m.def(
      "conformal_curve",
      [](const ConformalMap& map, double dilation, int n) {
        return build_curve(CurveSpec::conformal(map, dilation), n);
      },
      py::arg("map"), py::arg("dilation") = 1.0, py::arg("n") = 256);
  m.def(
      "perturbed_disk",
      [](double r_i, double a0, std::vector<double> cos_c, std::vector<double> sin_c, int n) {
        TrigPoly h;
        h.a0 = a0;
        h.cos_c = std::move(cos_c);
        h.sin_c = std::move(sin_c);
        return build_curve(CurveSpec::perturbed_disk(r_i, h), n);
      },
      py::arg("r_i"), py::arg("a0") = 0.0, py::arg("cos_c") = std::vector<double>{},
      py::arg("sin_c") = std::vector<double>{}, py::arg("n") = 256);
  m.def(
      "neumann_oval_curve",
      [](double alpha, double eps, int n) {
        return build_curve(CurveSpec::neumann_oval(alpha, eps), n);
      },
      py::arg("alpha"), py::arg("eps"), py::arg("n") = 256);

  py::class_<ConductivityProfile>(m, "ConductivityProfile")
      .def(py::init(&make_profile), py::arg("sigma_c"), py::arg("sigma_s"),
           py::arg("sigma_m") = 1.0, py::arg("d") = 2)
      .def_readwrite("sigma_c", &ConductivityProfile::sigma_c)
      .def_readwrite("sigma_s", &ConductivityProfile::sigma_s)
      .def_readwrite("d", &ConductivityProfile::d);

  py::class_<PolarizationTensor>(m, "PolarizationTensor")
      .def_property_readonly("m", [](const PolarizationTensor& p) { return p.m; })
      .def_readonly("d", &PolarizationTensor::d)
      .def_readonly("area_core", &PolarizationTensor::area_core)
      .def_readonly("area_shell", &PolarizationTensor::area_shell)
      .def_readonly("contrast", &PolarizationTensor::contrast)
      .def_readonly("flag", &PolarizationTensor::flag);

  py::class_<HsReport>(m, "HsReport")
      .def_readonly("upper_slack", &HsReport::upper_slack)
      .def_readonly("lower_slack", &HsReport::lower_slack)
      .def_readonly("attains_lower", &HsReport::attains_lower);

  m.def("pt_simple", &pt_simple, py::arg("curve"), py::arg("k"));
  m.def("pt_coreshell", &pt_coreshell, py::arg("core"), py::arg("shell"), py::arg("profile"));
  m.def("hs_check", &hs_check, py::arg("pt"), py::arg("k"), py::arg("area"));

  m.def("neutral_matrix_conductivity", &neutral_matrix_conductivity, py::arg("sigma_c"),
        py::arg("sigma_s"), py::arg("f"), py::arg("d") = 2);

  py::class_<CoatingResult>(m, "CoatingResult")
      .def_readonly("r", &CoatingResult::r)
      .def_readonly("sigma_s", &CoatingResult::sigma_s)
      .def_readonly("sigma_m", &CoatingResult::sigma_m)
      .def_readonly("core", &CoatingResult::core)
      .def_readonly("shell", &CoatingResult::shell)
      .def_readonly("profile", &CoatingResult::profile);
  m.def("construct_coating_bD0", &construct_coating_bD0, py::arg("map"), py::arg("sigma_s"),
        py::arg("n_nodes") = 512);

  py::class_<BondingParameter>(m, "BondingParameter")
      .def_readonly("A", &BondingParameter::A)
      .def_readonly("B", &BondingParameter::B)
      .def_readonly("A_printed", &BondingParameter::A_printed)
      .def_readonly("b_abs", &BondingParameter::b_abs)
      .def_readonly("rotation", &BondingParameter::rotation)
      .def_readonly("is_weakly_neutral", &BondingParameter::is_weakly_neutral)
      .def_readonly("samples", &BondingParameter::samples)
      .def("min_sample", &BondingParameter::min_sample);
  m.def("beta_weakly_neutral", &beta_weakly_neutral, py::arg("map"), py::arg("n_nodes") = 512);
  m.def("bonding_constant", &bonding_constant, py::arg("map"), py::arg("value"),
        py::arg("n_nodes") = 512);
  m.def("beta_disk", &beta_disk, py::arg("r"), py::arg("sigma_c"), py::arg("sigma_m"));

  py::class_<LcDiskSolution>(m, "LcDiskSolution")
      .def_readonly("c", &LcDiskSolution::c)
      .def_readonly("d", &LcDiskSolution::d);
  m.def("solve_lc_disk", &solve_lc_disk, py::arg("r"), py::arg("sigma_c"), py::arg("sigma_m"),
        py::arg("beta"));

  py::class_<CoatingSearchResult>(m, "CoatingSearchResult")
      .def_readonly("b", &CoatingSearchResult::b)
      .def_readonly("iterations", &CoatingSearchResult::iterations)
      .def_readonly("m_norm", &CoatingSearchResult::m_norm)
      .def_readonly("r_e", &CoatingSearchResult::r_e)
      .def_readonly("area_shell", &CoatingSearchResult::area_shell);
  m.def(
      "find_coating_perturbed_disk",
      [](double a0, std::vector<double> cos_c, std::vector<double> sin_c, double sigma_c,
         double sigma_s, double sigma_m, double r_i, double tol, int max_iter, int nodes) {
        TrigPoly h;
        h.a0 = a0;
        h.cos_c = std::move(cos_c);
        h.sin_c = std::move(sin_c);
        CoatingSearchOptions opts;
        opts.tol = tol;
        opts.max_iter = max_iter;
        opts.nodes = nodes;
        return find_coating_perturbed_disk(h, sigma_c, sigma_s, sigma_m, r_i, opts);
      },
      py::arg("a0"), py::arg("cos_c"), py::arg("sin_c"), py::arg("sigma_c"), py::arg("sigma_s"),
      py::arg("sigma_m"), py::arg("r_i") = 1.0, py::arg("tol") = 1e-8, py::arg("max_iter") = 25,
      py::arg("nodes") = 256);

  py::class_<ConfocalConductivityResult>(m, "ConfocalConductivityResult")
      .def_readonly("sigma_m", &ConfocalConductivityResult::sigma_m)
      .def_readonly("beta_j", &ConfocalConductivityResult::beta_j)
      .def_readonly("alpha", &ConfocalConductivityResult::alpha)
      .def_readonly("gamma", &ConfocalConductivityResult::gamma)
      .def_readonly("f", &ConfocalConductivityResult::f)
      .def_readonly("trace_residual", &ConfocalConductivityResult::trace_residual);
  m.def("confocal_matrix_conductivity", &confocal_matrix_conductivity, py::arg("c2"),
        py::arg("rho0"), py::arg("sigma_c"), py::arg("sigma_s"));

  m.def("ellipsoidal_coordinate", &ellipsoidal_coordinate, py::arg("x"), py::arg("c2"));
  m.def("alpha_coefficients", &alpha_coefficients, py::arg("rho0"), py::arg("c2"));

  py::class_<EllipsoidPair>(m, "EllipsoidPair")
      .def(py::init([](std::array<double, 3> c2, double rho0) {
             return EllipsoidPair{c2, rho0};
           }),
           py::arg("c2"), py::arg("rho0"))
      .def_readonly("c2", &EllipsoidPair::c2)
      .def_readonly("rho0", &EllipsoidPair::rho0)
      .def("fraction", &EllipsoidPair::fraction)
      .def("volume_core", &EllipsoidPair::volume_core)
      .def("volume_shell", &EllipsoidPair::volume_shell);

  py::class_<OdpSolution>(m, "OdpSolution")
      .def_readonly("is_balls", &OdpSolution::is_balls)
      .def("w", &OdpSolution::w, py::arg("x"))
      .def("grad_w", &OdpSolution::grad_w, py::arg("x"))
      .def("A", &OdpSolution::A)
      .def("b", &OdpSolution::b)
      .def("scale", &OdpSolution::scale);
  py::class_<OdpResidualReport>(m, "OdpResidualReport")
      .def_readonly("laplacian_residual", &OdpResidualReport::laplacian_residual)
      .def_readonly("outer_grad_max", &OdpResidualReport::outer_grad_max)
      .def_readonly("inner_affine_residual", &OdpResidualReport::inner_affine_residual);
  m.def("odp_confocal", &odp_confocal, py::arg("pair"));
  m.def("odp_balls", &odp_balls, py::arg("r_i"), py::arg("r_e"));
  m.def("odp_residual", &odp_residual, py::arg("sol"), py::arg("n_samples") = 200,
        py::arg("seed") = 7u);

  m.def("newtonian_potential_2d", &newtonian_potential_2d, py::arg("curve"), py::arg("x"));
  m.def("ellipsoid_potential_3d", &ellipsoid_potential_3d, py::arg("a"), py::arg("x"));

  py::class_<NewtonianFormulationReport>(m, "NewtonianFormulationReport")
      .def_readonly("outside_max", &NewtonianFormulationReport::outside_max)
      .def_readonly("fit_residual", &NewtonianFormulationReport::fit_residual)
      .def_readonly("fitted_alpha", &NewtonianFormulationReport::fitted_alpha)
      .def_readonly("linear_term_norm", &NewtonianFormulationReport::linear_term_norm);
  m.def("check_newtonian_formulation", &check_newtonian_formulation, py::arg("c2"),
        py::arg("rho0"), py::arg("n_out") = 64, py::arg("n_in") = 64,
        py::arg("shell_axis_scale_x") = 1.0, py::arg("seed") = 11u);

  py::class_<QuadratureReport>(m, "QuadratureReport")
      .def_readonly("identity", &QuadratureReport::identity)
      .def_readonly("residual", &QuadratureReport::residual)
      .def_readonly("residual_printed", &QuadratureReport::residual_printed)
      .def_readonly("degree", &QuadratureReport::degree)
      .def_readonly("foci", &QuadratureReport::foci)
      .def_readonly("per_degree", &QuadratureReport::per_degree);
  m.def("focal_ellipse_identity", &focal_ellipse_identity, py::arg("a"), py::arg("degree") = 6);
  m.def("neumann_oval_identity", &neumann_oval_identity, py::arg("alpha"), py::arg("eps"),
        py::arg("degree") = 6);
  m.def("mean_value_identity_2d", &mean_value_identity_2d, py::arg("D"), py::arg("Omega"),
        py::arg("degree") = 6);
  m.def("mean_value_identity_3d", &mean_value_identity_3d, py::arg("a_core"), py::arg("a_shell"),
        py::arg("degree") = 6);
  m.def("harmonic_area_integral_2d", &harmonic_area_integral_2d, py::arg("curve"), py::arg("n"),
        py::arg("imaginary") = false);

  py::class_<SpectralExteriorSolution>(m, "SpectralExteriorSolution")
      .def_readonly("n_modes", &SpectralExteriorSolution::n_modes)
      .def_readonly("c", &SpectralExteriorSolution::c)
      .def_readonly("lambda_core", &SpectralExteriorSolution::lambda_core)
      .def_readonly("alpha1", &SpectralExteriorSolution::alpha1)
      .def_readonly("flux_residual", &SpectralExteriorSolution::flux_residual)
      .def_readonly("tail_ratio", &SpectralExteriorSolution::tail_ratio)
      .def_readonly("condition", &SpectralExteriorSolution::condition);
  m.def("solve_imperfect_exterior", &solve_imperfect_exterior, py::arg("map"), py::arg("beta"),
        py::arg("a"), py::arg("n_modes") = 64);

  py::class_<FieldSolution>(m, "FieldSolution")
      .def_readonly("provenance", &FieldSolution::provenance)
      .def("u", &FieldSolution::u, py::arg("p"))
      .def("perturbation", &FieldSolution::perturbation, py::arg("p"))
      .def("circumradius", &FieldSolution::circumradius);
  m.def("exterior_field_simple", &exterior_field_simple, py::arg("curve"), py::arg("k"),
        py::arg("a"));
  m.def("exterior_field_coreshell", &exterior_field_coreshell, py::arg("core"), py::arg("shell"),
        py::arg("profile"), py::arg("a"));
  m.def("exterior_field_imperfect", &exterior_field_imperfect, py::arg("map"), py::arg("beta"),
        py::arg("a"), py::arg("n_modes") = 64);

  py::class_<DecayResult>(m, "DecayResult")
      .def_readonly("p", &DecayResult::p)
      .def_readonly("below_noise", &DecayResult::below_noise)
      .def_readonly("delta1", &DecayResult::delta1)
      .def_readonly("delta2", &DecayResult::delta2);
  m.def("decay_exponent", &decay_exponent, py::arg("sol"), py::arg("R1"), py::arg("R2"),
        py::arg("m") = 32);
}
