#pragma once

#include <array>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ni/geometry.hpp"

namespace ni {

// N_D(x) = (1/|D|) int_D Gamma(x-y) dy, Gamma = (1/2pi) log|.|, via the divergence-form
// boundary reduction (spectrally accurate off the boundary). NotStarShaped per contract.
double newtonian_potential_2d(const BoundaryCurve& curve, const Eigen::Vector2d& x);

// N_E(x) for the solid ellipsoid with semi-axes a, Gamma = -1/(4pi|x|), via the
// one-dimensional ellipsoidal integral.
double ellipsoid_potential_3d(const std::array<double, 3>& a, const Eigen::Vector3d& x);

struct NewtonianFormulationReport {
  double outside_max = 0.0;
  double fit_residual = 0.0;
  std::array<double, 3> fitted_alpha = {0.0, 0.0, 0.0};
  double linear_term_norm = 0.0;
};

// w = |Omega| (N_Omega - N_D) for the confocal pair; exterior smallness and the interior
// quadratic fit. shell_axis_scale_x != 1 breaks confocality (negative control).
NewtonianFormulationReport check_newtonian_formulation(const std::array<double, 3>& c2,
                                                       double rho0, int n_out, int n_in,
                                                       double shell_axis_scale_x = 1.0,
                                                       unsigned seed = 11u);

struct QuadratureReport {
  std::string identity;
  double residual = 0.0;          // max relative residual over the harmonic catalog
  double residual_printed = -1.0; // focal identity with the uncorrected coefficient
  int degree = 0;
  std::vector<double> foci;       // neumann oval: derived (p, 0), (-p, 0)
  std::vector<double> per_degree; // residual per polynomial degree 0..degree
};

// (1/|Omega|) int_Omega u = (1/|D|) int_D u over the harmonic catalog (2-D curves).
QuadratureReport mean_value_identity_2d(const BoundaryCurve& D, const BoundaryCurve& Omega,
                                        int degree);
// Same for centered coaxial ellipsoids (3-D).
QuadratureReport mean_value_identity_3d(const std::array<double, 3>& a_core,
                                        const std::array<double, 3>& a_shell, int degree);

// int_E u = 2 a_d prod_{i<d} a_i/sqrt(a_i^2-a_d^2) * int_F u sqrt(1 - sum x_i^2/(a_i^2-a_d^2));
// also evaluates the uncorrected printed coefficient. DegenerateFoci if a_{d-1} == a_d.
QuadratureReport focal_ellipse_identity(const std::vector<double>& a, int degree);

// int_Omega u = (|Omega|/2)(u(p) + u(-p)) on the Neumann oval; p derived by moment matching.
QuadratureReport neumann_oval_identity(double alpha, double eps, int degree);

// Exact integral of Re/Im z^n over the region bounded by the curve (anti-Laplacian
// boundary reduction); n = 0 gives the area.
double harmonic_area_integral_2d(const BoundaryCurve& curve, int n, bool imaginary);

// Trivariate polynomials with exactly representable coefficients; the harmonic catalogs
// are validated symbolically (Laplacian coefficients identically zero).
struct Poly3 {
  struct Term {
    int i = 0, j = 0, k = 0;
    double c = 0.0;
  };
  std::vector<Term> terms;

  double eval(const Eigen::Vector3d& x) const;
  Poly3 laplacian() const;
  bool is_zero() const;
  int degree() const;
};

std::vector<Poly3> harmonic_catalog_3d(int max_degree);

// int over the solid ellipsoid with semi-axes a of a monomial/polynomial (closed form).
double ellipsoid_poly_integral(const Poly3& p, const std::array<double, 3>& a);

} // namespace ni
