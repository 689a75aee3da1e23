#pragma once

#include <array>

#include <Eigen/Dense>

#include "ni/errors.hpp"

namespace ni {

// Confocal pair: core ellipsoid sum x_j^2/c_j^2 = 1, shell sum x_j^2/(c_j^2+rho0) = 1.
struct EllipsoidPair {
  std::array<double, 3> c2 = {1.0, 1.0, 1.0}; // squared semi-axes of the core
  double rho0 = 1.0;

  double g(double rho) const { return (c2[0] + rho) * (c2[1] + rho) * (c2[2] + rho); }
  double volume_core() const;
  double volume_shell() const;
  double fraction() const; // sqrt(g(0)/g(rho0))
  void validate() const;
};

// Unique rho >= 0 with sum x_j^2/(c_j^2+rho) = 1; InsideCore if x is inside the core.
double ellipsoidal_coordinate(const Eigen::Vector3d& x, const std::array<double, 3>& c2);

struct EllipsoidIntegrals {
  double g = 0.0;
  std::array<double, 3> phi = {0.0, 0.0, 0.0}; // int_rho^inf ds/((c_j^2+s) sqrt(g))
  double I = 0.0;                              // int_rho^inf g^{-1/2} ds
};

EllipsoidIntegrals ellipsoid_integrals(double rho, const std::array<double, 3>& c2);

// alpha_j = -(1/4) int_0^rho0 (c_j^2+s)^{-1} sqrt(g(rho0)/g(s)) ds
std::array<double, 3> alpha_coefficients(double rho0, const std::array<double, 3>& c2);

// Solution of the over-determined problem: Delta w = 1 in the shell, grad w = 0 on the
// outer boundary, grad w = A x on the inner one.
struct OdpSolution {
  bool is_balls = false;
  EllipsoidPair pair;              // confocal case
  double r_i = 1.0, r_e = 2.0;     // ball case
  double corruption_x1sq = 0.0;    // adds corruption * x1^2 to w (negative controls)

  double w(const Eigen::Vector3d& x) const;          // OutsideShell off the closed shell
  Eigen::Vector3d grad_w(const Eigen::Vector3d& x) const;
  Eigen::Matrix3d A() const;
  Eigen::Vector3d b() const { return Eigen::Vector3d::Zero(); }
  double scale() const; // outer semi-axis (FD steps, sampling)
};

OdpSolution odp_confocal(const EllipsoidPair& pair);
OdpSolution odp_balls(double r_i, double r_e);

struct OdpResidualReport {
  double laplacian_residual = 0.0;   // max |Delta_h w - 1|, 7-point stencil
  double outer_grad_max = 0.0;       // max |grad w| on the outer boundary
  double inner_affine_residual = 0.0; // max |grad w - (A x + b)| on the inner boundary
};

OdpResidualReport odp_residual(const OdpSolution& sol, int n_samples, unsigned seed = 7u);

} // namespace ni
