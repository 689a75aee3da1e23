#pragma once

#include <array>
#include <limits>
#include <string>

#include <Eigen/Dense>

#include "ni/geometry.hpp"

namespace ni {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Core-shell-matrix conductivities. sigma_c = +inf marks a perfect conductor.
struct ConductivityProfile {
  double sigma_c = 1.0;
  double sigma_s = 1.0;
  std::array<double, 3> sigma_m = {1.0, 1.0, 1.0}; // diagonal, first d entries used
  int d = 2;

  bool core_infinite() const { return std::isinf(sigma_c); }
  bool matrix_isotropic() const;
  double sigma_m_iso() const; // validation error if anisotropic
  double lambda() const;      // (sigma_c+sigma_s)/(2(sigma_c-sigma_s)); 1/2 for inf core
  double mu() const;          // (sigma_s+sigma_m)/(2(sigma_s-sigma_m)), isotropic only
  double contrast_k() const;  // sigma_c / sigma_m for simple inclusions
  double gamma() const { return 1.0 - sigma_c / sigma_s; }
  void validate() const;
};

struct PolarizationTensor {
  Eigen::Matrix2d m = Eigen::Matrix2d::Zero();
  int d = 2;
  double area_core = 0.0;
  double area_shell = 0.0; // 0 when there is no shell
  double contrast = 1.0;   // k for simple, sigma_c/sigma_m for core-shell metadata
  std::string flag;        // "singular_contrast" when k == 1
};

// Densities of the transmission solve, kept for field evaluation.
struct TransmissionSolution {
  BoundaryCurve core;
  BoundaryCurve shell;       // unused when has_shell == false
  bool has_shell = false;
  Eigen::MatrixXd phi1;      // n x 2, columns l = 1, 2
  Eigen::MatrixXd phi2;      // m x 2
  PolarizationTensor pt;
};

// (lambda0 I - K*) phi = nu_l, m_ll' = sum x_l' phi w. k = +inf allowed (lambda0 = 1/2,
// solved with rank-one deflation pinning the total charge to zero).
TransmissionSolution solve_simple(const BoundaryCurve& curve, double k);
PolarizationTensor pt_simple(const BoundaryCurve& curve, double k);

// Block system [[-lambda I + K*_D, dnS_Omega],[dnS_D, -mu I + K*_Omega]] (phi1, phi2) = -(nu_l, nu_l).
TransmissionSolution solve_coreshell(const BoundaryCurve& core, const BoundaryCurve& shell,
                                     const ConductivityProfile& profile);
PolarizationTensor pt_coreshell(const BoundaryCurve& core, const BoundaryCurve& shell,
                                const ConductivityProfile& profile);

struct HsReport {
  double upper_slack = 0.0;
  double lower_slack = 0.0;
  bool attains_lower = false;
};

// Hashin-Shtrikman trace bounds for a simple simply connected inclusion.
// Slacks are oriented so that both must be nonnegative for k > 1 and k < 1 alike.
HsReport hs_check(const PolarizationTensor& M, double k, double area);

} // namespace ni
