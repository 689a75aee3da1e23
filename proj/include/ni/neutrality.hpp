#pragma once

#include <array>
#include <vector>

#include "ni/geometry.hpp"
#include "ni/polarization.hpp"

namespace ni {

// Solve (d-1+sigma_c/sigma_s)(sigma_m/sigma_s - 1) + f (1-sigma_c/sigma_s)(sigma_m/sigma_s + d-1) = 0
// for sigma_m. sigma_c = +inf takes the limit form. NoPositiveSolution if sigma_m <= 0.
double neutral_matrix_conductivity(double sigma_c, double sigma_s, double f, int d);

struct CoatingResult {
  ConformalMap map;
  double r = 1.0;        // shell = Phi({|zeta| = r})
  double sigma_s = 1.0;
  double sigma_m = 1.0;
  BoundaryCurve core;    // Phi({|zeta| = 1})
  BoundaryCurve shell;
  ConductivityProfile profile; // sigma_c = inf, sigma_s, sigma_m = 1
};

// Weakly neutral coating for a map with b_D = 0: r = sqrt((1+sigma_s)/(1-sigma_s)).
// BDNotZero if |b_D| > 1e-12; ShellTooConductive if sigma_s >= 1.
CoatingResult construct_coating_bD0(const ConformalMap& map, double sigma_s, int n_nodes = 512);

// beta = (1/r) sigma_c sigma_m / (sigma_c - sigma_m); NonPositiveBeta if sigma_c <= sigma_m.
double beta_disk(double r, double sigma_c, double sigma_m);

struct BondingParameter {
  std::vector<double> samples;  // beta at theta_k = 2 pi k / n, original frame
  ConformalMap map;
  double rotation = 0.0;        // coordinate rotation making b_D >= 0
  double b_abs = 0.0;           // |b_D|
  double A = 1.0;               // numerator constant (tail-consistent)
  double B = 0.0;               // numerator cos(2theta) coefficient, -4b/(1-b^2)
  double A_printed = 1.0;       // first-order constant (1+b^2)/(1-b^2), for comparison
  bool is_weakly_neutral = false;

  double min_sample() const;
  // numerator(theta) = A + B cos(2(theta - rotation)); beta = numerator/|Phi'(e^{i theta})|
  double numerator(double theta) const;
};

// Imperfect-bonding parameter of the weakly neutral construction.
// BDTooLarge if |b_D| > 2 - sqrt(3).
BondingParameter beta_weakly_neutral(const ConformalMap& map, int n_nodes = 512);
// Constant bonding parameter (control runs).
BondingParameter bonding_constant(const ConformalMap& map, double value, int n_nodes = 512);

struct LcDiskSolution {
  double c = 0.0; // interior slope
  double d = 0.0; // dipole coefficient
};

// Disk with LC bonding: interior u = c a.x, exterior u = a.x + d a.x r^2/|x|^2,
// from sigma_c c = sigma_m (1-d) and beta r (1+d-c) = sigma_m (1-d). sigma_c = +inf allowed.
LcDiskSolution solve_lc_disk(double r, double sigma_c, double sigma_m, double beta);

struct NewtonTraceEntry {
  int iter = 0;
  double m_norm = 0.0;
  std::array<double, 3> b = {0.0, 0.0, 0.0};
};

struct CoatingSearchOptions {
  double tol = 1e-8; // on ||M||_F / |Omega|
  int max_iter = 25;
  int nodes = 256;
};

struct CoatingSearchResult {
  std::array<double, 3> b = {0.0, 0.0, 0.0}; // shell radius b0 + b1 cos2t + b2 sin2t
  int iterations = 0;
  double m_norm = 0.0;
  double r_e = 0.0;
  double area_shell = 0.0;
  std::vector<NewtonTraceEntry> trace;
};

// Damped Newton on (m11, m22, m12) over (b0, b1, b2); the unperturbed pair must be
// neutral (r_e derived from the concentric-disk relation). NoConvergence after max_iter.
CoatingSearchResult find_coating_perturbed_disk(const TrigPoly& h, double sigma_c, double sigma_s,
                                                double sigma_m, double r_i,
                                                const CoatingSearchOptions& opts = {});

struct ConfocalConductivityResult {
  std::array<double, 3> sigma_m = {0.0, 0.0, 0.0};
  std::array<double, 3> beta_j = {0.0, 0.0, 0.0};
  std::array<double, 3> alpha = {0.0, 0.0, 0.0};
  double gamma = 0.0;
  double f = 0.0;
  double trace_residual = 0.0;
};

// Diagonal matrix conductivity making the confocal pair neutral:
// beta_j = -gamma/(2 alpha_j gamma + 1/f), sigma_mj = sigma_s (1 + beta_j).
// GammaTooLarge if |gamma| > min_j (1/f)/(|1-2alpha_j|+1).
ConfocalConductivityResult confocal_matrix_conductivity(const std::array<double, 3>& c2,
                                                        double rho0, double sigma_c,
                                                        double sigma_s);

} // namespace ni
