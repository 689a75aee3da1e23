#pragma once

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ni/geometry.hpp"
#include "ni/neutrality.hpp"
#include "ni/polarization.hpp"

namespace ni {

struct SpectralExteriorSolution {
  int n_modes = 0;
  std::vector<complexd> c;      // coefficients of zeta^{-n}, n = 1..n_modes
  double lambda_core = 0.0;
  complexd alpha{0.0, 0.0};     // a1 - i a2
  complexd alpha1{0.0, 0.0};    // far-field coefficient (= c_1)
  double flux_residual = 0.0;
  double tail_ratio = 0.0;      // |c_{n/2..n}|_inf / max(|c|, tiny): decay diagnostic
  double condition = 0.0;       // Galerkin matrix condition number
};

// Galerkin solve of beta~(theta)(V - lambda_core) = dV/dr on |zeta| = 1 with
// V = Re(alpha Phi + sum c_n zeta^{-n}); beta~ = beta(Phi(e^{it})) |Phi'(e^{it})|.
// IllConditioned if the matrix condition exceeds 1e12.
SpectralExteriorSolution solve_imperfect_exterior(const ConformalMap& map,
                                                  const BondingParameter& beta,
                                                  const Eigen::Vector2d& a, int n_modes);

struct FieldSolution {
  std::string provenance; // "simple" | "coreshell" | "imperfect"
  Eigen::Vector2d a{1.0, 0.0};

  // simple / coreshell
  TransmissionSolution trans;
  // imperfect
  ConformalMap map;
  SpectralExteriorSolution spectral;

  double u(const Eigen::Vector2d& p) const;
  double perturbation(const Eigen::Vector2d& p) const; // u - a.x
  double circumradius() const;
  double mask_distance() const; // near-boundary exclusion radius
};

FieldSolution exterior_field_simple(const BoundaryCurve& curve, double k,
                                    const Eigen::Vector2d& a);
FieldSolution exterior_field_coreshell(const BoundaryCurve& core, const BoundaryCurve& shell,
                                       const ConductivityProfile& profile,
                                       const Eigen::Vector2d& a);
FieldSolution exterior_field_imperfect(const ConformalMap& map, const BondingParameter& beta,
                                       const Eigen::Vector2d& a, int n_modes);

std::vector<double> field_values(const FieldSolution& sol,
                                 const std::vector<Eigen::Vector2d>& points);

struct DecayResult {
  double p = 0.0;
  bool below_noise = false;
  double delta1 = 0.0, delta2 = 0.0;
};

// p = -log(delta(R2)/delta(R1))/log(R2/R1), delta(R) = max over m directions of |u - a.x|.
DecayResult decay_exponent(const FieldSolution& sol, double R1, double R2, int m);

struct FieldGrid {
  int nx = 0, ny = 0;
  double xmin = 0.0, xmax = 0.0, ymin = 0.0, ymax = 0.0;
  std::vector<double> x, y, u, pert; // row-major, NaN where masked
  std::vector<int> mask;             // -1 masked, 0 exterior, 1 core, 2 shell
};

FieldGrid grid_sample(const FieldSolution& sol, const std::array<double, 4>& bbox,
                      int resolution);
std::string grid_to_csv(const FieldGrid& grid); // header x,y,u,pert,mask, 17 digits

} // namespace ni
