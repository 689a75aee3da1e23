#pragma once

#include <vector>

#include <Eigen/Dense>

#include "ni/geometry.hpp"

namespace ni {

// Nystrom matrix of the Neumann-Poincare operator K* on a smooth closed curve:
// kernel (1/2pi) <x_k - y_j, nu(x_k)> / |x_k - y_j|^2 * w_j, diagonal kappa_k/(4pi) * w_k.
Eigen::MatrixXd np_matrix(const BoundaryCurve& curve);

// Matrix mapping a density on `source` to d/dnu S_source[phi] at `target` nodes.
// CurvesTooClose if separation < 5 * max node spacing.
Eigen::MatrixXd dnS_cross_matrix(const BoundaryCurve& source, const BoundaryCurve& target);

// S[phi](p) = sum_j (1/2pi) log|p - y_j| phi_j w_j.
// PointTooClose if any point is within 2pi*perimeter/n of the curve.
Eigen::VectorXd single_layer_eval(const BoundaryCurve& curve, const Eigen::VectorXd& density,
                                  const std::vector<Eigen::Vector2d>& points);
double single_layer_eval(const BoundaryCurve& curve, const Eigen::VectorXd& density,
                         const Eigen::Vector2d& point);

} // namespace ni
