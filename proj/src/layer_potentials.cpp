#include "ni/layer_potentials.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace ni {

namespace {
constexpr double kInv2Pi = 1.0 / (2.0 * std::numbers::pi);
constexpr double kInv4Pi = 1.0 / (4.0 * std::numbers::pi);
} // namespace

Eigen::MatrixXd np_matrix(const BoundaryCurve& curve) {
  const int n = curve.n;
  Eigen::MatrixXd K(n, n);
  for (int k = 0; k < n; ++k) {
    for (int j = 0; j < n; ++j) {
      if (j == k) {
        K(k, j) = curve.kappa[k] * kInv4Pi * curve.w[k];
        continue;
      }
      Eigen::Vector2d d = curve.x[k] - curve.x[j];
      K(k, j) = kInv2Pi * d.dot(curve.nu[k]) / d.squaredNorm() * curve.w[j];
    }
  }
  return K;
}

Eigen::MatrixXd dnS_cross_matrix(const BoundaryCurve& source, const BoundaryCurve& target) {
  double sep = std::numeric_limits<double>::infinity();
  for (const auto& p : target.x) sep = std::min(sep, source.distance_to(p));
  double spacing = std::max(source.perimeter() / source.n, target.perimeter() / target.n);
  if (sep < 5.0 * spacing)
    fail_validation("CurvesTooClose", "boundary separation below 5x node spacing");

  Eigen::MatrixXd A(target.n, source.n);
  for (int k = 0; k < target.n; ++k) {
    for (int j = 0; j < source.n; ++j) {
      Eigen::Vector2d d = target.x[k] - source.x[j];
      A(k, j) = kInv2Pi * d.dot(target.nu[k]) / d.squaredNorm() * source.w[j];
    }
  }
  return A;
}

Eigen::VectorXd single_layer_eval(const BoundaryCurve& curve, const Eigen::VectorXd& density,
                                  const std::vector<Eigen::Vector2d>& points) {
  if (density.size() != curve.n)
    fail_validation("DegenerateCurve", "density size does not match curve node count");
  double cutoff = curve.min_eval_distance();
  Eigen::VectorXd out(points.size());
  for (std::size_t p = 0; p < points.size(); ++p) {
    if (curve.distance_to(points[p]) <= cutoff)
      fail_validation("PointTooClose", "evaluation point within 2pi*perimeter/n of the curve");
    double s = 0.0;
    for (int j = 0; j < curve.n; ++j)
      s += std::log((points[p] - curve.x[j]).norm()) * density[j] * curve.w[j];
    out[p] = kInv2Pi * s;
  }
  return out;
}

double single_layer_eval(const BoundaryCurve& curve, const Eigen::VectorXd& density,
                         const Eigen::Vector2d& point) {
  return single_layer_eval(curve, density, std::vector<Eigen::Vector2d>{point})[0];
}

} // namespace ni
