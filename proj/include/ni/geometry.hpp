#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "ni/errors.hpp"

namespace ni {

using complexd = std::complex<double>;

// Exterior Riemann map Phi(zeta) = zeta + sum_{n>=1} b_n zeta^{-n}.
struct ConformalMap {
  std::vector<complexd> coeffs; // b_1, b_2, ...

  ConformalMap() = default;
  explicit ConformalMap(std::vector<complexd> b);

  complexd b_D() const { return coeffs.empty() ? complexd(0.0) : coeffs[0]; }
  complexd map(complexd zeta) const;
  complexd dmap(complexd zeta) const;
  complexd ddmap(complexd zeta) const;
  // pi (1 - sum n |b_n|^2), area enclosed by the image of the unit circle
  double enclosed_area() const;
  // NonInjectiveMap if |Phi'| vanishes on a probe grid at radius r,
  // DegenerateCurve if the enclosed area is not positive
  void validate(double r = 1.0, int probe = 4096) const;
};

// Trigonometric polynomial h(t) = a0 + sum_k (cos_c[k-1] cos kt + sin_c[k-1] sin kt)
struct TrigPoly {
  double a0 = 0.0;
  std::vector<double> cos_c, sin_c;

  double eval(double t) const;
  double deriv(double t) const;
  double deriv2(double t) const;
  bool is_zero() const;
};

struct BoundaryCurve {
  int n = 0;
  std::vector<double> t;             // equispaced parameters in [0, 2pi)
  std::vector<Eigen::Vector2d> x;    // positions
  std::vector<Eigen::Vector2d> nu;   // outward unit normals
  std::vector<double> speed;         // |x'(t)|
  std::vector<double> kappa;         // signed curvature
  std::vector<double> w;             // arclength quadrature weights (2pi/n * speed)
  bool closed = true;

  double perimeter() const;
  double area() const;               // Green's theorem quadrature
  Eigen::Vector2d centroid() const;  // area centroid
  double circumradius() const;       // max |x_k| (curves here are origin-anchored)
  double min_eval_distance() const;  // layer-potential distance rule: 2pi*perimeter/n
  double distance_to(const Eigen::Vector2d& p) const; // min over nodes
  bool is_star_shaped() const;       // about the area centroid
};

struct CurveSpec {
  enum class Kind { Conformal, PerturbedDisk, Ellipse, Circle, NeumannOval };
  Kind kind = Kind::Circle;

  // Conformal: image of |zeta| = dilation under map
  ConformalMap map;
  double dilation = 1.0;
  // PerturbedDisk: r(t) = r_i + h(t)
  double r_i = 1.0;
  TrigPoly h;
  // Ellipse
  double a = 1.0, b = 1.0;
  Eigen::Vector2d center{0.0, 0.0};
  // Circle
  double r = 1.0;
  // NeumannOval: r(t)^2 = alpha^2 + 4 eps^2 cos^2 t
  double alpha = 1.0, eps = 0.0;

  static CurveSpec conformal(ConformalMap m, double dilation = 1.0);
  static CurveSpec perturbed_disk(double r_i, TrigPoly h);
  static CurveSpec ellipse(double a, double b, Eigen::Vector2d center = {0.0, 0.0});
  static CurveSpec circle(double r, Eigen::Vector2d center = {0.0, 0.0});
  static CurveSpec neumann_oval(double alpha, double eps);
};

// Discretize a curve spec with n equispaced parameter nodes (n >= 16, even).
BoundaryCurve build_curve(const CurveSpec& spec, int n);

double curve_area(const BoundaryCurve& curve);

} // namespace ni
