#include "ni/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

namespace ni {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Jet2 {
  Eigen::Vector2d x, dx, ddx; // position and parameter derivatives
};

BoundaryCurve assemble(int n, const std::function<Jet2(double)>& jet) {
  BoundaryCurve c;
  c.n = n;
  c.t.resize(n);
  c.x.resize(n);
  c.nu.resize(n);
  c.speed.resize(n);
  c.kappa.resize(n);
  c.w.resize(n);
  for (int k = 0; k < n; ++k) {
    double t = kTwoPi * k / n;
    Jet2 j = jet(t);
    double sp = j.dx.norm();
    if (!(sp > 0.0)) fail_validation("DegenerateCurve", "vanishing tangent speed");
    c.t[k] = t;
    c.x[k] = j.x;
    c.speed[k] = sp;
    c.nu[k] = Eigen::Vector2d(j.dx.y(), -j.dx.x()) / sp;
    c.kappa[k] = (j.dx.x() * j.ddx.y() - j.dx.y() * j.ddx.x()) / (sp * sp * sp);
    c.w[k] = kTwoPi / n * sp;
  }
  return c;
}

void check_simple(const BoundaryCurve& c) {
  // distinct parameters on opposite arcs must not collide; subsampled above 2048 nodes
  int stride = std::max(1, c.n / 2048);
  for (int i = 0; i < c.n; i += stride)
    for (int j = i + 2 * stride; j < c.n; j += stride) {
      if (i == 0 && j + stride > c.n) continue; // parameter neighbors across the seam
      if ((c.x[i] - c.x[j]).norm() <= 0.0)
        fail_validation("DegenerateCurve", "curve self-intersects at nodes");
    }
}

} // namespace

ConformalMap::ConformalMap(std::vector<complexd> b) : coeffs(std::move(b)) { validate(); }

complexd ConformalMap::map(complexd zeta) const {
  complexd out = zeta;
  complexd zi = 1.0 / zeta;
  complexd p = zi;
  for (const complexd& b : coeffs) {
    out += b * p;
    p *= zi;
  }
  return out;
}

complexd ConformalMap::dmap(complexd zeta) const {
  complexd out = 1.0;
  complexd zi = 1.0 / zeta;
  complexd p = zi * zi;
  for (std::size_t n = 0; n < coeffs.size(); ++n) {
    out -= double(n + 1) * coeffs[n] * p;
    p *= zi;
  }
  return out;
}

complexd ConformalMap::ddmap(complexd zeta) const {
  complexd out = 0.0;
  complexd zi = 1.0 / zeta;
  complexd p = zi * zi * zi;
  for (std::size_t n = 0; n < coeffs.size(); ++n) {
    out += double(n + 1) * double(n + 2) * coeffs[n] * p;
    p *= zi;
  }
  return out;
}

double ConformalMap::enclosed_area() const {
  double s = 0.0;
  for (std::size_t n = 0; n < coeffs.size(); ++n) s += double(n + 1) * std::norm(coeffs[n]);
  return std::numbers::pi * (1.0 - s);
}

void ConformalMap::validate(double r, int probe) const {
  for (int k = 0; k < probe; ++k) {
    complexd zeta = std::polar(r, kTwoPi * k / probe);
    if (!(std::abs(dmap(zeta)) > 0.0))
      fail_validation("NonInjectiveMap", "|Phi'| vanishes on the probe grid");
  }
  if (r == 1.0 && !(enclosed_area() > 0.0))
    fail_validation("DegenerateCurve", "enclosed area is not positive");
}

double TrigPoly::eval(double t) const {
  double v = a0;
  for (std::size_t k = 0; k < cos_c.size(); ++k) v += cos_c[k] * std::cos(double(k + 1) * t);
  for (std::size_t k = 0; k < sin_c.size(); ++k) v += sin_c[k] * std::sin(double(k + 1) * t);
  return v;
}

double TrigPoly::deriv(double t) const {
  double v = 0.0;
  for (std::size_t k = 0; k < cos_c.size(); ++k)
    v -= double(k + 1) * cos_c[k] * std::sin(double(k + 1) * t);
  for (std::size_t k = 0; k < sin_c.size(); ++k)
    v += double(k + 1) * sin_c[k] * std::cos(double(k + 1) * t);
  return v;
}

double TrigPoly::deriv2(double t) const {
  double v = 0.0;
  for (std::size_t k = 0; k < cos_c.size(); ++k) {
    double m = double(k + 1);
    v -= m * m * cos_c[k] * std::cos(m * t);
  }
  for (std::size_t k = 0; k < sin_c.size(); ++k) {
    double m = double(k + 1);
    v -= m * m * sin_c[k] * std::sin(m * t);
  }
  return v;
}

bool TrigPoly::is_zero() const {
  if (a0 != 0.0) return false;
  for (double c : cos_c)
    if (c != 0.0) return false;
  for (double s : sin_c)
    if (s != 0.0) return false;
  return true;
}

double BoundaryCurve::perimeter() const {
  double s = 0.0;
  for (double wk : w) s += wk;
  return s;
}

double BoundaryCurve::area() const {
  double s = 0.0;
  for (int k = 0; k < n; ++k) s += x[k].dot(nu[k]) * w[k];
  return 0.5 * s;
}

Eigen::Vector2d BoundaryCurve::centroid() const {
  // int_D x_l dA = (1/2) oint x_l^2 nu_l dS
  Eigen::Vector2d s = Eigen::Vector2d::Zero();
  for (int k = 0; k < n; ++k) {
    s.x() += 0.5 * x[k].x() * x[k].x() * nu[k].x() * w[k];
    s.y() += 0.5 * x[k].y() * x[k].y() * nu[k].y() * w[k];
  }
  return s / area();
}

double BoundaryCurve::circumradius() const {
  double r = 0.0;
  for (const auto& p : x) r = std::max(r, p.norm());
  return r;
}

double BoundaryCurve::min_eval_distance() const { return kTwoPi * perimeter() / n; }

double BoundaryCurve::distance_to(const Eigen::Vector2d& p) const {
  double d = std::numeric_limits<double>::infinity();
  for (const auto& q : x) d = std::min(d, (p - q).norm());
  return d;
}

bool BoundaryCurve::is_star_shaped() const {
  Eigen::Vector2d c = centroid();
  for (int k = 0; k < n; ++k)
    if ((x[k] - c).dot(nu[k]) <= 0.0) return false;
  return true;
}

CurveSpec CurveSpec::conformal(ConformalMap m, double dilation) {
  CurveSpec s;
  s.kind = Kind::Conformal;
  s.map = std::move(m);
  s.dilation = dilation;
  return s;
}

CurveSpec CurveSpec::perturbed_disk(double r_i, TrigPoly h) {
  CurveSpec s;
  s.kind = Kind::PerturbedDisk;
  s.r_i = r_i;
  s.h = std::move(h);
  return s;
}

CurveSpec CurveSpec::ellipse(double a, double b, Eigen::Vector2d center) {
  CurveSpec s;
  s.kind = Kind::Ellipse;
  s.a = a;
  s.b = b;
  s.center = center;
  return s;
}

CurveSpec CurveSpec::circle(double r, Eigen::Vector2d center) {
  CurveSpec s;
  s.kind = Kind::Circle;
  s.r = r;
  s.center = center;
  return s;
}

CurveSpec CurveSpec::neumann_oval(double alpha, double eps) {
  CurveSpec s;
  s.kind = Kind::NeumannOval;
  s.alpha = alpha;
  s.eps = eps;
  return s;
}

BoundaryCurve build_curve(const CurveSpec& spec, int n) {
  if (n < 16 || n % 2 != 0)
    fail_validation("DegenerateCurve", "node count must be even and >= 16");

  auto polar = [&](auto rfun, auto drfun, auto ddrfun, Eigen::Vector2d center) {
    return assemble(n, [&, center](double t) {
      double r = rfun(t);
      if (!(r > 0.0)) fail_validation("DegenerateCurve", "polar radius r(t) <= 0");
      double dr = drfun(t), ddr = ddrfun(t);
      double ct = std::cos(t), st = std::sin(t);
      Jet2 j;
      j.x = center + r * Eigen::Vector2d(ct, st);
      j.dx = Eigen::Vector2d(dr * ct - r * st, dr * st + r * ct);
      j.ddx = Eigen::Vector2d(ddr * ct - 2.0 * dr * st - r * ct,
                              ddr * st + 2.0 * dr * ct - r * st);
      return j;
    });
  };

  BoundaryCurve curve;
  switch (spec.kind) {
    case CurveSpec::Kind::Conformal: {
      if (!(spec.dilation > 0.0)) fail_validation("DegenerateCurve", "dilation must be positive");
      spec.map.validate(spec.dilation, 4 * n);
      if (spec.dilation >= 1.0) spec.map.validate(1.0, 4 * n);
      const ConformalMap& m = spec.map;
      double r = spec.dilation;
      curve = assemble(n, [&](double t) {
        complexd zeta = std::polar(r, t);
        complexd z = m.map(zeta);
        complexd dz = m.dmap(zeta) * complexd(0.0, 1.0) * zeta;
        complexd ddz = m.ddmap(zeta) * (complexd(0.0, 1.0) * zeta) * (complexd(0.0, 1.0) * zeta) +
                       m.dmap(zeta) * (-zeta);
        Jet2 j;
        j.x = Eigen::Vector2d(z.real(), z.imag());
        j.dx = Eigen::Vector2d(dz.real(), dz.imag());
        j.ddx = Eigen::Vector2d(ddz.real(), ddz.imag());
        return j;
      });
      break;
    }
    case CurveSpec::Kind::PerturbedDisk: {
      if (!(spec.r_i > 0.0)) fail_validation("DegenerateCurve", "r_i must be positive");
      const TrigPoly& h = spec.h;
      curve = polar([&](double t) { return spec.r_i + h.eval(t); },
                    [&](double t) { return h.deriv(t); },
                    [&](double t) { return h.deriv2(t); }, Eigen::Vector2d::Zero());
      break;
    }
    case CurveSpec::Kind::Ellipse: {
      if (!(spec.a > 0.0) || !(spec.b > 0.0))
        fail_validation("DegenerateCurve", "ellipse semi-axes must be positive");
      double a = spec.a, b = spec.b;
      curve = assemble(n, [&](double t) {
        Jet2 j;
        j.x = spec.center + Eigen::Vector2d(a * std::cos(t), b * std::sin(t));
        j.dx = Eigen::Vector2d(-a * std::sin(t), b * std::cos(t));
        j.ddx = Eigen::Vector2d(-a * std::cos(t), -b * std::sin(t));
        return j;
      });
      break;
    }
    case CurveSpec::Kind::Circle: {
      if (!(spec.r > 0.0)) fail_validation("DegenerateCurve", "radius must be positive");
      TrigPoly zero;
      CurveSpec as_disk = CurveSpec::perturbed_disk(spec.r, zero);
      if (spec.center.squaredNorm() == 0.0) return build_curve(as_disk, n);
      curve = polar([&](double) { return spec.r; }, [](double) { return 0.0; },
                    [](double) { return 0.0; }, spec.center);
      break;
    }
    case CurveSpec::Kind::NeumannOval: {
      if (!(spec.alpha > 0.0) || spec.eps < 0.0)
        fail_validation("DegenerateCurve", "need alpha > 0 and eps >= 0");
      double a2 = spec.alpha * spec.alpha, e2 = 4.0 * spec.eps * spec.eps;
      auto r2 = [=](double t) { double c = std::cos(t); return a2 + e2 * c * c; };
      auto r = [=](double t) { return std::sqrt(r2(t)); };
      auto dr = [=](double t) { return -e2 * std::sin(t) * std::cos(t) / r(t); };
      auto ddr = [=](double t) {
        double rv = r(t), drv = dr(t);
        return (-e2 * std::cos(2.0 * t) - drv * drv) / rv;
      };
      curve = polar(r, dr, ddr, Eigen::Vector2d::Zero());
      break;
    }
  }
  check_simple(curve);
  return curve;
}

double curve_area(const BoundaryCurve& curve) { return curve.area(); }

} // namespace ni
