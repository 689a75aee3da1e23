#include "ni/ellipsoid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

namespace ni {

namespace {

constexpr double kFourPiOver3 = 4.0 * std::numbers::pi / 3.0;

struct GaussRule {
  std::vector<double> x, w; // on [-1, 1]
};

// Newton on Legendre polynomials; nodes accurate to machine precision.
const GaussRule& gauss_legendre_32() {
  static const GaussRule rule = [] {
    const int n = 32;
    GaussRule r;
    r.x.resize(n);
    r.w.resize(n);
    for (int i = 0; i < n; ++i) {
      double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= n; ++k) {
          double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        double dp = n * (x * p1 - p0) / (x * x - 1.0);
        double dx = p1 / dp;
        x -= dx;
        if (std::abs(dx) < 1e-15) break;
      }
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      double dp = n * (x * p1 - p0) / (x * x - 1.0);
      r.x[i] = x;
      r.w[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return r;
  }();
  return rule;
}

// int_0^1 f(t) dt on graded panels (clustered toward t = 1)
template <typename F>
double panel_integrate(F&& f) {
  static const double breaks[] = {0.0, 0.5, 0.8, 0.95, 1.0};
  const GaussRule& g = gauss_legendre_32();
  double total = 0.0;
  for (int p = 0; p + 1 < int(std::size(breaks)); ++p) {
    double a = breaks[p], b = breaks[p + 1];
    double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    for (std::size_t i = 0; i < g.x.size(); ++i) total += half * g.w[i] * f(mid + half * g.x[i]);
  }
  return total;
}

} // namespace

double EllipsoidPair::volume_core() const { return kFourPiOver3 * std::sqrt(g(0.0)); }
double EllipsoidPair::volume_shell() const { return kFourPiOver3 * std::sqrt(g(rho0)); }
double EllipsoidPair::fraction() const { return std::sqrt(g(0.0) / g(rho0)); }

void EllipsoidPair::validate() const {
  for (double c : c2)
    if (!(c > 0.0)) fail_validation("InvalidEllipsoid", "squared semi-axes must be positive");
  if (!(rho0 > 0.0)) fail_validation("InvalidEllipsoid", "rho0 must be positive");
}

double ellipsoidal_coordinate(const Eigen::Vector3d& x, const std::array<double, 3>& c2) {
  double on_core = x[0] * x[0] / c2[0] + x[1] * x[1] / c2[1] + x[2] * x[2] / c2[2];
  if (on_core < 1.0 - 1e-12)
    fail_validation("InsideCore", "point lies inside the core ellipsoid");

  auto f = [&](double rho) {
    return x[0] * x[0] / (c2[0] + rho) + x[1] * x[1] / (c2[1] + rho) +
           x[2] * x[2] / (c2[2] + rho) - 1.0;
  };
  double r2 = x.squaredNorm();
  double cmax = std::max({c2[0], c2[1], c2[2]});
  double lo = std::max(0.0, r2 - cmax), hi = r2;
  if (f(hi) > 0.0) hi = r2 + cmax; // guard against rounding at the bracket edge
  for (int it = 0; it < 60; ++it) {
    double mid = 0.5 * (lo + hi);
    (f(mid) > 0.0 ? lo : hi) = mid;
  }
  double rho = 0.5 * (lo + hi);
  for (int it = 0; it < 8; ++it) { // Newton polish
    double fr = f(rho);
    double dfr = -(x[0] * x[0] / ((c2[0] + rho) * (c2[0] + rho)) +
                   x[1] * x[1] / ((c2[1] + rho) * (c2[1] + rho)) +
                   x[2] * x[2] / ((c2[2] + rho) * (c2[2] + rho)));
    double step = fr / dfr;
    double next = rho - step;
    if (next < 0.0) next = 0.0;
    rho = next;
    if (std::abs(step) < 1e-15 * (1.0 + rho)) break;
  }
  return std::max(rho, 0.0);
}

EllipsoidIntegrals ellipsoid_integrals(double rho, const std::array<double, 3>& c2) {
  EllipsoidIntegrals out;
  out.g = (c2[0] + rho) * (c2[1] + rho) * (c2[2] + rho);
  // s = rho + (t/(1-t))^2, ds = 2 t/(1-t)^3 dt; integrands analytic on [0, 1]
  auto sub = [rho](double t) {
    double u = t / (1.0 - t);
    return std::pair<double, double>(rho + u * u, 2.0 * u / ((1.0 - t) * (1.0 - t)));
  };
  auto ginv_sqrt = [&](double s) {
    return 1.0 / std::sqrt((c2[0] + s) * (c2[1] + s) * (c2[2] + s));
  };
  out.I = panel_integrate([&](double t) {
    auto [s, ds] = sub(t);
    return ginv_sqrt(s) * ds;
  });
  for (int j = 0; j < 3; ++j)
    out.phi[j] = panel_integrate([&](double t) {
      auto [s, ds] = sub(t);
      return ginv_sqrt(s) / (c2[j] + s) * ds;
    });
  return out;
}

std::array<double, 3> alpha_coefficients(double rho0, const std::array<double, 3>& c2) {
  if (!(rho0 > 0.0)) fail_validation("InvalidEllipsoid", "rho0 must be positive");
  double g0 = (c2[0] + rho0) * (c2[1] + rho0) * (c2[2] + rho0);
  std::array<double, 3> alpha;
  for (int j = 0; j < 3; ++j) {
    // finite integral on [0, rho0]: plain scaled Gauss panels
    const GaussRule& g = gauss_legendre_32();
    double total = 0.0;
    const int panels = 4;
    for (int p = 0; p < panels; ++p) {
      double a = rho0 * p / panels, b = rho0 * (p + 1) / panels;
      double mid = 0.5 * (a + b), half = 0.5 * (b - a);
      for (std::size_t i = 0; i < g.x.size(); ++i) {
        double s = mid + half * g.x[i];
        double gs = (c2[0] + s) * (c2[1] + s) * (c2[2] + s);
        total += half * g.w[i] / (c2[j] + s) * std::sqrt(g0 / gs);
      }
    }
    alpha[j] = -0.25 * total;
  }
  return alpha;
}

OdpSolution odp_confocal(const EllipsoidPair& pair) {
  pair.validate();
  OdpSolution sol;
  sol.is_balls = false;
  sol.pair = pair;
  return sol;
}

OdpSolution odp_balls(double r_i, double r_e) {
  if (!(r_i > 0.0) || !(r_e > r_i))
    fail_validation("InvalidEllipsoid", "need 0 < r_i < r_e");
  OdpSolution sol;
  sol.is_balls = true;
  sol.r_i = r_i;
  sol.r_e = r_e;
  return sol;
}

double OdpSolution::scale() const {
  if (is_balls) return r_e;
  return std::sqrt(*std::max_element(pair.c2.begin(), pair.c2.end()) + pair.rho0);
}

double OdpSolution::w(const Eigen::Vector3d& x) const {
  double base;
  if (is_balls) {
    double r = x.norm();
    if (r < r_i * (1.0 - 1e-10) || r > r_e * (1.0 + 1e-10))
      fail_validation("OutsideShell", "point not in the closed shell");
    base = r_e * r_e * r_e / (3.0 * r) + r * r / 6.0;
  } else {
    double rho = ellipsoidal_coordinate(x, pair.c2); // InsideCore guards the inner side
    if (rho > pair.rho0 * (1.0 + 1e-10))
      fail_validation("OutsideShell", "point not in the closed shell");
    EllipsoidIntegrals at = ellipsoid_integrals(rho, pair.c2);
    EllipsoidIntegrals at0 = ellipsoid_integrals(pair.rho0, pair.c2);
    double W = 0.5 * at.I;
    for (int j = 0; j < 3; ++j) W += 0.5 * (at0.phi[j] - at.phi[j]) * x[j] * x[j];
    base = W * 0.5 * std::sqrt(at0.g); // normalizes Delta w to 1
  }
  return base + corruption_x1sq * x[0] * x[0];
}

Eigen::Vector3d OdpSolution::grad_w(const Eigen::Vector3d& x) const {
  Eigen::Vector3d g;
  if (is_balls) {
    double r = x.norm();
    if (r < r_i * (1.0 - 1e-10) || r > r_e * (1.0 + 1e-10))
      fail_validation("OutsideShell", "point not in the closed shell");
    g = (1.0 / 3.0 - r_e * r_e * r_e / (3.0 * r * r * r)) * x;
  } else {
    double rho = ellipsoidal_coordinate(x, pair.c2);
    if (rho > pair.rho0 * (1.0 + 1e-10))
      fail_validation("OutsideShell", "point not in the closed shell");
    EllipsoidIntegrals at = ellipsoid_integrals(rho, pair.c2);
    EllipsoidIntegrals at0 = ellipsoid_integrals(pair.rho0, pair.c2);
    double scale = 0.5 * std::sqrt(at0.g);
    for (int j = 0; j < 3; ++j) g[j] = scale * (at0.phi[j] - at.phi[j]) * x[j];
  }
  g[0] += 2.0 * corruption_x1sq * x[0];
  return g;
}

Eigen::Matrix3d OdpSolution::A() const {
  Eigen::Matrix3d A = Eigen::Matrix3d::Zero();
  if (is_balls) {
    double v = (1.0 - (r_e * r_e * r_e) / (r_i * r_i * r_i)) / 3.0;
    A.diagonal().setConstant(v);
  } else {
    EllipsoidIntegrals at0 = ellipsoid_integrals(pair.rho0, pair.c2);
    EllipsoidIntegrals at = ellipsoid_integrals(0.0, pair.c2);
    double scale = 0.5 * std::sqrt(at0.g);
    for (int j = 0; j < 3; ++j) A(j, j) = scale * (at0.phi[j] - at.phi[j]);
  }
  return A;
}

OdpResidualReport odp_residual(const OdpSolution& sol, int n_samples, unsigned seed) {
  OdpResidualReport rep;
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::normal_distribution<double> gauss(0.0, 1.0);
  double L = sol.scale();
  double h = 1e-4 * L;

  auto sphere_dir = [&] {
    Eigen::Vector3d d(gauss(rng), gauss(rng), gauss(rng));
    while (d.norm() < 1e-3) d = Eigen::Vector3d(gauss(rng), gauss(rng), gauss(rng));
    return d.normalized();
  };
  auto shell_point = [&](double frac) -> Eigen::Vector3d {
    if (sol.is_balls) {
      double r = sol.r_i + frac * (sol.r_e - sol.r_i);
      return r * sphere_dir();
    }
    double rho = frac * sol.pair.rho0;
    Eigen::Vector3d d = sphere_dir();
    Eigen::Vector3d p;
    for (int j = 0; j < 3; ++j) p[j] = std::sqrt(sol.pair.c2[j] + rho) * d[j];
    return p;
  };

  // interior Laplacian, 7-point stencil (samples kept away from both boundaries)
  for (int s = 0; s < n_samples; ++s) {
    Eigen::Vector3d p = shell_point(0.15 + 0.7 * unif(rng));
    double lap = -6.0 * sol.w(p);
    for (int j = 0; j < 3; ++j) {
      Eigen::Vector3d e = Eigen::Vector3d::Zero();
      e[j] = h;
      lap += sol.w(p + e) + sol.w(p - e);
    }
    rep.laplacian_residual = std::max(rep.laplacian_residual, std::abs(lap / (h * h) - 1.0));
  }
  // analytic gradient on both boundaries
  for (int s = 0; s < n_samples; ++s) {
    Eigen::Vector3d po = shell_point(1.0);
    rep.outer_grad_max = std::max(rep.outer_grad_max, sol.grad_w(po).norm());
    Eigen::Vector3d pi = shell_point(0.0);
    Eigen::Vector3d res = sol.grad_w(pi) - (sol.A() * pi + sol.b());
    rep.inner_affine_residual = std::max(rep.inner_affine_residual, res.norm());
  }
  return rep;
}

} // namespace ni
