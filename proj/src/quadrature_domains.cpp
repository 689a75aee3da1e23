#include "ni/quadrature_domains.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <random>
#include <tuple>

#include "ni/ellipsoid.hpp"

namespace ni {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double dfact(int n) { // (-1)!! = 1
  double v = 1.0;
  for (int k = n; k >= 2; k -= 2) v *= k;
  return v;
}

// int over the unit ball of x^i y^j z^k (zero unless all exponents are even)
double ball_monomial(int i, int j, int k) {
  if (i % 2 || j % 2 || k % 2) return 0.0;
  int s = i + j + k;
  return 4.0 * kPi * dfact(i - 1) * dfact(j - 1) * dfact(k - 1) / ((s + 3.0) * dfact(s + 1));
}

Poly3 poly_scale(const Poly3& p, double c) {
  Poly3 out = p;
  for (auto& t : out.terms) t.c *= c;
  return out;
}

Poly3 poly_add(const Poly3& p, const Poly3& q) {
  Poly3 out = p;
  out.terms.insert(out.terms.end(), q.terms.begin(), q.terms.end());
  return out;
}

Poly3 poly_mul_z(const Poly3& p) {
  Poly3 out = p;
  for (auto& t : out.terms) t.k += 1;
  return out;
}

Poly3 poly_mul_r2(const Poly3& p) {
  Poly3 out;
  for (const auto& t : p.terms) {
    out.terms.push_back({t.i + 2, t.j, t.k, t.c});
    out.terms.push_back({t.i, t.j + 2, t.k, t.c});
    out.terms.push_back({t.i, t.j, t.k + 2, t.c});
  }
  return out;
}

Poly3 poly_combine(const Poly3& p) {
  std::map<std::tuple<int, int, int>, double> acc;
  for (const auto& t : p.terms) acc[{t.i, t.j, t.k}] += t.c;
  Poly3 out;
  for (const auto& [key, c] : acc)
    if (c != 0.0) out.terms.push_back({std::get<0>(key), std::get<1>(key), std::get<2>(key), c});
  return out;
}

// Re and Im of (x+iy)^m with integer coefficients
std::pair<Poly3, Poly3> horizontal_seed(int m) {
  Poly3 re, im;
  re.terms.push_back({0, 0, 0, 1.0});
  for (int s = 0; s < m; ++s) {
    Poly3 re2, im2;
    for (const auto& t : re.terms) {
      re2.terms.push_back({t.i + 1, t.j, t.k, t.c});
      im2.terms.push_back({t.i, t.j + 1, t.k, t.c});
    }
    for (const auto& t : im.terms) {
      re2.terms.push_back({t.i, t.j + 1, t.k, -t.c});
      im2.terms.push_back({t.i + 1, t.j, t.k, t.c});
    }
    re = poly_combine(re2);
    im = poly_combine(im2);
  }
  return {re, im};
}

struct GaussRule {
  std::vector<double> x, w;
};

const GaussRule& gauss32() {
  static GaussRule rule = [] {
    GaussRule r;
    const int n = 32;
    r.x.resize(n);
    r.w.resize(n);
    for (int i = 0; i < n; ++i) {
      double xi = std::cos(kPi * (i + 0.75) / (n + 0.5));
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0, p1 = xi;
        for (int k = 2; k <= n; ++k) {
          double p2 = ((2.0 * k - 1.0) * xi * p1 - (k - 1.0) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        double dp = n * (xi * p1 - p0) / (xi * xi - 1.0);
        double dx = p1 / dp;
        xi -= dx;
        if (std::abs(dx) < 1e-15) break;
      }
      double p0 = 1.0, p1 = xi;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * xi * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      double dp = n * (xi * p1 - p0) / (xi * xi - 1.0);
      r.x[i] = xi;
      r.w[i] = 2.0 / ((1.0 - xi * xi) * dp * dp);
    }
    return r;
  }();
  return rule;
}

template <typename F>
double gauss_interval(F&& f, double a, double b) {
  const GaussRule& r = gauss32();
  double mid = 0.5 * (a + b), half = 0.5 * (b - a), sum = 0.0;
  for (size_t i = 0; i < r.x.size(); ++i) sum += r.w[i] * f(mid + half * r.x[i]);
  return half * sum;
}

// anti-Laplacian gradient for u = Re/Im z^n: grad U as a complex number, where
// Delta U = u. U = Re[conj(z) z^{n+1}]/(4(n+1)) works for both kinds up to the i factor.
complexd anti_laplacian_grad(complexd z, int n, bool imaginary) {
  complexd zn = std::pow(z, n);
  complexd znp1 = zn * z;
  if (!imaginary) return znp1 / (4.0 * (n + 1.0)) + z * std::conj(zn) / 4.0;
  complexd i(0.0, 1.0);
  return -i * znp1 / (4.0 * (n + 1.0)) + i * z * std::conj(zn) / 4.0;
}

} // namespace

double newtonian_potential_2d(const BoundaryCurve& curve, const Eigen::Vector2d& x) {
  if (!curve.is_star_shaped())
    fail_validation("NotStarShaped", "boundary reduction requires a star-shaped domain");
  // int_D Gamma(x-y) dy = (1/2pi) oint <y-x, nu(y)> (log|y-x|/2 - 1/4) dS(y)
  double acc = 0.0;
  for (int k = 0; k < curve.n; ++k) {
    Eigen::Vector2d d = curve.x[k] - x;
    double r2 = d.squaredNorm();
    acc += d.dot(curve.nu[k]) * (0.25 * std::log(r2) - 0.25) * curve.w[k];
  }
  return acc / (kTwoPi * curve.area());
}

double ellipsoid_potential_3d(const std::array<double, 3>& a, const Eigen::Vector3d& x) {
  for (double ai : a)
    if (!(ai > 0.0)) fail_validation("InvalidEllipsoid", "semi-axes must be positive");
  std::array<double, 3> a2 = {a[0] * a[0], a[1] * a[1], a[2] * a[2]};
  double inside = x[0] * x[0] / a2[0] + x[1] * x[1] / a2[1] + x[2] * x[2] / a2[2];
  double lam = inside <= 1.0 ? 0.0 : ellipsoidal_coordinate(x, a2);
  EllipsoidIntegrals ints = ellipsoid_integrals(lam, a2);
  double U = ints.I;
  for (int j = 0; j < 3; ++j) U -= x[j] * x[j] * ints.phi[j];
  U *= kPi * a[0] * a[1] * a[2];
  double volume = 4.0 * kPi / 3.0 * a[0] * a[1] * a[2];
  return -U / (4.0 * kPi * volume);
}

NewtonianFormulationReport check_newtonian_formulation(const std::array<double, 3>& c2,
                                                       double rho0, int n_out, int n_in,
                                                       double shell_axis_scale_x,
                                                       unsigned seed) {
  EllipsoidPair pair{c2, rho0};
  pair.validate();
  std::array<double, 3> aD = {std::sqrt(c2[0]), std::sqrt(c2[1]), std::sqrt(c2[2])};
  std::array<double, 3> aO = {std::sqrt(c2[0] + rho0) * shell_axis_scale_x,
                              std::sqrt(c2[1] + rho0), std::sqrt(c2[2] + rho0)};
  double volO = 4.0 * kPi / 3.0 * aO[0] * aO[1] * aO[2];
  auto w = [&](const Eigen::Vector3d& x) {
    return volO * (ellipsoid_potential_3d(aO, x) - ellipsoid_potential_3d(aD, x));
  };

  std::mt19937 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  auto direction = [&] {
    Eigen::Vector3d d;
    do {
      d = {gauss(rng), gauss(rng), gauss(rng)};
    } while (d.norm() < 1e-8);
    return Eigen::Vector3d(d / d.norm());
  };

  NewtonianFormulationReport rep;
  double R = *std::max_element(aO.begin(), aO.end());
  for (int s = 0; s < n_out; ++s) {
    Eigen::Vector3d x = (1.5 + 1.5 * unif(rng)) * R * direction();
    rep.outside_max = std::max(rep.outside_max, std::abs(w(x)));
  }

  // interior quadratic fit over core samples
  int m = std::max(n_in, 30);
  Eigen::MatrixXd V(m, 10);
  Eigen::VectorXd rhs(m);
  for (int s = 0; s < m; ++s) {
    Eigen::Vector3d d = direction() * 0.95 * std::cbrt(unif(rng));
    Eigen::Vector3d x(aD[0] * d[0], aD[1] * d[1], aD[2] * d[2]);
    V(s, 0) = 1.0;
    V(s, 1) = x[0];
    V(s, 2) = x[1];
    V(s, 3) = x[2];
    V(s, 4) = x[0] * x[0];
    V(s, 5) = x[1] * x[1];
    V(s, 6) = x[2] * x[2];
    V(s, 7) = x[0] * x[1];
    V(s, 8) = x[0] * x[2];
    V(s, 9) = x[1] * x[2];
    rhs(s) = w(x);
  }
  Eigen::VectorXd beta = V.colPivHouseholderQr().solve(rhs);
  rep.fit_residual = (V * beta - rhs).cwiseAbs().maxCoeff();
  rep.fitted_alpha = {beta(4), beta(5), beta(6)};
  rep.linear_term_norm = std::sqrt(beta(1) * beta(1) + beta(2) * beta(2) + beta(3) * beta(3));
  return rep;
}

QuadratureReport mean_value_identity_2d(const BoundaryCurve& D, const BoundaryCurve& Omega,
                                        int degree) {
  QuadratureReport rep;
  rep.identity = "mean_value_2d";
  rep.degree = degree;
  rep.per_degree.assign(degree + 1, 0.0);
  double areaD = D.area(), areaO = Omega.area();
  double R = std::max(1.0, Omega.circumradius());
  for (int n = 0; n <= degree; ++n) {
    double scale = std::pow(R, n);
    for (int kind = 0; kind < (n == 0 ? 1 : 2); ++kind) {
      double lhs = harmonic_area_integral_2d(Omega, n, kind == 1) / areaO;
      double rhs = harmonic_area_integral_2d(D, n, kind == 1) / areaD;
      double res = std::abs(lhs - rhs) / scale;
      rep.per_degree[n] = std::max(rep.per_degree[n], res);
      rep.residual = std::max(rep.residual, res);
    }
  }
  return rep;
}

QuadratureReport mean_value_identity_3d(const std::array<double, 3>& a_core,
                                        const std::array<double, 3>& a_shell, int degree) {
  QuadratureReport rep;
  rep.identity = "mean_value_3d";
  rep.degree = degree;
  rep.per_degree.assign(degree + 1, 0.0);
  double volD = 4.0 * kPi / 3.0 * a_core[0] * a_core[1] * a_core[2];
  double volO = 4.0 * kPi / 3.0 * a_shell[0] * a_shell[1] * a_shell[2];
  double R = *std::max_element(a_shell.begin(), a_shell.end());
  for (const Poly3& p : harmonic_catalog_3d(degree)) {
    int n = p.degree();
    double coeff_scale = 0.0;
    for (const auto& t : p.terms) coeff_scale += std::abs(t.c);
    double scale = coeff_scale * std::pow(std::max(1.0, R), n);
    double lhs = ellipsoid_poly_integral(p, a_shell) / volO;
    double rhs = ellipsoid_poly_integral(p, a_core) / volD;
    double res = std::abs(lhs - rhs) / scale;
    rep.per_degree[n] = std::max(rep.per_degree[n], res);
    rep.residual = std::max(rep.residual, res);
  }
  return rep;
}

QuadratureReport focal_ellipse_identity(const std::vector<double>& a, int degree) {
  int d = static_cast<int>(a.size());
  if (d != 2 && d != 3) fail_validation("InvalidEllipsoid", "need 2 or 3 semi-axes");
  for (int i = 0; i + 1 < d; ++i)
    if (!(a[i] >= a[i + 1]) || !(a[d - 1] > 0.0))
      fail_validation("InvalidEllipsoid", "semi-axes must be positive, nonincreasing");
  for (int i = 0; i + 1 < d; ++i)
    if (a[i] == a[d - 1])
      fail_validation("DegenerateFoci", "focal region degenerates when a_i = a_d");

  QuadratureReport rep;
  rep.identity = "focal_ellipse";
  rep.degree = degree;
  rep.per_degree.assign(degree + 1, 0.0);
  rep.residual_printed = 0.0;

  double coeff = 2.0 * a[d - 1];
  for (int i = 0; i + 1 < d; ++i) coeff *= a[i] / std::sqrt(a[i] * a[i] - a[d - 1] * a[d - 1]);
  double coeff_printed = coeff / a[d - 1];

  if (d == 2) {
    BoundaryCurve E = build_curve(CurveSpec::ellipse(a[0], a[1]), 1024);
    double c = std::sqrt(a[0] * a[0] - a[1] * a[1]);
    const int Q = 48; // Chebyshev-Gauss second kind, exact for the catalog degrees
    double R = std::max(1.0, a[0]);
    for (int n = 0; n <= degree; ++n) {
      double scale = std::pow(R, n) * E.area();
      for (int kind = 0; kind < (n == 0 ? 1 : 2); ++kind) {
        double lhs = harmonic_area_integral_2d(E, n, kind == 1);
        double base = 0.0;
        for (int q = 1; q <= Q; ++q) {
          double tq = std::cos(kPi * q / (Q + 1.0));
          double wq = kPi / (Q + 1.0) * std::pow(std::sin(kPi * q / (Q + 1.0)), 2);
          complexd z(c * tq, 0.0);
          complexd zn = std::pow(z, n);
          double u = kind == 1 ? zn.imag() : zn.real();
          base += wq * u;
        }
        base *= c;
        double res = std::abs(lhs - coeff * base) / scale;
        double resp = std::abs(lhs - coeff_printed * base) / scale;
        rep.per_degree[n] = std::max(rep.per_degree[n], res);
        rep.residual = std::max(rep.residual, res);
        rep.residual_printed = std::max(rep.residual_printed, resp);
      }
    }
    return rep;
  }

  double al1 = std::sqrt(a[0] * a[0] - a[2] * a[2]);
  double al2 = std::sqrt(a[1] * a[1] - a[2] * a[2]);
  double volE = 4.0 * kPi / 3.0 * a[0] * a[1] * a[2];
  double R = std::max(1.0, a[0]);
  const int Mpsi = 128;
  for (const Poly3& p : harmonic_catalog_3d(degree)) {
    int n = p.degree();
    double coeff_scale = 0.0;
    for (const auto& t : p.terms) coeff_scale += std::abs(t.c);
    double scale = coeff_scale * std::pow(R, n) * volE;
    double lhs = ellipsoid_poly_integral(p, {a[0], a[1], a[2]});
    // int_F u sqrt(1 - x^2/al1^2 - y^2/al2^2) dx dy in polar-like coordinates
    double base = gauss_interval(
        [&](double chi) {
          double s = std::sin(chi), cch = std::cos(chi);
          double acc = 0.0;
          for (int m = 0; m < Mpsi; ++m) {
            double psi = kTwoPi * m / Mpsi;
            Eigen::Vector3d x(al1 * s * std::cos(psi), al2 * s * std::sin(psi), 0.0);
            acc += p.eval(x);
          }
          return acc * (kTwoPi / Mpsi) * cch * cch * s;
        },
        0.0, kPi / 2.0);
    base *= al1 * al2;
    double res = std::abs(lhs - coeff * base) / scale;
    double resp = std::abs(lhs - coeff_printed * base) / scale;
    rep.per_degree[n] = std::max(rep.per_degree[n], res);
    rep.residual = std::max(rep.residual, res);
    rep.residual_printed = std::max(rep.residual_printed, resp);
  }
  return rep;
}

QuadratureReport neumann_oval_identity(double alpha, double eps, int degree) {
  if (!(alpha > 0.0) || !(eps >= 0.0))
    fail_validation("InvalidParameter", "need alpha > 0 and eps >= 0");
  QuadratureReport rep;
  rep.identity = "neumann_oval";
  rep.degree = degree;
  rep.per_degree.assign(degree + 1, 0.0);

  const int M = 4096;
  auto radius = [&](double t) {
    return std::sqrt(alpha * alpha + 4.0 * eps * eps * std::cos(t) * std::cos(t));
  };
  // int_Omega u for homogeneous harmonic u of degree n: int u(omega) R^{n+2}/(n+2) dt
  auto moment = [&](int n, bool imaginary) {
    double acc = 0.0;
    for (int m = 0; m < M; ++m) {
      double t = kTwoPi * m / M;
      double R = radius(t);
      complexd zn = std::pow(std::polar(1.0, t), n);
      double u = imaginary ? zn.imag() : zn.real();
      acc += u * std::pow(R, n + 2) / (n + 2.0);
    }
    return acc * kTwoPi / M;
  };

  double area = moment(0, false);
  double m2 = moment(2, false); // int (x^2 - y^2)
  double p2 = m2 / area;
  if (p2 < 0.0) p2 = 0.0;
  double p = std::sqrt(p2);
  rep.foci = {p, 0.0, -p, 0.0};

  double Rmax = radius(0.0);
  for (int n = 0; n <= degree; ++n) {
    double scale = area * std::pow(std::max(1.0, Rmax), n);
    for (int kind = 0; kind < (n == 0 ? 1 : 2); ++kind) {
      double lhs = moment(n, kind == 1);
      complexd zp(p, 0.0);
      complexd zn = std::pow(zp, n), znm = std::pow(-zp, n);
      double up = kind == 1 ? zn.imag() : zn.real();
      double um = kind == 1 ? znm.imag() : znm.real();
      double rhs = area / 2.0 * (up + um);
      double res = std::abs(lhs - rhs) / scale;
      rep.per_degree[n] = std::max(rep.per_degree[n], res);
      rep.residual = std::max(rep.residual, res);
    }
  }
  return rep;
}

double harmonic_area_integral_2d(const BoundaryCurve& curve, int n, bool imaginary) {
  if (n < 0) fail_validation("InvalidParameter", "degree must be nonnegative");
  double acc = 0.0;
  for (int k = 0; k < curve.n; ++k) {
    complexd z(curve.x[k][0], curve.x[k][1]);
    complexd nu(curve.nu[k][0], curve.nu[k][1]);
    complexd G = anti_laplacian_grad(z, n, imaginary);
    acc += (std::conj(G) * nu).real() * curve.w[k];
  }
  return acc;
}

double Poly3::eval(const Eigen::Vector3d& x) const {
  double v = 0.0;
  for (const auto& t : terms)
    v += t.c * std::pow(x[0], t.i) * std::pow(x[1], t.j) * std::pow(x[2], t.k);
  return v;
}

Poly3 Poly3::laplacian() const {
  Poly3 out;
  for (const auto& t : terms) {
    if (t.i >= 2) out.terms.push_back({t.i - 2, t.j, t.k, t.c * t.i * (t.i - 1)});
    if (t.j >= 2) out.terms.push_back({t.i, t.j - 2, t.k, t.c * t.j * (t.j - 1)});
    if (t.k >= 2) out.terms.push_back({t.i, t.j, t.k - 2, t.c * t.k * (t.k - 1)});
  }
  return poly_combine(out);
}

bool Poly3::is_zero() const {
  Poly3 c = poly_combine(*this);
  return c.terms.empty();
}

int Poly3::degree() const {
  int d = 0;
  for (const auto& t : terms) d = std::max(d, t.i + t.j + t.k);
  return d;
}

std::vector<Poly3> harmonic_catalog_3d(int max_degree) {
  // solid harmonics via the integer recurrence
  // B_{m,m} = (x+iy)^m, B_{m+1,m} = (2m+1) z B_{m,m},
  // B_{n,m} = (2n-1) z B_{n-1,m} - (n+m-1)(n-m-1) r^2 B_{n-2,m}
  std::vector<Poly3> out;
  for (int m = 0; m <= max_degree; ++m) {
    auto [re0, im0] = horizontal_seed(m);
    for (int part = 0; part < (m == 0 ? 1 : 2); ++part) {
      Poly3 prev2 = part == 0 ? re0 : im0; // B_{m,m}
      Poly3 prev1;                         // B_{m+1,m}
      out.push_back(poly_combine(prev2));
      if (m + 1 <= max_degree) {
        prev1 = poly_combine(poly_scale(poly_mul_z(prev2), 2.0 * m + 1.0));
        out.push_back(prev1);
      }
      for (int n = m + 2; n <= max_degree; ++n) {
        Poly3 next = poly_add(poly_scale(poly_mul_z(prev1), 2.0 * n - 1.0),
                              poly_scale(poly_mul_r2(prev2), -1.0 * (n + m - 1) * (n - m - 1)));
        next = poly_combine(next);
        out.push_back(next);
        prev2 = prev1;
        prev1 = next;
      }
    }
  }
  for (const Poly3& p : out)
    if (!p.laplacian().is_zero())
      fail_numerical("SolveFailure", "harmonic catalog failed the exact Laplacian check");
  return out;
}

double ellipsoid_poly_integral(const Poly3& p, const std::array<double, 3>& a) {
  for (double ai : a)
    if (!(ai > 0.0)) fail_validation("InvalidEllipsoid", "semi-axes must be positive");
  double acc = 0.0;
  for (const auto& t : p.terms)
    acc += t.c * std::pow(a[0], t.i + 1) * std::pow(a[1], t.j + 1) * std::pow(a[2], t.k + 1) *
           ball_monomial(t.i, t.j, t.k);
  return acc;
}

} // namespace ni
