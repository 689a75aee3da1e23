#include "ni/neutrality.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ni/ellipsoid.hpp"

namespace ni {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Tail coefficients of the weakly neutral mode system: for numerator A + B cos2t the
// odd modes m >= 3 satisfy (A+m) c_m + (B/2)(c_{m-2} + c_{m+2}) = 0 with c_1 = 1+b.
// Returns c_3 (Thomas algorithm on the truncated tridiagonal tail; factorial decay).
double tail_c3(double A, double B, double b, int K = 48) {
  std::vector<double> diag(K), rhs(K, 0.0);
  for (int i = 0; i < K; ++i) diag[i] = A + (3.0 + 2.0 * i);
  rhs[0] = -(B / 2.0) * (1.0 + b);
  double off = B / 2.0;
  for (int i = 1; i < K; ++i) {
    double m = off / diag[i - 1];
    diag[i] -= m * off;
    rhs[i] -= m * rhs[i - 1];
  }
  std::vector<double> c(K);
  c[K - 1] = rhs[K - 1] / diag[K - 1];
  for (int i = K - 2; i >= 0; --i) c[i] = (rhs[i] - off * c[i + 1]) / diag[i];
  return c[0];
}

// Constant term of the numerator: the unique A with the m = 1 mode consistent through
// the full tail, B = -4b/(1-b^2) being forced exactly by the two-polarization condition.
double tail_consistent_A(double b) {
  if (b == 0.0) return 1.0;
  double B = -4.0 * b / (1.0 - b * b);
  auto F = [&](double A) {
    return (A + B / 2.0) * (1.0 + b) + (B / 2.0) * tail_c3(A, B, b) - (1.0 - b);
  };
  double A = (1.0 + b * b) / (1.0 - b * b); // printed first-order value as the seed
  for (int it = 0; it < 60; ++it) {
    double f = F(A);
    double fp = (F(A + 1e-7) - f) / 1e-7;
    double step = f / fp;
    A -= step;
    if (std::abs(step) < 1e-15) break;
  }
  return A;
}

} // namespace

double neutral_matrix_conductivity(double sigma_c, double sigma_s, double f, int d) {
  if (!(f > 0.0 && f < 1.0)) fail_validation("InvalidFraction", "f must lie in (0,1)");
  if (!(sigma_s > 0.0)) fail_validation("InvalidConductivity", "sigma_s must be positive");
  if (d != 2 && d != 3) fail_validation("InvalidDimension", "d must be 2 or 3");
  double x;
  if (std::isinf(sigma_c)) {
    x = (1.0 + (d - 1.0) * f) / (1.0 - f);
  } else {
    if (!(sigma_c > 0.0)) fail_validation("InvalidConductivity", "sigma_c must be positive or inf");
    double s = sigma_c / sigma_s;
    double den = (d - 1.0 + s) + f * (1.0 - s);
    if (den == 0.0) fail_validation("NoPositiveSolution", "degenerate neutrality equation");
    x = ((d - 1.0 + s) - (d - 1.0) * f * (1.0 - s)) / den;
  }
  if (!(x > 0.0)) fail_validation("NoPositiveSolution", "neutrality equation yields sigma_m <= 0");
  return sigma_s * x;
}

CoatingResult construct_coating_bD0(const ConformalMap& map, double sigma_s, int n_nodes) {
  if (std::abs(map.b_D()) > 1e-12)
    fail_validation("BDNotZero", "construction requires b_D = 0");
  if (!(sigma_s > 0.0)) fail_validation("InvalidConductivity", "sigma_s must be positive");
  if (sigma_s >= 1.0)
    fail_validation("ShellTooConductive", "need sigma_s < 1 (matrix has sigma_m = 1)");

  CoatingResult out;
  out.map = map;
  out.sigma_s = sigma_s;
  out.sigma_m = 1.0;
  out.r = std::sqrt((1.0 + sigma_s) / (1.0 - sigma_s));
  out.core = build_curve(CurveSpec::conformal(map, 1.0), n_nodes);
  out.shell = build_curve(CurveSpec::conformal(map, out.r), n_nodes);
  out.profile.sigma_c = kInf;
  out.profile.sigma_s = sigma_s;
  out.profile.sigma_m = {1.0, 1.0, 1.0};
  out.profile.d = 2;
  return out;
}

double beta_disk(double r, double sigma_c, double sigma_m) {
  if (!(r > 0.0)) fail_validation("InvalidParameter", "radius must be positive");
  if (!(sigma_m > 0.0)) fail_validation("InvalidConductivity", "sigma_m must be positive");
  if (std::isinf(sigma_c)) return sigma_m / r;
  if (!(sigma_c > sigma_m))
    fail_validation("NonPositiveBeta", "need sigma_c > sigma_m for a positive beta");
  return sigma_c * sigma_m / (sigma_c - sigma_m) / r;
}

double BondingParameter::min_sample() const {
  double m = std::numeric_limits<double>::infinity();
  for (double s : samples) m = std::min(m, s);
  return m;
}

double BondingParameter::numerator(double theta) const {
  return A + B * std::cos(2.0 * (theta - rotation));
}

BondingParameter beta_weakly_neutral(const ConformalMap& map, int n_nodes) {
  BondingParameter bp;
  bp.map = map;
  complexd bD = map.b_D();
  bp.b_abs = std::abs(bD);
  // rotating D by phi multiplies b_D by e^{2 i phi}, so the profile rotates by arg(b_D)/2
  bp.rotation = (bp.b_abs > 0.0) ? 0.5 * std::arg(bD) : 0.0;

  double b = bp.b_abs;
  // admissibility: the printed numerator's minimum (b^2-4b+1)/(1-b^2) must stay positive
  if (b * b - 4.0 * b + 1.0 <= 1e-15)
    fail_validation("BDTooLarge", "|b_D| exceeds 2 - sqrt(3): bonding parameter touches zero");

  bp.A = tail_consistent_A(b);
  bp.B = -4.0 * b / (1.0 - b * b);
  bp.A_printed = (1.0 + b * b) / (1.0 - b * b);
  bp.is_weakly_neutral = true;

  bp.samples.resize(n_nodes);
  for (int k = 0; k < n_nodes; ++k) {
    double theta = kTwoPi * k / n_nodes;
    double dphi = std::abs(map.dmap(std::polar(1.0, theta)));
    bp.samples[k] = bp.numerator(theta) / dphi;
  }
  // positivity probe on a finer grid
  for (int k = 0; k < 4 * n_nodes; ++k) {
    double theta = kTwoPi * k / (4 * n_nodes);
    double dphi = std::abs(map.dmap(std::polar(1.0, theta)));
    if (!(bp.numerator(theta) / dphi > 0.0))
      fail_validation("BDTooLarge", "bonding parameter not positive on the probe grid");
  }
  return bp;
}

BondingParameter bonding_constant(const ConformalMap& map, double value, int n_nodes) {
  if (!(value > 0.0)) fail_validation("NonPositiveBeta", "constant beta must be positive");
  BondingParameter bp;
  bp.map = map;
  bp.b_abs = std::abs(map.b_D());
  bp.A = value;
  bp.B = 0.0;
  bp.A_printed = value;
  bp.is_weakly_neutral = false;
  bp.samples.assign(n_nodes, value);
  return bp;
}

LcDiskSolution solve_lc_disk(double r, double sigma_c, double sigma_m, double beta) {
  if (!(r > 0.0) || !(sigma_m > 0.0))
    fail_validation("InvalidParameter", "need r > 0 and sigma_m > 0");
  if (beta < 0.0) fail_validation("InvalidParameter", "beta must be nonnegative");
  LcDiskSolution sol;
  if (std::isinf(sigma_c)) {
    sol.c = 0.0;
    sol.d = (sigma_m - beta * r) / (sigma_m + beta * r);
    return sol;
  }
  if (!(sigma_c > 0.0)) fail_validation("InvalidConductivity", "sigma_c must be positive or inf");
  double det = sigma_c * (beta * r + sigma_m) + sigma_m * beta * r;
  if (!(std::abs(det) > 1e-300)) fail_numerical("SingularSystem", "degenerate LC parameters");
  sol.c = 2.0 * sigma_m * beta * r / det;
  sol.d = (sigma_c * (sigma_m - beta * r) + beta * r * sigma_m) / det;
  return sol;
}

CoatingSearchResult find_coating_perturbed_disk(const TrigPoly& h, double sigma_c, double sigma_s,
                                                double sigma_m, double r_i,
                                                const CoatingSearchOptions& opts) {
  if (!(r_i > 0.0)) fail_validation("InvalidParameter", "r_i must be positive");
  ConductivityProfile profile;
  profile.sigma_c = sigma_c;
  profile.sigma_s = sigma_s;
  profile.sigma_m = {sigma_m, sigma_m, sigma_m};
  profile.d = 2;
  profile.validate();

  // volume fraction of the neutral unperturbed pair, then r_e = r_i / sqrt(f)
  double q = sigma_m / sigma_s;
  double f;
  if (std::isinf(sigma_c)) {
    f = (q - 1.0) / (q + 1.0);
  } else {
    double s = sigma_c / sigma_s;
    f = -(1.0 + s) * (q - 1.0) / ((1.0 - s) * (q + 1.0));
  }
  if (!(f > 0.0 && f < 1.0))
    fail_validation("NotNeutral", "conductivities admit no neutral concentric pair");
  double r_e = r_i / std::sqrt(f);

  BoundaryCurve core = build_curve(CurveSpec::perturbed_disk(r_i, h), opts.nodes);

  auto shell_of = [&](const std::array<double, 3>& b) {
    TrigPoly hb;
    hb.a0 = b[0];
    hb.cos_c = {0.0, b[1]};
    hb.sin_c = {0.0, b[2]};
    return build_curve(CurveSpec::perturbed_disk(r_e, hb), opts.nodes);
  };
  auto residual = [&](const std::array<double, 3>& b, double* area_out) {
    BoundaryCurve shell = shell_of(b);
    PolarizationTensor pt = pt_coreshell(core, shell, profile);
    if (area_out) *area_out = shell.area();
    return Eigen::Vector3d(pt.m(0, 0), pt.m(1, 1), pt.m(0, 1));
  };
  auto fro = [](const Eigen::Vector3d& v) {
    return std::sqrt(v[0] * v[0] + v[1] * v[1] + 2.0 * v[2] * v[2]);
  };

  CoatingSearchResult out;
  out.r_e = r_e;
  double area;
  Eigen::Vector3d F = residual(out.b, &area);
  out.m_norm = fro(F);
  out.area_shell = area;
  out.trace.push_back({0, out.m_norm, out.b});
  if (h.is_zero() || out.m_norm <= opts.tol * area) return out; // neutral already; no iterations

  const double step = 1e-5 * r_e;
  for (int iter = 1; iter <= opts.max_iter; ++iter) {
    Eigen::Matrix3d J;
    for (int j = 0; j < 3; ++j) {
      std::array<double, 3> bp = out.b;
      bp[j] += step;
      J.col(j) = (residual(bp, nullptr) - F) / step;
    }
    Eigen::Vector3d delta = J.partialPivLu().solve(-F);
    // damped update: halve until the residual does not increase
    double base_norm = fro(F);
    std::array<double, 3> b_next = out.b;
    Eigen::Vector3d F_next = F;
    double scale = 1.0;
    for (int att = 0; att < 7; ++att) {
      for (int j = 0; j < 3; ++j) b_next[j] = out.b[j] + scale * delta[j];
      F_next = residual(b_next, &area);
      if (fro(F_next) < base_norm) break;
      scale *= 0.5;
    }
    out.b = b_next;
    F = F_next;
    out.m_norm = fro(F);
    out.area_shell = area;
    out.iterations = iter;
    out.trace.push_back({iter, out.m_norm, out.b});
    if (out.m_norm <= opts.tol * area) return out;
  }
  fail_numerical("NoConvergence", "coating search did not reach tolerance in max_iter steps");
}

ConfocalConductivityResult confocal_matrix_conductivity(const std::array<double, 3>& c2,
                                                        double rho0, double sigma_c,
                                                        double sigma_s) {
  if (!(c2[0] >= c2[1] && c2[1] >= c2[2] && c2[2] > 0.0))
    fail_validation("InvalidEllipsoid", "need c1^2 >= c2^2 >= c3^2 > 0");
  if (!(rho0 > 0.0)) fail_validation("InvalidEllipsoid", "rho0 must be positive");
  if (!(sigma_s > 0.0) || !(sigma_c > 0.0) || std::isinf(sigma_c))
    fail_validation("InvalidConductivity", "need finite positive sigma_c, sigma_s");

  ConfocalConductivityResult out;
  out.alpha = alpha_coefficients(rho0, c2);
  EllipsoidPair pair{c2, rho0};
  out.f = pair.fraction();
  out.gamma = 1.0 - sigma_c / sigma_s;

  double inv_f = 1.0 / out.f;
  double bound = std::numeric_limits<double>::infinity();
  for (double a : out.alpha) bound = std::min(bound, inv_f / (std::abs(1.0 - 2.0 * a) + 1.0));
  if (std::abs(out.gamma) > bound)
    fail_validation("GammaTooLarge", "|1 - sigma_c/sigma_s| outside the positivity bound");

  for (int j = 0; j < 3; ++j) {
    out.beta_j[j] = -out.gamma / (2.0 * out.alpha[j] * out.gamma + inv_f);
    out.sigma_m[j] = sigma_s * (1.0 + out.beta_j[j]);
    if (!(out.sigma_m[j] > 0.0))
      fail_validation("GammaTooLarge", "derived sigma_m not positive");
  }

  if (out.gamma == 0.0) {
    out.trace_residual = 0.0;
  } else {
    double sum = 0.0;
    for (int j = 0; j < 3; ++j)
      sum += (out.sigma_m[j] + 2.0 * sigma_s) / (out.sigma_m[j] - sigma_s);
    out.trace_residual =
        (2.0 * sigma_s + sigma_c) / (sigma_s - sigma_c) + (out.f / 3.0) * sum;
  }
  return out;
}

} // namespace ni
