#include "ni/fields.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "ni/layer_potentials.hpp"

namespace ni {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// trigonometric interpolation of equispaced samples, evaluated at arbitrary angle
double trig_eval(const std::vector<double>& samples, double theta) {
  int n = static_cast<int>(samples.size());
  int half = n / 2;
  double a0 = 0.0;
  for (int j = 0; j < n; ++j) a0 += samples[j];
  a0 /= n;
  double v = a0;
  for (int k = 1; k <= half; ++k) {
    double ck = 0.0, sk = 0.0;
    for (int j = 0; j < n; ++j) {
      double t = kTwoPi * j / n;
      ck += samples[j] * std::cos(k * t);
      sk += samples[j] * std::sin(k * t);
    }
    ck *= 2.0 / n;
    sk *= 2.0 / n;
    if (k == half && n % 2 == 0) ck *= 0.5, sk = 0.0;
    v += ck * std::cos(k * theta) + sk * std::sin(k * theta);
  }
  return v;
}

bool point_in_polygon(const std::vector<Eigen::Vector2d>& poly, const Eigen::Vector2d& p) {
  bool inside = false;
  size_t n = poly.size();
  for (size_t i = 0, j = n - 1; i < n; j = i++) {
    if ((poly[i][1] > p[1]) != (poly[j][1] > p[1]) &&
        p[0] < (poly[j][0] - poly[i][0]) * (p[1] - poly[i][1]) / (poly[j][1] - poly[i][1]) +
                   poly[i][0])
      inside = !inside;
  }
  return inside;
}

} // namespace

SpectralExteriorSolution solve_imperfect_exterior(const ConformalMap& map,
                                                  const BondingParameter& beta,
                                                  const Eigen::Vector2d& a, int n_modes) {
  if (n_modes < 32) fail_validation("InvalidParameter", "n_modes must be at least 32");
  if (beta.min_sample() <= 0.0)
    fail_validation("NonPositiveBeta", "bonding parameter must be positive");

  const int N = n_modes;
  const int M = 16 * N;
  SpectralExteriorSolution sol;
  sol.n_modes = N;
  sol.alpha = complexd(a[0], -a[1]);

  // beta~(theta) = beta |Phi'|; for the weakly neutral construction this is the numerator
  std::vector<double> bt(M), Va(M), dVa(M), theta(M);
  for (int m = 0; m < M; ++m) {
    theta[m] = kTwoPi * m / M;
    complexd zeta = std::polar(1.0, theta[m]);
    complexd dphi = map.dmap(zeta);
    if (beta.is_weakly_neutral) {
      bt[m] = beta.numerator(theta[m]);
    } else if (beta.B == 0.0 && !beta.samples.empty() &&
               beta.samples.front() == beta.samples.back() && beta.A == beta.samples.front()) {
      bt[m] = beta.A * std::abs(dphi);
    } else {
      bt[m] = trig_eval(beta.samples, theta[m]) * std::abs(dphi);
    }
    Va[m] = (sol.alpha * map.map(zeta)).real();
    dVa[m] = (sol.alpha * dphi * zeta).real();
  }

  // Galerkin projection onto {1, cos k, sin k}, k <= N; unknowns {lambda, Re c_n, Im c_n}
  const int rows = 2 * N + 1, cols = 2 * N + 1;
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(rows, cols);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(rows);
  auto project = [&](const std::vector<double>& g, Eigen::VectorXd& out) {
    out.setZero(rows);
    for (int m = 0; m < M; ++m) out[0] += g[m];
    out[0] /= M;
    for (int k = 1; k <= N; ++k) {
      double ck = 0.0, sk = 0.0;
      for (int m = 0; m < M; ++m) {
        ck += g[m] * std::cos(k * theta[m]);
        sk += g[m] * std::sin(k * theta[m]);
      }
      out[2 * k - 1] = 2.0 * ck / M;
      out[2 * k] = 2.0 * sk / M;
    }
  };

  std::vector<double> g(M);
  Eigen::VectorXd col(rows);
  for (int m = 0; m < M; ++m) g[m] = -bt[m];
  project(g, col);
  A.col(0) = col;
  for (int nmode = 1; nmode <= N; ++nmode) {
    for (int m = 0; m < M; ++m) g[m] = (bt[m] + nmode) * std::cos(nmode * theta[m]);
    project(g, col);
    A.col(2 * nmode - 1) = col;
    for (int m = 0; m < M; ++m) g[m] = (bt[m] + nmode) * std::sin(nmode * theta[m]);
    project(g, col);
    A.col(2 * nmode) = col;
  }
  for (int m = 0; m < M; ++m) g[m] = -(bt[m] * Va[m] - dVa[m]);
  project(g, rhs);

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
  double smax = svd.singularValues()(0);
  double smin = svd.singularValues()(rows - 1);
  sol.condition = smin > 0.0 ? smax / smin : kInf;
  if (sol.condition > 1e12)
    fail_numerical("IllConditioned", "spectral Galerkin system is ill conditioned");
  Eigen::VectorXd x = svd.solve(rhs);

  sol.lambda_core = x[0];
  sol.c.resize(N);
  for (int k = 1; k <= N; ++k) sol.c[k - 1] = complexd(x[2 * k - 1], x[2 * k]);
  sol.alpha1 = sol.c[0];

  double flux = 0.0;
  for (int m = 0; m < M; ++m) {
    double dV = dVa[m];
    for (int k = 1; k <= N; ++k)
      dV -= k * (sol.c[k - 1].real() * std::cos(k * theta[m]) +
                 sol.c[k - 1].imag() * std::sin(k * theta[m]));
    flux += dV;
  }
  sol.flux_residual = std::abs(flux * kTwoPi / M);

  double cmax = 1e-300, tail = 0.0;
  for (int k = 1; k <= N; ++k) cmax = std::max(cmax, std::abs(sol.c[k - 1]));
  for (int k = N / 2; k <= N; ++k) tail = std::max(tail, std::abs(sol.c[k - 1]));
  sol.tail_ratio = tail / cmax;
  return sol;
}

double FieldSolution::u(const Eigen::Vector2d& p) const {
  if (provenance == "imperfect") {
    complexd z(p[0], p[1]);
    // invert z = Phi(zeta) by Newton from zeta = z
    complexd zeta = z;
    bool ok = false;
    for (int it = 0; it < 50; ++it) {
      complexd f = map.map(zeta) - z;
      if (std::abs(f) < 1e-13 * (1.0 + std::abs(z))) {
        ok = true;
        break;
      }
      complexd dp = map.dmap(zeta);
      if (std::abs(dp) < 1e-14) break;
      zeta -= f / dp;
    }
    if (!ok || std::abs(zeta) < 1.0) return spectral.lambda_core;
    double v = (spectral.alpha * map.map(zeta)).real();
    complexd zi = 1.0 / zeta, zp = zi;
    for (int n = 1; n <= spectral.n_modes; ++n) {
      v += (spectral.c[n - 1] * zp).real();
      zp *= zi;
    }
    return v;
  }
  if (trans.pt.flag == "singular_contrast") return a.dot(p);
  double v = a.dot(p);
  for (int l = 0; l < 2; ++l) {
    double sl = single_layer_eval(trans.core, trans.phi1.col(l), p);
    v += a[l] * sl;
    if (trans.has_shell) v += a[l] * single_layer_eval(trans.shell, trans.phi2.col(l), p);
  }
  return v;
}

double FieldSolution::perturbation(const Eigen::Vector2d& p) const { return u(p) - a.dot(p); }

double FieldSolution::circumradius() const {
  if (provenance == "imperfect") {
    double r = 0.0;
    for (int k = 0; k < 256; ++k)
      r = std::max(r, std::abs(map.map(std::polar(1.0, kTwoPi * k / 256))));
    return r;
  }
  return trans.has_shell ? trans.shell.circumradius() : trans.core.circumradius();
}

double FieldSolution::mask_distance() const {
  if (provenance == "imperfect") {
    // consistent with the layer-potential rule at a 512-node discretization
    double per = 0.0;
    const int n = 512;
    complexd prev = map.map(std::polar(1.0, 0.0));
    for (int k = 1; k <= n; ++k) {
      complexd cur = map.map(std::polar(1.0, kTwoPi * k / n));
      per += std::abs(cur - prev);
      prev = cur;
    }
    return kTwoPi * per / n;
  }
  double d = trans.core.min_eval_distance();
  if (trans.has_shell) d = std::max(d, trans.shell.min_eval_distance());
  return d;
}

FieldSolution exterior_field_simple(const BoundaryCurve& curve, double k,
                                    const Eigen::Vector2d& a) {
  FieldSolution sol;
  sol.provenance = "simple";
  sol.a = a;
  sol.trans = solve_simple(curve, k);
  return sol;
}

FieldSolution exterior_field_coreshell(const BoundaryCurve& core, const BoundaryCurve& shell,
                                       const ConductivityProfile& profile,
                                       const Eigen::Vector2d& a) {
  FieldSolution sol;
  sol.provenance = "coreshell";
  sol.a = a;
  sol.trans = solve_coreshell(core, shell, profile);
  return sol;
}

FieldSolution exterior_field_imperfect(const ConformalMap& map, const BondingParameter& beta,
                                       const Eigen::Vector2d& a, int n_modes) {
  FieldSolution sol;
  sol.provenance = "imperfect";
  sol.a = a;
  sol.map = map;
  sol.spectral = solve_imperfect_exterior(map, beta, a, n_modes);
  return sol;
}

std::vector<double> field_values(const FieldSolution& sol,
                                 const std::vector<Eigen::Vector2d>& points) {
  std::vector<double> out;
  out.reserve(points.size());
  for (const auto& p : points) out.push_back(sol.u(p));
  return out;
}

DecayResult decay_exponent(const FieldSolution& sol, double R1, double R2, int m) {
  double rc = sol.circumradius();
  if (!(R2 > R1) || !(R1 > 2.0 * rc))
    fail_validation("InvalidParameter", "need R2 > R1 > 2 * circumradius");
  if (m < 16) fail_validation("InvalidParameter", "need at least 16 directions");

  auto delta = [&](double R) {
    double d = 0.0;
    for (int j = 0; j < m; ++j) {
      double t = kTwoPi * j / m;
      d = std::max(d, std::abs(sol.perturbation({R * std::cos(t), R * std::sin(t)})));
    }
    return d;
  };
  DecayResult res;
  res.delta1 = delta(R1);
  res.delta2 = delta(R2);
  if (res.delta1 < 1e-11) {
    res.below_noise = true;
    res.p = 0.0;
    return res;
  }
  res.p = -std::log(res.delta2 / res.delta1) / std::log(R2 / R1);
  return res;
}

FieldGrid grid_sample(const FieldSolution& sol, const std::array<double, 4>& bbox,
                      int resolution) {
  if (!(bbox[1] > bbox[0]) || !(bbox[3] > bbox[2]))
    fail_validation("InvalidParameter", "bbox must satisfy xmax > xmin, ymax > ymin");
  if (resolution < 2 || resolution > 2048)
    fail_validation("InvalidParameter", "resolution must lie in [2, 2048]");

  FieldGrid grid;
  grid.nx = grid.ny = resolution;
  grid.xmin = bbox[0];
  grid.xmax = bbox[1];
  grid.ymin = bbox[2];
  grid.ymax = bbox[3];

  std::vector<Eigen::Vector2d> core_poly, shell_poly;
  double mask_d = sol.mask_distance();
  if (sol.provenance == "imperfect") {
    const int n = 512;
    core_poly.reserve(n);
    for (int k = 0; k < n; ++k) {
      complexd z = sol.map.map(std::polar(1.0, kTwoPi * k / n));
      core_poly.push_back({z.real(), z.imag()});
    }
  } else {
    core_poly = sol.trans.core.x;
    if (sol.trans.has_shell) shell_poly = sol.trans.shell.x;
  }
  auto boundary_distance = [&](const Eigen::Vector2d& p) {
    double d = std::numeric_limits<double>::infinity();
    for (const auto& q : core_poly) d = std::min(d, (p - q).norm());
    for (const auto& q : shell_poly) d = std::min(d, (p - q).norm());
    return d;
  };

  const double nan = std::numeric_limits<double>::quiet_NaN();
  grid.x.resize(resolution);
  grid.y.resize(resolution);
  for (int i = 0; i < resolution; ++i) {
    grid.x[i] = bbox[0] + (bbox[1] - bbox[0]) * i / (resolution - 1.0);
    grid.y[i] = bbox[2] + (bbox[3] - bbox[2]) * i / (resolution - 1.0);
  }
  grid.u.assign(resolution * resolution, nan);
  grid.pert.assign(resolution * resolution, nan);
  grid.mask.assign(resolution * resolution, -1);

  for (int j = 0; j < resolution; ++j) {
    for (int i = 0; i < resolution; ++i) {
      Eigen::Vector2d p(grid.x[i], grid.y[j]);
      int idx = j * resolution + i;
      if (boundary_distance(p) <= mask_d) continue; // masked band straddles the jump
      int region = 0;
      if (point_in_polygon(core_poly, p))
        region = 1;
      else if (!shell_poly.empty() && point_in_polygon(shell_poly, p))
        region = 2;
      grid.mask[idx] = region;
      double uv = (sol.provenance == "imperfect" && region == 1) ? sol.spectral.lambda_core
                                                                 : sol.u(p);
      grid.u[idx] = uv;
      grid.pert[idx] = uv - sol.a.dot(p);
    }
  }
  return grid;
}

std::string grid_to_csv(const FieldGrid& grid) {
  std::string out = "x,y,u,pert,mask\n";
  char buf[160];
  for (int j = 0; j < grid.ny; ++j) {
    for (int i = 0; i < grid.nx; ++i) {
      int idx = j * grid.nx + i;
      std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g,%d\n", grid.x[i], grid.y[j],
                    grid.u[idx], grid.pert[idx], grid.mask[idx]);
      out += buf;
    }
  }
  return out;
}

} // namespace ni
