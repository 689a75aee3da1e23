#include "ni/polarization.hpp"

#include <cmath>

#include "ni/layer_potentials.hpp"

namespace ni {

namespace {

// Deflate (diag + K) by adding 1 * w^T when the lambda = 1/2 block is singular
// (perfect conductor): the compatible RHS then forces zero total charge.
void add_charge_deflation(Eigen::MatrixXd& block, const BoundaryCurve& curve, int row0, int col0) {
  for (int i = 0; i < curve.n; ++i)
    for (int j = 0; j < curve.n; ++j) block(row0 + i, col0 + j) += curve.w[j];
}

Eigen::VectorXd moment_weights(const BoundaryCurve& curve, int l) {
  Eigen::VectorXd v(curve.n);
  for (int i = 0; i < curve.n; ++i) v[i] = curve.x[i][l] * curve.w[i];
  return v;
}

void check_symmetrize(PolarizationTensor& pt) {
  double asym = std::abs(pt.m(0, 1) - pt.m(1, 0));
  // neutral pairs have M ~ 0; fall back to the domain area as the reference scale
  double scale = std::max(pt.m.norm(), pt.area_core + pt.area_shell);
  if (scale > 0.0 && asym > 1e-9 * scale)
    fail_numerical("SolveFailure", "polarization tensor asymmetry exceeds 1e-9 relative");
  double sym = 0.5 * (pt.m(0, 1) + pt.m(1, 0));
  pt.m(0, 1) = pt.m(1, 0) = sym;
}

void check_mean_zero(const BoundaryCurve& curve, const Eigen::MatrixXd& phi, double tol) {
  for (int l = 0; l < 2; ++l) {
    double s = 0.0, amax = 0.0;
    for (int i = 0; i < curve.n; ++i) {
      s += phi(i, l) * curve.w[i];
      amax = std::max(amax, std::abs(phi(i, l)));
    }
    if (std::abs(s) > tol * curve.perimeter() * std::max(amax, 1e-300))
      fail_numerical("SolveFailure", "solution density is not mean-zero");
  }
}

} // namespace

bool ConductivityProfile::matrix_isotropic() const {
  for (int j = 1; j < d; ++j)
    if (sigma_m[j] != sigma_m[0]) return false;
  return true;
}

double ConductivityProfile::sigma_m_iso() const {
  if (!matrix_isotropic())
    fail_validation("AnisotropicMatrix", "operation requires isotropic sigma_m");
  return sigma_m[0];
}

double ConductivityProfile::lambda() const {
  if (core_infinite()) return 0.5;
  if (sigma_c == sigma_s)
    fail_validation("SingularContrast", "lambda undefined for sigma_c == sigma_s");
  return (sigma_c + sigma_s) / (2.0 * (sigma_c - sigma_s));
}

double ConductivityProfile::mu() const {
  double sm = sigma_m_iso();
  if (sigma_s == sm) fail_validation("SingularContrast", "mu undefined for sigma_s == sigma_m");
  return (sigma_s + sm) / (2.0 * (sigma_s - sm));
}

double ConductivityProfile::contrast_k() const { return sigma_c / sigma_m_iso(); }

void ConductivityProfile::validate() const {
  if (!(sigma_s > 0.0)) fail_validation("InvalidConductivity", "sigma_s must be positive");
  if (!core_infinite() && !(sigma_c > 0.0))
    fail_validation("InvalidConductivity", "sigma_c must be positive or inf");
  for (int j = 0; j < d; ++j)
    if (!(sigma_m[j] > 0.0)) fail_validation("InvalidConductivity", "sigma_m must be positive");
}

TransmissionSolution solve_simple(const BoundaryCurve& curve, double k) {
  if (!(k > 0.0)) fail_validation("InvalidContrast", "contrast k must be positive");

  TransmissionSolution sol;
  sol.core = curve;
  sol.has_shell = false;
  sol.phi1 = Eigen::MatrixXd::Zero(curve.n, 2);
  sol.pt.d = 2;
  sol.pt.area_core = curve.area();
  sol.pt.contrast = k;

  if (k == 1.0) {
    sol.pt.flag = "singular_contrast";
    return sol;
  }

  bool infinite = std::isinf(k);
  double lambda0 = infinite ? 0.5 : (k + 1.0) / (2.0 * (k - 1.0));
  Eigen::MatrixXd A = lambda0 * Eigen::MatrixXd::Identity(curve.n, curve.n) - np_matrix(curve);
  if (infinite) add_charge_deflation(A, curve, 0, 0);

  Eigen::PartialPivLU<Eigen::MatrixXd> lu(A);
  if (lu.rcond() < 1e-14) fail_numerical("SolveFailure", "transmission system numerically singular");

  for (int l = 0; l < 2; ++l) {
    Eigen::VectorXd rhs(curve.n);
    for (int i = 0; i < curve.n; ++i) rhs[i] = curve.nu[i][l];
    sol.phi1.col(l) = lu.solve(rhs);
  }
  check_mean_zero(curve, sol.phi1, 1e-10);

  for (int l = 0; l < 2; ++l)
    for (int lp = 0; lp < 2; ++lp)
      sol.pt.m(l, lp) = moment_weights(curve, lp).dot(sol.phi1.col(l));
  check_symmetrize(sol.pt);
  return sol;
}

PolarizationTensor pt_simple(const BoundaryCurve& curve, double k) {
  return solve_simple(curve, k).pt;
}

TransmissionSolution solve_coreshell(const BoundaryCurve& core, const BoundaryCurve& shell,
                                     const ConductivityProfile& profile) {
  profile.validate();
  double sm = profile.sigma_m_iso();

  TransmissionSolution sol;
  sol.core = core;
  sol.shell = shell;
  sol.has_shell = true;
  sol.pt.d = 2;
  sol.pt.area_core = core.area();
  sol.pt.area_shell = shell.area();
  sol.pt.contrast = profile.core_infinite() ? kInf : profile.sigma_c / sm;

  bool shell_is_matrix = (profile.sigma_s == sm);
  bool core_is_shell = (!profile.core_infinite() && profile.sigma_c == profile.sigma_s);
  if (shell_is_matrix && core_is_shell) { // homogeneous: M = 0, densities vanish
    sol.phi1 = Eigen::MatrixXd::Zero(core.n, 2);
    sol.phi2 = Eigen::MatrixXd::Zero(shell.n, 2);
    return sol;
  }

  const int n1 = core.n, n2 = shell.n, n = n1 + n2;
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);

  if (core_is_shell) {
    // no contrast at the inner interface: phi1 = 0
    A.topLeftCorner(n1, n1).setIdentity();
  } else {
    double lambda = profile.lambda();
    A.topLeftCorner(n1, n1) = np_matrix(core) - lambda * Eigen::MatrixXd::Identity(n1, n1);
    if (profile.core_infinite()) add_charge_deflation(A, core, 0, 0);
    A.topRightCorner(n1, n2) = dnS_cross_matrix(shell, core);
  }
  if (shell_is_matrix) {
    // shell invisible: phi2 = 0
    A.bottomRightCorner(n2, n2).setIdentity();
  } else {
    double mu = profile.mu();
    A.bottomLeftCorner(n2, n1) = dnS_cross_matrix(core, shell);
    A.bottomRightCorner(n2, n2) = np_matrix(shell) - mu * Eigen::MatrixXd::Identity(n2, n2);
  }

  Eigen::PartialPivLU<Eigen::MatrixXd> lu(A);
  if (lu.rcond() < 1e-14) fail_numerical("SolveFailure", "core-shell system numerically singular");

  sol.phi1.resize(n1, 2);
  sol.phi2.resize(n2, 2);
  for (int l = 0; l < 2; ++l) {
    Eigen::VectorXd rhs(n);
    for (int i = 0; i < n1; ++i) rhs[i] = core_is_shell ? 0.0 : -core.nu[i][l];
    for (int i = 0; i < n2; ++i) rhs[n1 + i] = shell_is_matrix ? 0.0 : -shell.nu[i][l];
    Eigen::VectorXd sv = lu.solve(rhs);
    sol.phi1.col(l) = sv.head(n1);
    sol.phi2.col(l) = sv.tail(n2);
  }
  check_mean_zero(core, sol.phi1, 1e-9);
  check_mean_zero(shell, sol.phi2, 1e-9);

  for (int l = 0; l < 2; ++l)
    for (int lp = 0; lp < 2; ++lp)
      sol.pt.m(l, lp) = moment_weights(core, lp).dot(sol.phi1.col(l)) +
                        moment_weights(shell, lp).dot(sol.phi2.col(l));
  check_symmetrize(sol.pt);
  return sol;
}

PolarizationTensor pt_coreshell(const BoundaryCurve& core, const BoundaryCurve& shell,
                                const ConductivityProfile& profile) {
  return solve_coreshell(core, shell, profile).pt;
}

HsReport hs_check(const PolarizationTensor& M, double k, double area) {
  if (k == 1.0) fail_validation("InvalidContrast", "HS bounds need k != 1");
  constexpr int d = 2;
  double smk = k - 1.0;
  bool definite = (smk > 0.0) ? (M.m(0, 0) > 0.0 && M.m.determinant() > 0.0)
                              : (M.m(0, 0) < 0.0 && M.m.determinant() > 0.0);
  if (!definite)
    fail_validation("NotDefinite", "PT does not match sign(k-1) definiteness");

  double tr = M.m.trace();
  double tr_inv = M.m.inverse().trace();
  double upper = area * (k - 1.0) * (d - 1.0 + 1.0 / k);
  double lower = (d - 1.0 + k) / (k - 1.0);
  HsReport rep;
  if (k > 1.0) {
    rep.upper_slack = upper - tr;
    rep.lower_slack = lower - area * tr_inv;
  } else { // both trace quantities are negative; bounds reverse
    rep.upper_slack = tr - upper;
    rep.lower_slack = area * tr_inv - lower;
  }
  rep.attains_lower = rep.lower_slack <= 1e-6;
  return rep;
}

} // namespace ni
