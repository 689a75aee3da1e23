#include <cmath>

#include <doctest.h>

#include "ni/fields.hpp"
#include "ni/geometry.hpp"
#include "ni/neutrality.hpp"
#include "ni/polarization.hpp"

using namespace ni;

namespace {

const double kPi = 3.14159265358979323846;

BoundaryCurve kite(int n = 256) {
  return build_curve(CurveSpec::conformal(ConformalMap({complexd(0.0), complexd(0.25)})), n);
}

double max_pert_on_circle(const FieldSolution& sol, double R, int m = 32) {
  double worst = 0.0;
  for (int j = 0; j < m; ++j) {
    double t = 2.0 * kPi * j / m;
    worst = std::max(worst, std::abs(sol.perturbation({R * std::cos(t), R * std::sin(t)})));
  }
  return worst;
}

} // namespace

TEST_CASE("simple inclusion exterior field") {
  auto curve = kite();

  SUBCASE("no contrast leaves the background field") {
    auto sol = exterior_field_simple(curve, 1.0, {1.0, 0.0});
    CHECK(std::abs(sol.perturbation({2.0, 1.0})) <= 1e-14);
    CHECK(sol.u({2.0, 1.0}) == doctest::Approx(2.0).epsilon(1e-14));
  }

  SUBCASE("perturbation is linear in the background field") {
    auto s1 = exterior_field_simple(curve, 2.0, {1.0, 0.0});
    auto s2 = exterior_field_simple(curve, 2.0, {0.0, 1.0});
    auto s12 = exterior_field_simple(curve, 2.0, {1.0, 1.0});
    Eigen::Vector2d p(2.4, -1.1);
    CHECK(s12.perturbation(p) ==
          doctest::Approx(s1.perturbation(p) + s2.perturbation(p)).epsilon(1e-12));
  }

  SUBCASE("generic inclusion decays like a dipole") {
    auto sol = exterior_field_simple(curve, 2.0, {1.0, 0.0});
    double rc = sol.circumradius();
    auto dec = decay_exponent(sol, 2.5 * rc, 5.0 * rc, 32);
    CHECK_FALSE(dec.below_noise);
    CHECK(dec.p >= 0.9);
    CHECK(dec.p <= 1.1);
  }

  SUBCASE("far-field Fourier fit recovers the polarization tensor") {
    auto sol = exterior_field_simple(curve, 2.0, {1.0, 0.0});
    auto pt = pt_simple(curve, 2.0);
    double R = 10.0 * sol.circumradius();
    const int m = 256;
    double c1 = 0.0, s1 = 0.0;
    for (int j = 0; j < m; ++j) {
      double t = 2.0 * kPi * j / m;
      double pert = sol.perturbation({R * std::cos(t), R * std::sin(t)});
      c1 += pert * std::cos(t) * 2.0 / m;
      s1 += pert * std::sin(t) * 2.0 / m;
    }
    CHECK(-2.0 * kPi * R * c1 == doctest::Approx(pt.m(0, 0)).epsilon(1e-4));
    CHECK(-2.0 * kPi * R * s1 == doctest::Approx(pt.m(0, 1)).epsilon(1e-2));
  }
}

TEST_CASE("neutral coated disks are exterior-invisible") {
  auto core = build_curve(CurveSpec::circle(1.0), 256);
  auto shell = build_curve(CurveSpec::circle(2.0), 256);
  double sm = neutral_matrix_conductivity(5.0, 2.0, 0.25, 2);
  ConductivityProfile prof;
  prof.sigma_c = 5.0;
  prof.sigma_s = 2.0;
  prof.sigma_m = {sm, sm, sm};
  auto sol = exterior_field_coreshell(core, shell, prof, {1.0, 0.0});

  CHECK(max_pert_on_circle(sol, 6.0) <= 1e-9);

  auto dec = decay_exponent(sol, 5.0, 10.0, 32);
  CHECK(dec.below_noise);
}

TEST_CASE("decay exponent input validation") {
  auto sol = exterior_field_simple(kite(128), 2.0, {1.0, 0.0});
  double rc = sol.circumradius();
  CHECK_THROWS_WITH_AS(decay_exponent(sol, 1.5 * rc, 5.0 * rc, 32),
                       doctest::Contains("InvalidParameter"), validation_error);
  CHECK_THROWS_WITH_AS(decay_exponent(sol, 5.0 * rc, 2.5 * rc, 32),
                       doctest::Contains("InvalidParameter"), validation_error);
  CHECK_THROWS_WITH_AS(decay_exponent(sol, 2.5 * rc, 5.0 * rc, 8),
                       doctest::Contains("InvalidParameter"), validation_error);
}

TEST_CASE("spectral solver for imperfect bonding") {
  SUBCASE("disk at the neutral constant beta has no exterior trace") {
    auto bp = bonding_constant(ConformalMap(std::vector<complexd>{}), 1.0, 256);
    auto sol = solve_imperfect_exterior(ConformalMap(std::vector<complexd>{}), bp, {1.0, 0.0}, 64);
    CHECK(std::abs(sol.alpha1) <= 1e-13);
    for (const auto& cn : sol.c) CHECK(std::abs(cn) <= 1e-12);
    CHECK(sol.flux_residual <= 1e-12);
  }

  SUBCASE("disk at a generic beta matches the LC closed form") {
    double beta = 2.0;
    auto bp = bonding_constant(ConformalMap(std::vector<complexd>{}), beta, 256);
    auto sol = solve_imperfect_exterior(ConformalMap(std::vector<complexd>{}), bp, {1.0, 0.0}, 64);
    auto lc = solve_lc_disk(1.0, kInf, 1.0, beta);
    CHECK(sol.c[0].real() == doctest::Approx(lc.d).epsilon(1e-10));
    CHECK(std::abs(sol.c[0].imag()) <= 1e-12);
    for (size_t n = 1; n < sol.c.size(); ++n) CHECK(std::abs(sol.c[n]) <= 1e-10);
    CHECK(sol.lambda_core == doctest::Approx(0.0).epsilon(1e-12));
  }

  SUBCASE("weakly neutral beta cancels the leading coefficient") {
    ConformalMap map({complexd(0.1)});
    auto bp = beta_weakly_neutral(map, 256);
    for (auto a : {Eigen::Vector2d(1.0, 0.0), Eigen::Vector2d(0.0, 1.0)}) {
      auto sol = solve_imperfect_exterior(map, bp, a, 64);
      CHECK(std::abs(sol.alpha1) <= 1e-8);
      CHECK(sol.condition < 1e6);
      CHECK(sol.flux_residual <= 1e-10);
    }
  }

  SUBCASE("rotated b_D keeps the cancellation") {
    ConformalMap map({0.1 * std::exp(complexd(0.0, kPi / 3.0))});
    auto bp = beta_weakly_neutral(map, 256);
    for (auto a : {Eigen::Vector2d(1.0, 0.0), Eigen::Vector2d(0.0, 1.0)}) {
      auto sol = solve_imperfect_exterior(map, bp, a, 64);
      CHECK(std::abs(sol.alpha1) <= 1e-8);
    }
  }

  SUBCASE("wrong constant beta leaves a dipole") {
    ConformalMap map({complexd(0.1)});
    auto bp = bonding_constant(map, 1.0, 256);
    auto sol = solve_imperfect_exterior(map, bp, {1.0, 0.0}, 64);
    CHECK(std::abs(sol.alpha1) >= 1e-3);
  }

  SUBCASE("first-order constant alone does not cancel") {
    ConformalMap map({complexd(0.1)});
    auto bp = beta_weakly_neutral(map, 256);
    bp.A = bp.A_printed;
    auto sol = solve_imperfect_exterior(map, bp, {1.0, 0.0}, 64);
    CHECK(std::abs(sol.alpha1) >= 1e-3);
    CHECK(std::abs(sol.alpha1) <= 2e-2);
  }

  SUBCASE("mode doubling leaves the answer unchanged") {
    ConformalMap map({complexd(0.2)});
    auto bp = beta_weakly_neutral(map, 512);
    auto lo = solve_imperfect_exterior(map, bp, {1.0, 0.0}, 64);
    auto hi = solve_imperfect_exterior(map, bp, {1.0, 0.0}, 128);
    CHECK(std::abs(lo.alpha1 - hi.alpha1) <= 1e-10);
    CHECK(lo.tail_ratio <= 1e-12);
  }

  SUBCASE("mode floor") {
    auto bp = bonding_constant(ConformalMap(std::vector<complexd>{}), 1.0, 64);
    CHECK_THROWS_WITH_AS(solve_imperfect_exterior(ConformalMap(std::vector<complexd>{}), bp, {1.0, 0.0}, 16),
                         doctest::Contains("InvalidParameter"), validation_error);
  }
}

TEST_CASE("imperfect field evaluation and decay") {
  ConformalMap map({complexd(0.1)});

  SUBCASE("weakly neutral bonding reaches quadrupole decay") {
    auto bp = beta_weakly_neutral(map, 256);
    auto sol = exterior_field_imperfect(map, bp, {1.0, 0.0}, 64);
    double rc = sol.circumradius();
    auto dec = decay_exponent(sol, 2.5 * rc, 5.0 * rc, 32);
    CHECK(dec.p >= 1.9);
    auto ctrl = exterior_field_imperfect(map, bonding_constant(map, 1.0, 256),
                                         {1.0, 0.0}, 64);
    auto dc = decay_exponent(ctrl, 2.5 * rc, 5.0 * rc, 32);
    CHECK(dc.p >= 0.9);
    CHECK(dc.p <= 1.1);
  }

  SUBCASE("interior evaluations return the core level") {
    auto bp = beta_weakly_neutral(map, 256);
    auto sol = exterior_field_imperfect(map, bp, {1.0, 0.0}, 64);
    CHECK(sol.u({0.0, 0.0}) == doctest::Approx(sol.spectral.lambda_core).epsilon(1e-12));
  }

  SUBCASE("field values helper matches pointwise evaluation") {
    auto bp = beta_weakly_neutral(map, 256);
    auto sol = exterior_field_imperfect(map, bp, {1.0, 0.0}, 64);
    std::vector<Eigen::Vector2d> pts = {{2.0, 0.5}, {-1.5, 1.5}};
    auto vals = field_values(sol, pts);
    REQUIRE(vals.size() == 2);
    CHECK(vals[0] == sol.u(pts[0]));
    CHECK(vals[1] == sol.u(pts[1]));
  }
}

TEST_CASE("grid sampling") {
  auto core = build_curve(CurveSpec::circle(1.0), 256);
  auto shell = build_curve(CurveSpec::circle(2.0), 256);
  double sm = neutral_matrix_conductivity(5.0, 2.0, 0.25, 2);
  ConductivityProfile prof;
  prof.sigma_c = 5.0;
  prof.sigma_s = 2.0;
  prof.sigma_m = {sm, sm, sm};
  auto sol = exterior_field_coreshell(core, shell, prof, {1.0, 0.0});

  SUBCASE("masks classify the three regions") {
    auto grid = grid_sample(sol, {-6.0, 6.0, -6.0, 6.0}, 33);
    REQUIRE(grid.mask.size() == 33u * 33u);
    int counts[4] = {0, 0, 0, 0}; // masked, exterior, core, shell
    for (size_t i = 0; i < grid.mask.size(); ++i) {
      int m = grid.mask[i];
      REQUIRE(m >= -1);
      REQUIRE(m <= 2);
      counts[m + 1]++;
      if (m == -1) {
        CHECK(std::isnan(grid.u[i]));
        CHECK(std::isnan(grid.pert[i]));
      } else {
        CHECK_FALSE(std::isnan(grid.u[i]));
        if (m == 0) CHECK(std::abs(grid.pert[i]) <= 1e-9);
      }
    }
    CHECK(counts[1] > 0); // exterior
    CHECK(counts[2] > 0); // core
    CHECK(counts[3] > 0); // shell
    // center cell is the core
    int mid = (33 / 2) * 33 + 33 / 2;
    CHECK(grid.mask[mid] == 1);
  }

  SUBCASE("csv output is deterministic with the documented header") {
    auto grid = grid_sample(sol, {-3.0, 3.0, -3.0, 3.0}, 17);
    auto csv1 = grid_to_csv(grid);
    auto csv2 = grid_to_csv(grid_sample(sol, {-3.0, 3.0, -3.0, 3.0}, 17));
    CHECK(csv1 == csv2);
    CHECK(csv1.rfind("x,y,u,pert,mask\n", 0) == 0);
    size_t lines = 0;
    for (char ch : csv1)
      if (ch == '\n') lines++;
    CHECK(lines == 1u + 17u * 17u);
    CHECK(csv1.find("\r") == std::string::npos);
  }

  SUBCASE("imperfect fields mark the core region") {
    ConformalMap map({complexd(0.1)});
    auto bp = beta_weakly_neutral(map, 256);
    auto isol = exterior_field_imperfect(map, bp, {1.0, 0.0}, 64);
    auto grid = grid_sample(isol, {-2.5, 2.5, -2.5, 2.5}, 21);
    int mid = (21 / 2) * 21 + 21 / 2;
    CHECK(grid.mask[mid] == 1);
    CHECK(grid.u[mid] == doctest::Approx(isol.spectral.lambda_core).epsilon(1e-12));
  }

  SUBCASE("bbox and resolution validation") {
    CHECK_THROWS_WITH_AS(grid_sample(sol, {1.0, -1.0, -1.0, 1.0}, 17),
                         doctest::Contains("InvalidParameter"), validation_error);
    CHECK_THROWS_WITH_AS(grid_sample(sol, {-1.0, 1.0, -1.0, 1.0}, 1),
                         doctest::Contains("InvalidParameter"), validation_error);
    CHECK_THROWS_WITH_AS(grid_sample(sol, {-1.0, 1.0, -1.0, 1.0}, 4096),
                         doctest::Contains("InvalidParameter"), validation_error);
  }
}
