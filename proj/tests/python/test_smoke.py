import math

import pytest

import neutral_inclusions as ni


def test_disk_pt():
    disk = ni.circle(1.0, n=256)
    pt = ni.pt_simple(disk, 2.0)
    assert pt.m[0][0] == pytest.approx(2.0 * math.pi / 3.0, rel=1e-8)
    assert pt.m[1][1] == pytest.approx(2.0 * math.pi / 3.0, rel=1e-8)


def test_neutral_concentric_disks():
    sigma_m = ni.neutral_matrix_conductivity(5.0, 2.0, 0.25, 2)
    assert sigma_m == pytest.approx(2.48, abs=1e-12)
    prof = ni.ConductivityProfile(5.0, 2.0, sigma_m)
    pt = ni.pt_coreshell(ni.circle(1.0, n=256), ni.circle(2.0, n=256), prof)
    assert abs(pt.m[0][0]) <= 1e-8 * pt.area_shell


def test_hs_attainment():
    ell = ni.ellipse(2.0, 1.0, n=256)
    pt = ni.pt_simple(ell, 3.0)
    rep = ni.hs_check(pt, 3.0, ell.area())
    assert rep.attains_lower


def test_weakly_neutral_bonding():
    mp = ni.ConformalMap([0.1])
    beta = ni.beta_weakly_neutral(mp, 512)
    assert beta.is_weakly_neutral
    assert beta.B == pytest.approx(-40.0 / 99.0, abs=1e-14)
    sol = ni.solve_imperfect_exterior(mp, beta, [1.0, 0.0], 64)
    assert abs(sol.alpha1) <= 1e-8


def test_bd_too_large_raises():
    with pytest.raises(ValueError, match="BDTooLarge"):
        ni.beta_weakly_neutral(ni.ConformalMap([0.3]), 128)


def test_odp_balls():
    sol = ni.odp_balls(1.0, 2.0)
    A = sol.A()
    assert A[0][0] == pytest.approx(-7.0 / 3.0, abs=1e-12)
    rep = ni.odp_residual(sol, 100, 7)
    assert rep.outer_grad_max <= 1e-10


def test_focal_mass():
    rep = ni.focal_ellipse_identity([2.0, 1.0], 6)
    assert rep.residual <= 1e-8
    curve = ni.ellipse(2.0, 1.0, n=512)
    assert ni.harmonic_area_integral_2d(curve, 0) == pytest.approx(2.0 * math.pi, rel=1e-10)


def test_alpha_sum_identity():
    pair = ni.EllipsoidPair([4.0, 2.0, 1.0], 2.0)
    alpha = ni.alpha_coefficients(2.0, [4.0, 2.0, 1.0])
    assert 2.0 * sum(alpha) == pytest.approx(1.0 - 1.0 / pair.fraction(), abs=1e-10)
