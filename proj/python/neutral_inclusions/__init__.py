"""Polarization tensors, neutral inclusions, and quadrature-domain checks."""

from ._core import (
    K_INF,
    BondingParameter,
    BoundaryCurve,
    CoatingResult,
    CoatingSearchResult,
    ConductivityProfile,
    ConformalMap,
    ConfocalConductivityResult,
    DecayResult,
    EllipsoidPair,
    FieldSolution,
    HsReport,
    LcDiskSolution,
    NewtonianFormulationReport,
    NumericalError,
    OdpResidualReport,
    OdpSolution,
    PolarizationTensor,
    QuadratureReport,
    SpectralExteriorSolution,
    ValidationError,
    alpha_coefficients,
    beta_disk,
    beta_weakly_neutral,
    bonding_constant,
    check_newtonian_formulation,
    circle,
    confocal_matrix_conductivity,
    conformal_curve,
    construct_coating_bD0,
    decay_exponent,
    ellipse,
    ellipsoid_potential_3d,
    ellipsoidal_coordinate,
    exterior_field_coreshell,
    exterior_field_imperfect,
    exterior_field_simple,
    find_coating_perturbed_disk,
    focal_ellipse_identity,
    harmonic_area_integral_2d,
    hs_check,
    mean_value_identity_2d,
    mean_value_identity_3d,
    neumann_oval_curve,
    neumann_oval_identity,
    neutral_matrix_conductivity,
    newtonian_potential_2d,
    odp_balls,
    odp_confocal,
    odp_residual,
    perturbed_disk,
    pt_coreshell,
    pt_simple,
    solve_imperfect_exterior,
    solve_lc_disk,
)

__all__ = [name for name in dir() if not name.startswith("_")]
