"""Numerical evaluation of real-regulator curve integrals."""
from .bielliptic import (
    BiellipticData,
    bielliptic_gram,
    bielliptic_identity_check,
    build_bielliptic,
    pairing_cross_check,
    pullback_log_integral,
    solve_degree2_cover,
)
from .covers import build_genus3_cover
from .integrals import (
    LogFactor,
    curve_integral,
    curve_mass,
    functional_equation_check,
    gram_from_forms,
    gram_normalize,
    gram_self_check,
    invariant_log_integral,
    legendre_model,
    regulator_pairing,
    resolve_settings,
    unit_volume_form,
)
from .model import ComplexCurveModel, GramData, QuadratureResult, VolumeForm
from .periods import elliptic_periods, jacobi_sn, sample_log_coordinate
from .quadrature import DEFAULT_SETTINGS, QuadratureSettings, integrate_plane

__all__ = [
    "BiellipticData",
    "bielliptic_gram",
    "bielliptic_identity_check",
    "build_bielliptic",
    "pairing_cross_check",
    "pullback_log_integral",
    "solve_degree2_cover",
    "build_genus3_cover",
    "LogFactor",
    "curve_integral",
    "curve_mass",
    "functional_equation_check",
    "gram_from_forms",
    "gram_normalize",
    "gram_self_check",
    "invariant_log_integral",
    "legendre_model",
    "regulator_pairing",
    "resolve_settings",
    "unit_volume_form",
    "ComplexCurveModel",
    "GramData",
    "QuadratureResult",
    "VolumeForm",
    "elliptic_periods",
    "jacobi_sn",
    "sample_log_coordinate",
    "DEFAULT_SETTINGS",
    "QuadratureSettings",
    "integrate_plane",
]
