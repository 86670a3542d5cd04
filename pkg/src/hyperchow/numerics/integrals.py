"""Curve integrals: masses, Gram matrices, log integrals, regulator pairings.

All integrals are computed in the x-chart with explicit sheet summation; the
integrands used here are even under the sheet swap, so the two sheets
contribute equal densities and a global factor 2.  The (i/2) convention makes
every density real for a conjugate-symmetric coefficient matrix.
"""
from __future__ import annotations

import math
import os
from dataclasses import dataclass

import numpy as np

from ..algebra.function_field import FunctionFieldElement
from .model import ComplexCurveModel, GramData, QuadratureResult, VolumeForm
from .quadrature import DEFAULT_SETTINGS, QuadratureSettings, integrate_plane

PRECISION_ENV = "HYPERCHOW_PRECISION"


def resolve_settings(mode: str | None = None) -> QuadratureSettings:
    mode = mode or os.environ.get(PRECISION_ENV, "default")
    if mode == "high":
        return DEFAULT_SETTINGS.high_precision()
    return DEFAULT_SETTINGS


@dataclass
class LogFactor:
    """const + sum_i weights[i] * log|x - points[i]|."""

    const: float
    points: np.ndarray
    weights: np.ndarray

    @classmethod
    def from_roots(cls, zeros=(), poles=(), lead: complex = 1.0):
        pts = list(zeros) + list(poles)
        wts = [1.0] * len(list(zeros)) + [-1.0] * len(list(poles))
        return cls(math.log(abs(lead)), np.asarray(pts, dtype=complex), np.asarray(wts))

    @classmethod
    def from_float_rational(cls, num_coeffs_asc, den_coeffs_asc=(1.0,)):
        num = np.asarray(num_coeffs_asc, dtype=complex)
        den = np.asarray(den_coeffs_asc, dtype=complex)
        zeros = np.roots(num[::-1]) if len(num) > 1 else np.array([], dtype=complex)
        poles = np.roots(den[::-1]) if len(den) > 1 else np.array([], dtype=complex)
        lead = num[-1] / den[-1]
        return cls.from_roots(list(zeros), list(poles), lead)

    @classmethod
    def from_exact_function(cls, F: FunctionFieldElement):
        """log|F| for an exact function of x alone."""
        if not F.is_x_rational():
            raise ValueError("log factor needs a function of x alone")
        num = [float(c) for c in F.a.coeffs]
        den = [float(c) for c in F.d.coeffs]
        return cls.from_float_rational(num, den)

    def eval(self, z):
        out = np.full(np.shape(z), self.const, dtype=float)
        for p, w in zip(self.points, self.weights):
            out = out + w * np.log(np.abs(z - p))
        return out

    def __neg__(self):
        return LogFactor(-self.const, self.points, -self.weights)


def _density_callable(model: ComplexCurveModel, matrix: np.ndarray):
    M = np.asarray(matrix, dtype=complex)
    g = M.shape[0]
    hc_desc = model.h_coeffs[::-1]

    def density(z):
        powers = [np.ones_like(z)]
        for _ in range(g - 1):
            powers.append(powers[-1] * z)
        num = np.zeros_like(z)
        for j in range(g):
            cj = np.conj(powers[j])
            for k in range(g):
                if M[j, k] != 0:
                    num = num + M[j, k] * cj * powers[k]
        return num / np.abs(np.polyval(hc_desc, z))

    return density


def curve_integral(
    model: ComplexCurveModel,
    matrix,
    logfac: LogFactor | None = None,
    tol: float = 1e-8,
    settings: QuadratureSettings | None = None,
    budget: int | None = None,
) -> QuadratureResult:
    """2 * integral over the x-plane of density(matrix) * logfac."""
    settings = settings or resolve_settings()
    dens = _density_callable(model, np.asarray(matrix, dtype=complex))
    if logfac is None:
        f = dens
        extra = []
    else:
        f = lambda z: dens(z) * logfac.eval(z)
        extra = list(logfac.points)
    special = list(model.branch_points) + extra
    value, err, cells = integrate_plane(
        f, special, tol=tol / 2, settings=settings, budget=budget
    )
    if abs(value.imag) > max(1e-9, 100 * err):
        raise ArithmeticError("expected a real integral; imaginary part too large")
    res = QuadratureResult(2 * value.real, 2 * err, cells, tol, converged=2 * err <= tol)
    return res


def curve_integral_complex(
    model, matrix, tol=1e-8, settings=None, budget=None
):
    """Like curve_integral but returns the complex value (Gram entries)."""
    settings = settings or resolve_settings()
    dens = _density_callable(model, np.asarray(matrix, dtype=complex))
    value, err, cells = integrate_plane(
        dens, list(model.branch_points), tol=tol / 2, settings=settings, budget=budget
    )
    return 2 * value, 2 * err, cells


_mass_cache: dict = {}


def curve_mass(model, matrix, tol=1e-8, settings=None) -> QuadratureResult:
    key = (
        model.h_coeffs.tobytes(),
        np.asarray(matrix, dtype=complex).tobytes(),
        tol,
        settings,
    )
    if key not in _mass_cache:
        _mass_cache[key] = curve_integral(model, matrix, None, tol=tol, settings=settings)
    return _mass_cache[key]


def unit_volume_form(model: ComplexCurveModel, tol=1e-8, settings=None):
    """The invariant volume form dx/y ^ conj, normalized to unit mass
    (genus-1 models)."""
    if model.genus != 1:
        raise ValueError("unit_volume_form is the genus-1 constructor")
    raw = np.array([[1.0]], dtype=complex)
    mass = curve_mass(model, raw, tol=tol, settings=settings)
    return VolumeForm(model, raw / mass.value, normalized_mass=mass.value), mass


# ---------------------------------------------------------------------------
# I(lambda) and the functional equation
# ---------------------------------------------------------------------------


def legendre_model(lam) -> ComplexCurveModel:
    """y^2 = x(x-1)(x-lam)."""
    lam = complex(lam)
    return ComplexCurveModel([0.0, lam, -(1.0 + lam), 1.0])


def invariant_log_integral(lam, tol: float = 1e-8, settings=None) -> QuadratureResult:
    """Integral of log|x| against the unit-mass invariant volume form on
    y^2 = x(x-1)(x-lam)."""
    lam = complex(lam)
    if lam in (0.0 + 0j, 1.0 + 0j):
        raise ValueError("lambda must avoid {0, 1}")
    model = legendre_model(lam)
    M = np.array([[1.0]], dtype=complex)
    mass = curve_mass(model, M, tol=tol, settings=settings)
    logfac = LogFactor.from_roots([0.0])
    num = curve_integral(model, M, logfac, tol=tol, settings=settings)
    return num.ratio(mass)


def functional_equation_check(lam, tol: float = 1e-8, settings=None) -> dict:
    """|I(lam) - I(1/lam) - log|lam|| with combined error estimate."""
    lam = complex(lam)
    I1 = invariant_log_integral(lam, tol=tol, settings=settings)
    I2 = invariant_log_integral(1.0 / lam, tol=tol, settings=settings)
    resid = abs(I1.value - I2.value - math.log(abs(lam)))
    return {
        "lambda": lam,
        "I_lambda": I1,
        "I_inverse": I2,
        "residual": resid,
        "error": I1.error_estimate + I2.error_estimate,
        "converged": I1.converged and I2.converged,
    }


# ---------------------------------------------------------------------------
# Gram normalization
# ---------------------------------------------------------------------------


def gram_matrix(model: ComplexCurveModel, tol=1e-8, settings=None):
    g = model.genus
    G = np.zeros((g, g), dtype=complex)
    err = 0.0
    cells = 0
    for j in range(g):
        for k in range(j, g):
            E = np.zeros((g, g), dtype=complex)
            E[k, j] = 1.0  # density conj(x)^k x^j = x^j conj(x^k)
            v, e, n = curve_integral_complex(model, E, tol=tol, settings=settings)
            G[j, k] = v
            G[k, j] = np.conj(v)
            err += e
            cells += n
    return G, err, cells


def gram_normalize(model: ComplexCurveModel, tol=1e-8, settings=None) -> GramData:
    """Gram matrix of x^(j-1) dx/y by quadrature, with a Cholesky-gauge
    orthonormalizing transform (rows of A give zeta = A mu)."""
    G, err, cells = gram_matrix(model, tol=tol, settings=settings)
    Gh = (G + G.conj().T) / 2
    try:
        L = np.linalg.cholesky(Gh)
    except np.linalg.LinAlgError as exc:
        raise ArithmeticError("Gram matrix is not positive definite") from exc
    A = np.linalg.inv(L)
    resid = float(np.max(np.abs(A @ Gh @ A.conj().T - np.eye(model.genus))))
    return GramData(model, Gh, A, check_residual=resid)


def gram_from_forms(model, rows, tol=1e-8, settings=None, check_tol=1e-6):
    """GramData for an explicitly given (numerically orthonormal) basis.

    `rows` are monomial-basis coefficient rows; orthonormality is recomputed
    by quadrature and enforced within check_tol.
    """
    A = np.asarray(rows, dtype=complex)
    G, err, cells = gram_matrix(model, tol=tol, settings=settings)
    resid = float(np.max(np.abs(A @ G @ A.conj().T - np.eye(A.shape[0]))))
    if resid > check_tol:
        raise ArithmeticError(f"given basis is not orthonormal (residual {resid:.2e})")
    return GramData(model, G, A, check_residual=resid)


def gram_self_check(gram: GramData, tol=1e-8, settings=None) -> float:
    G, err, cells = gram_matrix(gram.model, tol=tol, settings=settings)
    A = gram.transform
    return float(np.max(np.abs(A @ G @ A.conj().T - np.eye(G.shape[0]))))


# ---------------------------------------------------------------------------
# regulator pairing for the basic cycle
# ---------------------------------------------------------------------------


def regulator_pairing(
    model: ComplexCurveModel,
    logfac: LogFactor,
    gram: GramData,
    pair=(0, 1),
    tol: float = 1e-8,
    settings=None,
) -> QuadratureResult:
    """Pairing of the real-regulator current of the basic two-term cycle with
    the orthonormal difference form zeta_i ^ conj - zeta_j ^ conj.

    Both terms of the cycle restrict the same translation-invariant form and
    carry the same function, so the pairing is twice one curve integral; the
    overall constant is the curve-integral gauge.
    """
    i, j = pair
    M = gram.difference_matrix(i, j)
    one = curve_integral(model, M, logfac, tol=tol, settings=settings)
    return 2 * one
