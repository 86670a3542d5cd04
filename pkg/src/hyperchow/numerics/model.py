"""Numeric curve models, volume-form descriptors, and quadrature results."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..algebra.curve import HyperellipticCurve


@dataclass
class QuadratureResult:
    value: float
    error_estimate: float
    cells_used: int
    tolerance_requested: float
    converged: bool = True

    def __add__(self, other):
        if isinstance(other, (int, float)):
            return QuadratureResult(
                self.value + other,
                self.error_estimate,
                self.cells_used,
                self.tolerance_requested,
                self.converged,
            )
        return QuadratureResult(
            self.value + other.value,
            self.error_estimate + other.error_estimate,
            self.cells_used + other.cells_used,
            min(self.tolerance_requested, other.tolerance_requested),
            self.converged and other.converged,
        )

    __radd__ = __add__

    def __sub__(self, other):
        return self + (other * -1 if isinstance(other, QuadratureResult) else -other)

    def __mul__(self, c: float):
        return QuadratureResult(
            self.value * c,
            self.error_estimate * abs(c),
            self.cells_used,
            self.tolerance_requested,
            self.converged,
        )

    __rmul__ = __mul__

    def ratio(self, other: "QuadratureResult") -> "QuadratureResult":
        v = self.value / other.value
        err = self.error_estimate / abs(other.value) + abs(v) * other.error_estimate / abs(
            other.value
        )
        return QuadratureResult(
            v,
            err,
            self.cells_used + other.cells_used,
            min(self.tolerance_requested, other.tolerance_requested),
            self.converged and other.converged,
        )

    def to_jsonable(self):
        return {
            "value": self.value,
            "error": self.error_estimate,
            "cells": self.cells_used,
            "tol": self.tolerance_requested,
            "converged": self.converged,
        }


class ComplexCurveModel:
    """Floating-point model of y^2 = h(x) for numerical curve integrals.

    Integrands used here are even under the sheet swap, so the model mainly
    carries h, its roots, and a global sheet tag that lets the convention be
    flipped without touching any result.
    """

    def __init__(self, h_coeffs, sheet_sign: int = 1):
        c = np.asarray(h_coeffs, dtype=complex)
        if c.ndim != 1 or c.shape[0] < 4:
            raise ValueError("need deg(h) >= 3")
        if c[-1] == 0:
            raise ValueError("leading coefficient must not vanish")
        self.h_coeffs = c  # ascending order
        self.degree = len(c) - 1
        self.genus = (self.degree + 1) // 2 - 1
        self.sheet_sign = 1 if sheet_sign >= 0 else -1
        self.branch_points = _refined_roots(c)

    @classmethod
    def from_exact(cls, curve: HyperellipticCurve, sheet_sign: int = 1):
        return cls([float(x) for x in curve.h.coeffs], sheet_sign)

    @classmethod
    def from_roots(cls, roots, lead=1.0, sheet_sign: int = 1):
        p = np.poly1d(np.asarray(roots, dtype=complex), r=True) * lead
        return cls(list(p.coefficients[::-1]), sheet_sign)

    def h_at(self, x):
        return np.polyval(self.h_coeffs[::-1], x)

    def y_at(self, x):
        """One branch of sqrt(h); flipped globally by the sheet tag."""
        return self.sheet_sign * np.sqrt(self.h_at(x))

    def flipped(self) -> "ComplexCurveModel":
        return ComplexCurveModel(self.h_coeffs, -self.sheet_sign)

    def residual_on_sheet(self, xs) -> float:
        y = self.y_at(xs)
        return float(np.max(np.abs(y * y - self.h_at(xs))))

    def __repr__(self):
        return f"ComplexCurveModel(genus {self.genus}, deg {self.degree})"


def _refined_roots(c_ascending):
    """np.roots plus a few complex Newton steps for clean singular centers."""
    c = np.asarray(c_ascending, dtype=complex)
    p = c[::-1]
    roots = np.roots(p)
    dp = np.polyder(p)
    for _ in range(3):
        val = np.polyval(p, roots)
        der = np.polyval(dp, roots)
        step = np.where(der != 0, val / der, 0.0)
        roots = roots - step
    return np.sort_complex(roots)


@dataclass
class VolumeForm:
    """(i/2)-gauge 2-form on a curve: density per sheet at x is
    sum_jk M[j,k] * conj(x)^j * x^k / |h(x)| with M conjugate-symmetric."""

    model: ComplexCurveModel
    matrix: np.ndarray
    normalized_mass: float | None = None

    def __post_init__(self):
        M = np.asarray(self.matrix, dtype=complex)
        if M.ndim != 2 or M.shape[0] != M.shape[1]:
            raise ValueError("coefficient matrix must be square")
        if np.max(np.abs(M - M.conj().T)) > 1e-12 * max(1.0, np.max(np.abs(M))):
            raise ValueError("coefficient matrix must be conjugate-symmetric")
        self.matrix = M

    @property
    def size(self):
        return self.matrix.shape[0]


@dataclass
class GramData:
    """Gram matrix of the monomial differentials x^(j-1) dx/y and a transform
    whose rows give an orthonormal basis zeta = A * mu."""

    model: ComplexCurveModel
    gram: np.ndarray
    transform: np.ndarray
    check_residual: float = 0.0

    def basis_form(self, i: int) -> np.ndarray:
        """Coefficients of zeta_i in the monomial basis."""
        return self.transform[i]

    def difference_matrix(self, i: int = 0, j: int = 1) -> np.ndarray:
        """Matrix of (i/2)(zeta_i ^ conj zeta_i - zeta_j ^ conj zeta_j)."""
        A = self.transform
        return np.outer(A[i].conj(), A[i]) - np.outer(A[j].conj(), A[j])
