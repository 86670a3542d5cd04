"""Genus-3 curve as an unramified double cover of a genus-2 curve.

Starting from the genus-2 curve G branched over {0, 1, inf, lam, a1, a2},
take the degree-2 self-map h of the line fixing 0, 1, inf with critical
values a1, a2 (same solver as the bielliptic construction).  The curve C
branched over h^(-1)({0, 1, inf, lam}) - eight points - has genus 3 and maps
to G by (x, y) -> (h(x), y_G); the critical-point factors (x - p_i)^2 absorb
the would-be ramification, so the cover is unramified.  The side map to the
elliptic curve E_lam is (x, y) -> (h(x), Y_E).
"""
from __future__ import annotations

import numpy as np

from .bielliptic import ConstructionError, solve_degree2_cover, _critical_points, _h_value
from .integrals import curve_mass, resolve_settings
from .model import ComplexCurveModel


def build_genus3_cover(lam, a1, a2, tol: float = 1e-8, settings=None, n_samples: int = 20) -> dict:
    """Build the unramified double cover of G = {y^2 = x(x-1)(x-lam)(x-a1)(x-a2)}
    and verify the diagram numerically.  Returns a record with the models,
    map data, and residuals."""
    settings = settings or resolve_settings()
    lamc, a1c, a2c = complex(lam), complex(a1), complex(a2)
    vals = [0.0 + 0j, 1.0 + 0j, lamc, a1c, a2c]
    if min(abs(p - q) for i, p in enumerate(vals) for q in vals[i + 1:]) < 1e-10:
        raise ConstructionError("branch values must be distinct")
    G_model = ComplexCurveModel.from_roots(vals)

    a, b, f = solve_degree2_cover(a1c, a2c)
    e2, e3, e4 = -b / a, -f / a, -f
    # h^(-1)(lam): roots of a x^2 + (b - lam) x - lam f
    disc = np.sqrt(complex((b - lamc) ** 2 + 4 * a * lamc * f))
    s1 = (-(b - lamc) + disc) / (2 * a)
    s2 = (-(b - lamc) - disc) / (2 * a)
    branch_C = [0.0 + 0j, 1.0 + 0j, e2, e3, s1, s2, e4]
    if min(abs(p - q) for i, p in enumerate(branch_C) for q in branch_C[i + 1:]) < 1e-9:
        raise ConstructionError("upstairs branch points collide")
    C_model = ComplexCurveModel.from_roots(branch_C)
    genus_C = C_model.genus

    p1, p2 = _critical_points(a, b, f)
    residuals = {}
    rng = np.random.default_rng(20260810)
    xs = rng.standard_normal(n_samples) + 1j * rng.standard_normal(n_samples)
    hx = _h_value(a, b, f, xs)
    hC = C_model.h_coeffs[::-1]
    hG = G_model.h_coeffs[::-1]

    # k_E: Y^2 identity  X(X-1)(X-lam) = a^3 h_C(x) / (x - e4)^4
    lhs = a**3 * np.polyval(hC, xs) / (xs - e4) ** 4
    rhs = hx * (hx - 1) * (hx - lamc)
    residuals["elliptic_leg"] = float(np.max(np.abs(lhs - rhs) / np.maximum(1.0, np.abs(rhs))))

    # pi: y_G^2 identity  h_G(h(x)) = a^5 h_C(x) (x-p1)^2 (x-p2)^2 / (x-e4)^6
    lhs = a**5 * np.polyval(hC, xs) * (xs - p1) ** 2 * (xs - p2) ** 2 / (xs - e4) ** 6
    rhs = np.polyval(hG, hx)
    residuals["cover_leg"] = float(np.max(np.abs(lhs - rhs) / np.maximum(1.0, np.abs(rhs))))

    # unramified: every generic downstairs point has two distinct preimages
    fibre_gap = []
    for Xg in (0.37 + 0.21j, -0.8 + 0.6j, 2.7 - 1.1j):
        roots = np.roots([a, b - Xg, -Xg * f])
        fibre_gap.append(abs(roots[0] - roots[1]))
        residuals.setdefault("fiber_residual", 0.0)
        residuals["fiber_residual"] = max(
            residuals["fiber_residual"],
            float(np.max(np.abs(_h_value(a, b, f, roots) - Xg))),
        )
    residuals["min_fiber_gap"] = float(min(fibre_gap))

    # pullback mass: pi^*(unit-mass form built from dX/Y_G) doubles the mass
    MG = np.zeros((2, 2), dtype=complex)
    MG[0, 0] = 1.0
    mass_G = curve_mass(G_model, MG, tol=tol, settings=settings)
    # pi^*(dX/Y_G) = a^(-3/2) (x - e4) dx/y  (degree bookkeeping on the cover)
    c = np.array([-e4, 1.0, 0.0], dtype=complex)
    MC = np.outer(c.conj(), c) / abs(a) ** 3
    mass_C = curve_mass(C_model, MC, tol=tol, settings=settings)
    residuals["pullback_mass"] = abs(mass_C.value - 2 * mass_G.value) / abs(2 * mass_G.value)

    return {
        "G": G_model,
        "C": C_model,
        "E_lambda": lamc,
        "genus_C": genus_C,
        "cover_degree": 2,
        "h_coefficients": (a, b, f),
        "critical_points": (p1, p2),
        "branch_C": branch_C,
        "mass_G": mass_G,
        "mass_C": mass_C,
        "residuals": residuals,
    }
