"""Elliptic periods by AGM, and a Monte Carlo oracle via uniformization.

For y^2 = (x - e1)(x - e2)(x - e3) the period lattice of dx/y is spanned by

    P1 = 2*pi / agm(sqrt(e1-e3), sqrt(e1-e2)),
    P2 = 2*pi*i / agm(sqrt(e1-e3), sqrt(e2-e3)),

with e1 > e2 > e3 for real branch points (general complex values use the
"closest choice" square-root branch in the AGM).  The lattice covolume
|Im(conj(P1) P2)| equals the total mass of (i/2) dx/y ^ conj(dx/y).

The Monte Carlo oracle samples the flat measure directly: for m = 1/lambda in
(0,1), x = sn(u, m)^2 maps the u-cell spanned by 2K, 2iK' one-to-one onto the
curve y^2 ~ x(x-1)(x-lambda), and du is proportional to dx/y.  sn is computed
from Jacobi theta series, vectorized with numpy.
"""
from __future__ import annotations

import cmath
import math

import numpy as np
from scipy.special import ellipk


def agm(a: complex, b: complex, tol: float = 1e-16) -> complex:
    """Arithmetic-geometric mean with the standard optimal branch choice."""
    a, b = complex(a), complex(b)
    for _ in range(200):
        if abs(a - b) <= tol * max(abs(a), 1e-300):
            break
        am = (a + b) / 2
        gm = cmath.sqrt(a * b)
        if abs(am - gm) > abs(am + gm):
            gm = -gm
        a, b = am, gm
    return (a + b) / 2


def elliptic_periods(lam):
    """Period pair and covolume of dx/y on y^2 = x(x-1)(x-lam)."""
    lam = complex(lam)
    if lam == 0 or lam == 1:
        raise ValueError("degenerate curve: lambda in {0, 1}")
    roots = [0.0 + 0.0j, 1.0 + 0.0j, lam]
    if abs(lam.imag) < 1e-14:
        roots = sorted(roots, key=lambda z: z.real, reverse=True)
    else:
        roots = sorted(roots, key=lambda z: (z.real, z.imag), reverse=True)
    e1, e2, e3 = roots
    p1 = 2 * math.pi / agm(cmath.sqrt(e1 - e3), cmath.sqrt(e1 - e2))
    p2 = 2j * math.pi / agm(cmath.sqrt(e1 - e3), cmath.sqrt(e2 - e3))
    covol = abs((p1.conjugate() * p2).imag)
    return p1, p2, covol


# ---------------------------------------------------------------------------
# Jacobi sn from theta series (vectorized, complex arguments)
# ---------------------------------------------------------------------------


def _theta_terms(q: float):
    n = 0
    terms = []
    while True:
        t = q ** ((n + 0.5) ** 2)
        terms.append(t)
        if t < 1e-22 and n > 2:
            break
        n += 1
        if n > 60:
            break
    return len(terms)


def jacobi_sn(u, m: float):
    """sn(u, m) for real 0 < m < 1 and complex u (ndarray-capable)."""
    if not 0 < m < 1:
        raise ValueError("parameter m must lie in (0,1)")
    K = float(ellipk(m))
    Kp = float(ellipk(1 - m))
    q = math.exp(-math.pi * Kp / K)
    v = (math.pi / (2 * K)) * np.asarray(u, dtype=complex)
    nmax = max(6, _theta_terms(q))
    # theta1(v) = 2 sum (-1)^n q^((n+1/2)^2) sin((2n+1)v)
    th1 = np.zeros_like(v)
    th4 = np.ones_like(v)
    th2_0 = 0.0
    th3_0 = 1.0
    for n in range(nmax):
        qn = q ** ((n + 0.5) ** 2)
        th1 = th1 + 2 * (-1) ** n * qn * np.sin((2 * n + 1) * v)
        th2_0 += 2 * qn
    for n in range(1, nmax + 1):
        qn2 = q ** (n * n)
        th4 = th4 + 2 * (-1) ** n * qn2 * np.cos(2 * n * v)
        th3_0 += 2 * qn2
    return (th3_0 / th2_0) * (th1 / th4)


def sample_log_coordinate(lam: float, n: int, seed: int):
    """Monte Carlo estimate of the mean of log|x| against the unit-mass flat
    form on y^2 = x(x-1)(x-lam), lam real > 1.  Returns (mean, stderr)."""
    if not lam > 1:
        raise ValueError("oracle is set up for real lambda > 1")
    m = 1.0 / lam
    K = float(ellipk(m))
    Kp = float(ellipk(1 - m))
    rng = np.random.default_rng(seed)
    s = rng.random(n)
    t = rng.random(n)
    u = 2 * K * s + 2j * Kp * t
    x = jacobi_sn(u, m) ** 2
    vals = np.log(np.abs(x))
    good = np.isfinite(vals)
    vals = vals[good]
    mean = float(np.mean(vals))
    stderr = float(np.std(vals, ddof=1) / math.sqrt(len(vals)))
    return mean, stderr
