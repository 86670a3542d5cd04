"""Adaptive 2-D quadrature over the complex plane for curve integrands.

Integrands have at worst 1/|x - e| singularities at prescribed special points
and log factors there; they must decay at least like |x|^-3 (possibly times
log) at infinity.  The plane is split into

* disjoint singular squares centered at the special points, integrated in
  polar sectors with a geometrically graded radial mesh,
* the bounding box minus those squares, decomposed exactly into rectangles
  and integrated by adaptive tensor Gauss-Legendre cells,
* the exterior of the box, integrated in polar sectors with the radial
  inversion rho -> rho_box(theta)/v and a graded mesh toward v = 0.

Results are deterministic: cells are summed with compensated summation in a
fixed geometric order, independent of the refinement schedule.
"""
from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, replace
from functools import lru_cache

import numpy as np


@dataclass(frozen=True)
class QuadratureSettings:
    square_radius_factor: float = 0.1
    grading_ratio: float = 0.5
    polar_rings: int = 54
    polar_n_theta: int = 14
    polar_n_rho: int = 10
    rect_order_lo: int = 8
    rect_order_hi: int = 12
    exterior_rings: int = 64
    refine_bump_theta: int = 8
    refine_bump_rho: int = 6
    refine_bump_rings: int = 12
    max_cells: int = 60000

    def high_precision(self) -> "QuadratureSettings":
        return replace(
            self,
            polar_rings=self.polar_rings + 20,
            polar_n_theta=self.polar_n_theta + 6,
            polar_n_rho=self.polar_n_rho + 4,
            rect_order_lo=self.rect_order_lo + 4,
            rect_order_hi=self.rect_order_hi + 6,
            exterior_rings=self.exterior_rings + 20,
            max_cells=self.max_cells * 2,
        )


DEFAULT_SETTINGS = QuadratureSettings()


@lru_cache(maxsize=64)
def _gl(n: int):
    x, w = np.polynomial.legendre.leggauss(n)
    return x, w


def _fsum_complex(values):
    re = math.fsum(v.real for v in values)
    im = math.fsum(v.imag for v in values)
    return complex(re, im)


# ---------------------------------------------------------------------------
# geometry
# ---------------------------------------------------------------------------


def _layout(special_points):
    pts = []
    for z in special_points:
        z = complex(z)
        if not any(abs(z - w) < 1e-11 * max(1.0, abs(z)) for w in pts):
            pts.append(z)
    if pts:
        cx = (max(p.real for p in pts) + min(p.real for p in pts)) / 2
        cy = (max(p.imag for p in pts) + min(p.imag for p in pts)) / 2
        center = complex(cx, cy)
        spread = max((abs(p - center) for p in pts), default=1.0)
    else:
        center = 0.0 + 0.0j
        spread = 1.0
    half = max(2.0, 1.6 * spread) + 1.0
    return pts, center, half


def _square_radii(pts, half, factor):
    radii = []
    for i, p in enumerate(pts):
        gaps = [abs(p - q) for j, q in enumerate(pts) if j != i]
        gap = min(gaps) if gaps else 2.0 * half
        r = factor * gap
        r = min(r, 0.3 * half)
        r = max(r, 1e-8)
        radii.append(r)
    return radii


def _rectangles_minus_squares(center, half, squares):
    bx0, bx1 = center.real - half, center.real + half
    by0, by1 = center.imag - half, center.imag + half
    xs = {bx0, bx1}
    for (c, r) in squares:
        xs.add(c.real - r)
        xs.add(c.real + r)
    xs = sorted(xs)
    rects = []
    for xa, xb in zip(xs[:-1], xs[1:]):
        if xb - xa <= 0:
            continue
        blocked = sorted(
            (c.imag - r, c.imag + r)
            for (c, r) in squares
            if c.real - r <= xa + 1e-15 and c.real + r >= xb - 1e-15
        )
        y = by0
        for (lo, hi) in blocked:
            if lo > y:
                rects.append((xa, xb, y, lo))
            y = max(y, hi)
        if y < by1:
            rects.append((xa, xb, y, by1))
    return rects


# ---------------------------------------------------------------------------
# elementary patches
# ---------------------------------------------------------------------------


def _rect_gl(f, box, n):
    x0, x1, y0, y1 = box
    gx, wx = _gl(n)
    xm, xr = (x0 + x1) / 2, (x1 - x0) / 2
    ym, yr = (y0 + y1) / 2, (y1 - y0) / 2
    X = xm + xr * gx
    Y = ym + yr * gx
    Z = X[:, None] + 1j * Y[None, :]
    vals = np.asarray(f(Z), dtype=complex)
    return xr * yr * complex(np.sum(vals * (wx[:, None] * wx[None, :])))


def _polar_square(f, center, r, s: QuadratureSettings, rings, n_t, n_r):
    """Integral over the axis-aligned square of half-side r around center,
    in four corner-to-corner sectors with graded radial rings toward 0."""
    gt, wt = _gl(n_t)
    gr, wr = _gl(n_r)
    q = s.grading_ratio
    # never let nodes collapse onto the center in floating point
    scale = max(1.0, abs(center))
    floor = 4e-15 * scale
    if r > floor:
        rings = min(rings, max(8, int(math.ceil(math.log(r / floor) / math.log(1 / q)))))
    total_parts = []
    phi = (math.pi / 4) * gt  # sector-local angle
    wphi = wt * (math.pi / 4)
    cosphi = np.cos(phi)
    rho_max = r / cosphi  # (n_t,)
    for k in range(4):
        theta = phi + k * (math.pi / 2)
        direction = np.exp(1j * theta)
        hi = 1.0
        for j in range(rings):
            lo = hi * q
            wm, wrad = (hi + lo) / 2, (hi - lo) / 2
            W = wm + wrad * gr  # (n_r,)
            rho = rho_max[:, None] * W[None, :]
            Z = center + rho * direction[:, None]
            vals = np.asarray(f(Z), dtype=complex)
            integ = vals * rho * rho_max[:, None]
            part = complex(np.sum(integ * (wphi[:, None] * (wr * wrad)[None, :])))
            total_parts.append(part)
            hi = lo
    # center crumb bound: geometric continuation of the innermost rings
    crumb = 0.0
    for k in range(4):
        crumb += abs(total_parts[(k + 1) * rings - 1])
    crumb = crumb * q / (1 - q)
    return _fsum_complex(total_parts), crumb, 4 * rings


def _exterior(f, center, half, s: QuadratureSettings, rings, n_t, n_r):
    """Integral over the plane outside the box, via rho = rho_box(phi)/v."""
    gt, wt = _gl(n_t)
    gr, wr = _gl(n_r)
    q = s.grading_ratio
    parts = []
    phi = (math.pi / 4) * gt
    wphi = wt * (math.pi / 4)
    rho_box = half / np.cos(phi)
    for k in range(4):
        theta = phi + k * (math.pi / 2)
        direction = np.exp(1j * theta)
        hi = 1.0
        for j in range(rings):
            lo = hi * q
            vm, vrad = (hi + lo) / 2, (hi - lo) / 2
            V = vm + vrad * gr
            rho = rho_box[:, None] / V[None, :]
            Z = center + rho * direction[:, None]
            vals = np.asarray(f(Z), dtype=complex)
            integ = vals * (rho_box[:, None] ** 2) / (V[None, :] ** 3)
            part = complex(np.sum(integ * (wphi[:, None] * (wr * vrad)[None, :])))
            parts.append(part)
            hi = lo
    tail = 0.0
    for k in range(4):
        tail += abs(parts[(k + 1) * rings - 1])
    tail = tail * q / (1 - q)
    return _fsum_complex(parts), tail, 4 * rings


# ---------------------------------------------------------------------------
# adaptive rectangles
# ---------------------------------------------------------------------------


def _adaptive_rectangles(f, rects, tol, budget, s: QuadratureSettings):
    cells = []
    heap = []
    counter = 0
    used = 0

    def make(box):
        nonlocal counter, used
        hi = _rect_gl(f, box, s.rect_order_hi)
        lo = _rect_gl(f, box, s.rect_order_lo)
        err = abs(hi - lo)
        counter += 1
        used += 1
        return [err, counter, box, hi]

    for box in rects:
        x0, x1, y0, y1 = box
        # pre-split to tame aspect ratio
        stack = [box]
        while stack:
            bx0, bx1, by0, by1 = stack.pop()
            w, h = bx1 - bx0, by1 - by0
            if w > 2.5 * h and w > 1e-12:
                xm = (bx0 + bx1) / 2
                stack.append((bx0, xm, by0, by1))
                stack.append((xm, bx1, by0, by1))
            elif h > 2.5 * w and h > 1e-12:
                ym = (by0 + by1) / 2
                stack.append((bx0, bx1, by0, ym))
                stack.append((bx0, bx1, ym, by1))
            else:
                heapq.heappush(heap, _neg(make((bx0, bx1, by0, by1))))

    def total_err():
        return math.fsum(-item[0] for item in heap)

    while heap and total_err() > tol and used < budget:
        item = heapq.heappop(heap)
        err, _, box, _ = -item[0], item[1], item[2], item[3]
        if err <= tol / max(1, len(heap) + 1) * 0.01:
            heapq.heappush(heap, item)
            break
        x0, x1, y0, y1 = box
        if x1 - x0 >= y1 - y0:
            xm = (x0 + x1) / 2
            children = [(x0, xm, y0, y1), (xm, x1, y0, y1)]
        else:
            ym = (y0 + y1) / 2
            children = [(x0, x1, y0, ym), (x0, x1, ym, y1)]
        for ch in children:
            heapq.heappush(heap, _neg(make(ch)))

    items = [(-it[0], it[2], it[3]) for it in heap]
    items.sort(key=lambda e: e[1])
    value = _fsum_complex([e[2] for e in items])
    err = math.fsum(e[0] for e in items)
    return value, err, used


def _neg(item):
    item[0] = -item[0]
    return item


# ---------------------------------------------------------------------------
# driver
# ---------------------------------------------------------------------------


def integrate_plane(
    f,
    special_points,
    tol: float = 1e-8,
    settings: QuadratureSettings = DEFAULT_SETTINGS,
    budget: int | None = None,
):
    """Integrate f over the complex plane (with respect to Lebesgue measure
    dA in the x-chart).  Returns (value, error_estimate, cells_used).

    f must accept complex ndarrays.  special_points lists the singular
    locations (1/r- or log-type); f is never evaluated exactly there.
    """
    budget = budget if budget is not None else settings.max_cells
    pts, center, half = _layout(special_points)
    radii = _square_radii(pts, half, settings.square_radius_factor)
    squares = list(zip(pts, radii))

    parts = []
    errs = []
    cells = 0

    for (c, r) in squares:
        v1, crumb1, n1 = _polar_square(
            f, c, r, settings, settings.polar_rings, settings.polar_n_theta, settings.polar_n_rho
        )
        v2, crumb2, n2 = _polar_square(
            f,
            c,
            r,
            settings,
            settings.polar_rings + settings.refine_bump_rings,
            settings.polar_n_theta + settings.refine_bump_theta,
            settings.polar_n_rho + settings.refine_bump_rho,
        )
        parts.append(v2)
        errs.append(abs(v2 - v1) + crumb2)
        cells += n1 + n2

    e1, t1, n1 = _exterior(
        f, center, half, settings, settings.exterior_rings, settings.polar_n_theta,
        settings.polar_n_rho,
    )
    e2, t2, n2 = _exterior(
        f,
        center,
        half,
        settings,
        settings.exterior_rings + settings.refine_bump_rings,
        settings.polar_n_theta + settings.refine_bump_theta,
        settings.polar_n_rho + settings.refine_bump_rho,
    )
    parts.append(e2)
    errs.append(abs(e2 - e1) + t2)
    cells += n1 + n2

    fixed_err = math.fsum(errs)
    rect_tol = max(tol - fixed_err, tol * 0.1)
    rects = _rectangles_minus_squares(center, half, squares)
    rv, rerr, rcells = _adaptive_rectangles(f, rects, rect_tol, budget - cells, settings)
    parts.append(rv)
    errs.append(rerr)
    cells += rcells

    value = _fsum_complex(parts)
    err = math.fsum(errs)
    if not (np.isfinite(value.real) and np.isfinite(value.imag) and np.isfinite(err)):
        raise ArithmeticError("non-finite quadrature value; integrand misbehaved")
    return value, err, cells
