"""Hyperelliptic curve models y^2 = h(x) over Q, points, and coordinate moves.

A curve is stored by the squarefree polynomial h.  Odd-degree models have a
single (ramified) place at infinity; even-degree models have two, tagged by
the sign of y/x^(g+1) relative to the canonical square root of the leading
coefficient.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .poly import Polynomial, sqrt_fraction


class CurveError(ValueError):
    pass


@dataclass(frozen=True)
class HyperellipticCurve:
    h: Polynomial

    def __post_init__(self):
        if self.h.degree < 3:
            raise CurveError("need deg(h) >= 3 for genus >= 1")
        if not self.h.is_squarefree():
            raise CurveError("h must be squarefree")

    @property
    def genus(self) -> int:
        return (self.h.degree + 1) // 2 - 1

    @property
    def is_odd_model(self) -> bool:
        return self.h.degree % 2 == 1

    @property
    def lc(self) -> Fraction:
        return self.h.lc

    def lc_sqrt(self) -> Fraction | None:
        """Rational square root of the leading coefficient, if any."""
        return sqrt_fraction(self.h.lc)

    def infinite_places(self) -> tuple["CurvePoint", ...]:
        if self.is_odd_model:
            return (CurvePoint.infinity(),)
        return (CurvePoint.infinity(1), CurvePoint.infinity(-1))

    def rational_branch_xs(self) -> list[Fraction]:
        return sorted(r for r, _ in self.h.rational_roots())

    def branch_points(self) -> list["CurvePoint"]:
        """Branch points with rational coordinates (plus infinity when odd)."""
        pts = [CurvePoint.branch(r) for r in self.rational_branch_xs()]
        if self.is_odd_model:
            pts.append(CurvePoint.infinity())
        return pts

    def contains(self, P: "CurvePoint") -> bool:
        if P.kind == "affine":
            return self.h.eval(P.x) == P.y * P.y and P.y != 0
        if P.kind == "branch":
            return self.h.eval(P.x) == 0
        if self.is_odd_model:
            return P.sheet is None
        return P.sheet in (1, -1)

    def point(self, x, y) -> "CurvePoint":
        x, y = Fraction(x), Fraction(y)
        if y == 0:
            if self.h.eval(x) != 0:
                raise CurveError(f"({x}, 0) is not on the curve")
            return CurvePoint.branch(x)
        if self.h.eval(x) != y * y:
            raise CurveError(f"({x}, {y}) is not on the curve")
        return CurvePoint.affine(x, y)

    def involution(self, P: "CurvePoint") -> "CurvePoint":
        """The sheet swap y -> -y."""
        if P.kind == "affine":
            return CurvePoint.affine(P.x, -P.y)
        if P.kind == "branch":
            return P
        if self.is_odd_model:
            return P
        return CurvePoint.infinity(-P.sheet)

    def __repr__(self):
        return f"HyperellipticCurve(genus {self.genus}, h={self.h})"


@dataclass(frozen=True)
class CurvePoint:
    """Point on a hyperelliptic curve: affine (y != 0), branch (y = 0), or at
    infinity.  On even models `sheet` is +1/-1; on odd models it is None."""

    kind: str
    x: Fraction | None = None
    y: Fraction | None = None
    sheet: int | None = None

    @classmethod
    def affine(cls, x, y):
        x, y = Fraction(x), Fraction(y)
        if y == 0:
            raise CurveError("affine points have y != 0; use branch()")
        return cls("affine", x, y)

    @classmethod
    def branch(cls, x):
        return cls("branch", Fraction(x), Fraction(0))

    @classmethod
    def infinity(cls, sheet: int | None = None):
        return cls("infinity", None, None, sheet)

    @property
    def degree(self) -> int:
        return 1

    def is_infinite(self) -> bool:
        return self.kind == "infinity"

    def __repr__(self):
        if self.kind == "affine":
            return f"({self.x}, {self.y})"
        if self.kind == "branch":
            return f"branch({self.x})"
        return "oo" if self.sheet is None else f"oo{'+' if self.sheet > 0 else '-'}"


@dataclass(frozen=True)
class MobiusMap:
    """x -> (a x + b) / (c x + d) with rational entries, ad - bc != 0."""

    a: Fraction
    b: Fraction
    c: Fraction
    d: Fraction

    def __post_init__(self):
        for f in ("a", "b", "c", "d"):
            object.__setattr__(self, f, Fraction(getattr(self, f)))
        if self.det == 0:
            raise CurveError("singular fractional-linear map")

    @property
    def det(self) -> Fraction:
        return self.a * self.d - self.b * self.c

    @classmethod
    def identity(cls):
        return cls(1, 0, 0, 1)

    def apply(self, x: Fraction | None) -> Fraction | None:
        """Apply to a rational x; None stands for the point at infinity."""
        if x is None:
            return None if self.c == 0 else self.a / self.c
        den = self.c * x + self.d
        if den == 0:
            return None
        return (self.a * x + self.b) / den

    def inverse(self) -> "MobiusMap":
        return MobiusMap(self.d, -self.b, -self.c, self.a)

    def compose(self, other: "MobiusMap") -> "MobiusMap":
        """self after other."""
        return MobiusMap(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )


class CurveTransport:
    """Isomorphism between y^2 = h(x) models induced by a fractional-linear
    change of x, with y rescaled so the target equation is again polynomial.

    With m = (a x + b)/(c x + d) and D = det(m), the maps are
        x' = m(x),   y' = y * D^(g+1) / (c x + d)^(g+1),
    and h'(X) = (-c X + a)^(2g+2) * h((d X - b)/(-c X + a)).
    """

    def __init__(self, curve: HyperellipticCurve, m: MobiusMap):
        self.source = curve
        self.m = m
        g = curve.genus
        self._g = g
        n = 2 * g + 2
        # inverse map coefficients (p x + q)/(r x + s)
        p, q, r, s = m.d, -m.b, -m.c, m.a
        num = Polynomial((q, p))
        den = Polynomial((s, r))
        h2 = Polynomial.zero()
        for k, ck in enumerate(curve.h.coeffs):
            if ck != 0:
                h2 = h2 + ck * num**k * den ** (n - k)
        if not h2.is_squarefree():
            raise CurveError("transported model is not squarefree")
        self.target = HyperellipticCurve(h2)

    # -- point maps -----------------------------------------------------
    # Forward: X = m(x), Y = y * det^(g+1)/(c x + d)^(g+1).
    # Its exact inverse: x = (d X - b)/(-c X + a), y = Y / (-c X + a)^(g+1).
    # Both are "x2 = (A x + B)/(C x + D), y2 = y K/(C x + D)^(g+1)" maps.
    def point_forward(self, P: CurvePoint) -> CurvePoint:
        m = self.m
        return self._map_point(P, self.source, self.target, m, m.det ** (self._g + 1))

    def point_backward(self, P: CurvePoint) -> CurvePoint:
        return self._map_point(
            P, self.target, self.source, self.m.inverse(), Fraction(1)
        )

    def _map_point(self, P, src, dst, m, K):
        gp1 = self._g + 1
        if P.kind in ("affine", "branch"):
            den = m.c * P.x + m.d
            if den != 0:
                x2 = (m.a * P.x + m.b) / den
                y2 = P.y * K / den**gp1
                return dst.point(x2, y2)
            # x maps to infinity on the target
            if P.kind == "branch":
                if not dst.is_odd_model:
                    raise CurveError("branch point at infinity of an even model")
                return CurvePoint.infinity()
            s2 = dst.lc_sqrt()
            if s2 is None or s2 == 0:
                raise CurveError("target infinite places are not rational")
            val = P.y * K / (m.a * P.x + m.b) ** gp1
            sheet = val / s2
            if sheet not in (1, -1):
                raise CurveError("inconsistent sheet value at infinity")
            return CurvePoint.infinity(int(sheet))
        # P at infinity of the source
        if src.is_odd_model:
            if m.c == 0:
                return CurvePoint.infinity()
            return dst.point(m.a / m.c, 0)
        s1 = src.lc_sqrt()
        if s1 is None:
            raise CurveError("cannot transport a non-rational infinite place")
        lead = P.sheet * s1
        if m.c == 0:
            # y2/x2^(g+1) -> lead * K / a^(g+1)
            val = lead * K / m.a**gp1
            s2 = dst.lc_sqrt()
            if s2 is None:
                raise CurveError("target infinite places are not rational")
            sheet = val / s2
            if sheet not in (1, -1):
                raise CurveError("inconsistent sheet value at infinity")
            return CurvePoint.infinity(int(sheet))
        x2 = m.a / m.c
        y2 = lead * K / m.c**gp1
        return dst.point(x2, y2)

    # -- function maps ----------------------------------------------------
    def function_forward(self, F):
        from .function_field import FunctionFieldElement

        m = self.m
        p, q, r, s = m.d, -m.b, -m.c, m.a  # x = (pX+q)/(rX+s)
        num = Polynomial((q, p))
        den = Polynomial((s, r))
        gp1 = self._g + 1

        def comp(poly):
            # poly((pX+q)/(rX+s)) * (rX+s)^deg(poly), plus that power
            if poly.is_zero():
                return Polynomial.zero(), 0
            dd = poly.degree
            acc = Polynomial.zero()
            for k, ck in enumerate(poly.coeffs):
                if ck != 0:
                    acc = acc + ck * num**k * den ** (dd - k)
            return acc, dd

        a2, da = comp(F.a)
        b2, db = comp(F.b)
        d2, ddeg = comp(F.d)
        # y = Y / (rX+s)^(g+1)
        # F = (a(x) + b(x) y)/d(x)
        #   = (a2/den^da + (b2/den^db) Y/den^(g+1)) / (d2/den^dd)
        M = max(da, db + gp1)
        A = a2 * den ** (M - da)
        B = b2 * den ** (M - db - gp1)
        D = d2 * den ** (M - ddeg)
        return FunctionFieldElement(self.target, A, B, D)

    def function_backward(self, F):
        """Pull a function on the target model back along the transport."""
        from .function_field import FunctionFieldElement

        m = self.m
        num = Polynomial((m.b, m.a))
        den = Polynomial((m.d, m.c))
        gp1 = self._g + 1
        det = m.det

        def comp(poly):
            if poly.is_zero():
                return Polynomial.zero(), 0
            dd = poly.degree
            acc = Polynomial.zero()
            for k, ck in enumerate(poly.coeffs):
                if ck != 0:
                    acc = acc + ck * num**k * den ** (dd - k)
            return acc, dd

        a2, da = comp(F.a)
        b2, db = comp(F.b)
        d2, ddeg = comp(F.d)
        # Y = y * det^(g+1) / (c x + d)^(g+1)
        M = max(da, db + gp1)
        A = a2 * den ** (M - da)
        B = b2 * (det**gp1) * den ** (M - db - gp1)
        D = d2 * den ** (M - ddeg)
        return FunctionFieldElement(self.source, A, B, D)


def mobius_transport(curve: HyperellipticCurve, m: MobiusMap) -> CurveTransport:
    """Move a curve model by a fractional-linear change of coordinate."""
    return CurveTransport(curve, m)
