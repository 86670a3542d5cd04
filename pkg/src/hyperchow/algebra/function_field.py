"""Function-field elements (a + b*y)/d on y^2 = h(x), with exact local data.

The local analysis at a point runs through ``local_leading``, which returns
the valuation together with the leading coefficient of the expansion in a
canonical uniformizer:

* affine non-branch point: t = x - x0, with y expanded as a rational series;
* branch point: t = y, where x - x0 = y^2/h'(x0) * (1 + O(y^2));
* odd-model infinity: t = x^g / y, so x ~ t^-2/lc and y ~ t^-(2g+1)/lc^g;
* even-model infinity on sheet s: t = 1/x, y ~ s*sqrt(lc)*t^-(g+1).

Valuations, divisors, evaluation and tame symbols all reduce to this.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .curve import CurvePoint, HyperellipticCurve
from .divisors import ConjugatePair, Divisor, FiberTerm, InfinityPair
from .poly import Polynomial, sqrt_fraction
from .quadext import QuadExt
from .series import TruncatedSeries


class ZeroFunctionError(ValueError):
    """Raised on valuation/divisor of the zero function."""


class Infinity:
    """Marker for a pole value."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "infinity"


INFINITY = Infinity()


@dataclass(frozen=True)
class FunctionFieldElement:
    """(a(x) + b(x)*y) / d(x) modulo y^2 - h(x), in reduced form."""

    curve: HyperellipticCurve
    a: Polynomial
    b: Polynomial
    d: Polynomial

    def __post_init__(self):
        if self.d.is_zero():
            raise ZeroDivisionError("zero denominator in function-field element")
        a, b, d = self.a, self.b, self.d
        g = a.gcd(b.gcd(d)) if not (a.is_zero() and b.is_zero()) else d.monic()
        if g.degree > 0:
            a, b, d = a.exact_div(g), b.exact_div(g), d.exact_div(g)
        # canonical scale: monic denominator
        if d.lc != 1:
            inv = 1 / d.lc
            a, b, d = a * inv, b * inv, d * inv
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "d", d)

    # -- constructors ---------------------------------------------------
    @classmethod
    def from_x_rational(cls, curve, num, den=Polynomial((1,))):
        return cls(curve, num, Polynomial.zero(), den)

    @classmethod
    def coordinate(cls, curve):
        return cls(curve, Polynomial.x(), Polynomial.zero(), Polynomial.one())

    @classmethod
    def y_function(cls, curve):
        return cls(curve, Polynomial.zero(), Polynomial.one(), Polynomial.one())

    @classmethod
    def constant(cls, curve, c):
        return cls(curve, Polynomial.constant(c), Polynomial.zero(), Polynomial.one())

    # -- structure ------------------------------------------------------
    def is_zero(self) -> bool:
        return self.a.is_zero() and self.b.is_zero()

    def is_constant(self) -> bool:
        return self.b.is_zero() and self.a.degree <= 0 and self.d.degree <= 0

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("not a constant function")
        if self.a.is_zero():
            return Fraction(0)
        return self.a.coeffs[0] / self.d.coeffs[0]

    def is_x_rational(self) -> bool:
        return self.b.is_zero()

    def norm_numerator(self) -> Polynomial:
        """a^2 - b^2 h, the norm of the numerator under y -> -y."""
        return self.a * self.a - self.b * self.b * self.curve.h

    def involution(self) -> "FunctionFieldElement":
        """Compose with the hyperelliptic sheet swap y -> -y."""
        return FunctionFieldElement(self.curve, self.a, -self.b, self.d)

    # -- arithmetic -------------------------------------------------------
    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return FunctionFieldElement(self.curve, self.a * other, self.b * other, self.d)
        if not isinstance(other, FunctionFieldElement):
            return NotImplemented
        if self.curve != other.curve:
            raise ValueError("functions on different curves")
        h = self.curve.h
        a = self.a * other.a + self.b * other.b * h
        b = self.a * other.b + self.b * other.a
        return FunctionFieldElement(self.curve, a, b, self.d * other.d)

    __rmul__ = __mul__

    def __neg__(self):
        return FunctionFieldElement(self.curve, -self.a, -self.b, self.d)

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = FunctionFieldElement.constant(self.curve, other)
        if not isinstance(other, FunctionFieldElement):
            return NotImplemented
        a = self.a * other.d + other.a * self.d
        b = self.b * other.d + other.b * self.d
        return FunctionFieldElement(self.curve, a, b, self.d * other.d)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-other)

    def reciprocal(self) -> "FunctionFieldElement":
        if self.is_zero():
            raise ZeroDivisionError("reciprocal of the zero function")
        # 1/((a+by)/d) = d (a - by) / (a^2 - b^2 h)
        n = self.norm_numerator()
        return FunctionFieldElement(self.curve, self.d * self.a, -(self.d * self.b), n)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * Fraction(1, 1) / FunctionFieldElement.constant(self.curve, other)
        return self * other.reciprocal()

    def __pow__(self, n: int):
        if n == 0:
            return FunctionFieldElement.constant(self.curve, 1)
        base = self if n > 0 else self.reciprocal()
        n = abs(n)
        out = FunctionFieldElement.constant(self.curve, 1)
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __repr__(self):
        return f"FFE(({self.a}) + ({self.b})*y) / ({self.d})"


# ----------------------------------------------------------------------
# local expansions
# ----------------------------------------------------------------------


def _poly_local(poly: Polynomial, P: CurvePoint, curve: HyperellipticCurve):
    """(valuation, leading coefficient) of a polynomial in x at P."""
    if poly.is_zero():
        raise ZeroFunctionError("valuation of zero")
    g = curve.genus
    if P.kind == "branch":
        k = poly.root_multiplicity(P.x)
        red = poly
        for _ in range(k):
            red = red.exact_div(Polynomial((-P.x, 1)))
        hp = curve.h.derivative().eval(P.x)
        return 2 * k, red.eval(P.x) * hp**-k if k else red.eval(P.x)
    if P.kind == "affine":
        k = poly.root_multiplicity(P.x)
        red = poly
        for _ in range(k):
            red = red.exact_div(Polynomial((-P.x, 1)))
        return k, red.eval(P.x)
    # infinity
    L = curve.lc
    if curve.is_odd_model:
        return -2 * poly.degree, poly.lc * L**-poly.degree
    return -poly.degree, poly.lc


def _numerator_local(F: FunctionFieldElement, P: CurvePoint):
    """(valuation, lead) of a + b*y at P."""
    curve, a, b = F.curve, F.a, F.b
    g = curve.genus
    if b.is_zero():
        return _poly_local(a, P, curve)
    if a.is_zero():
        vb, cb = _poly_local(b, P, curve)
        vy, cy = _y_local(P, curve)
        return vb + vy, cb * cy

    if P.kind == "branch":
        ka = a.root_multiplicity(P.x)
        kb = b.root_multiplicity(P.x)
        va, vb = 2 * ka, 2 * kb + 1
        if va < vb:
            return _poly_local(a, P, curve)
        vbv, cbv = _poly_local(b, P, curve)
        return vbv + 1, cbv  # lead(y) = 1 for t = y

    if P.kind == "affine":
        return _affine_series_local(F, P)

    # infinity
    L = curve.lc
    if curve.is_odd_model:
        va = -2 * a.degree
        vb = -(2 * b.degree + 2 * g + 1)
        if va < vb:
            return va, a.lc * L**-a.degree
        return vb, b.lc * L ** -(b.degree + g)
    return _even_infinity_series_local(F, P)


def _y_local(P: CurvePoint, curve: HyperellipticCurve):
    g = curve.genus
    if P.kind == "branch":
        return 1, Fraction(1)
    if P.kind == "affine":
        return 0, P.y
    L = curve.lc
    if curve.is_odd_model:
        return -(2 * g + 1), L**-g
    s = curve.lc_sqrt()
    lead = s * P.sheet if s is not None else QuadExt(0, P.sheet, L)
    return -(g + 1), lead


def _affine_series_local(F: FunctionFieldElement, P: CurvePoint):
    """Series expansion of a + b*y in t = x - x0 at a non-branch affine point."""
    curve, a, b = F.curve, F.a, F.b
    x0, y0 = P.x, P.y
    bound = F.norm_numerator().root_multiplicity(x0)
    prec = bound + 2
    a_ser = TruncatedSeries.from_polynomial(a.shift(x0), prec)
    b_ser = TruncatedSeries.from_polynomial(b.shift(x0), prec)
    h_ser = TruncatedSeries.from_polynomial(curve.h.shift(x0), prec)
    hx0 = curve.h.eval(x0)
    u = h_ser.scale(Fraction(1) / hx0)
    y_ser = u.sqrt_unit().scale(y0)
    total = a_ser + b_ser * y_ser
    v = total.valuation()
    if v is None or v > bound:
        raise ArithmeticError("series precision exhausted in local expansion")
    return v, total.coeffs[v]


def _even_infinity_series_local(F: FunctionFieldElement, P: CurvePoint):
    """Expansion at an infinite place of an even model, in t = 1/x."""
    curve, a, b = F.curve, F.a, F.b
    g = curve.genus
    L = curve.lc
    n = 2 * g + 2
    da, db = a.degree, b.degree
    N = max(da, db + g + 1)
    prec = 2 * N + n + 4
    rev_a = TruncatedSeries.from_polynomial(a.reversed_coeffs(), prec)
    rev_b = TruncatedSeries.from_polynomial(b.reversed_coeffs(), prec)
    w = TruncatedSeries.from_polynomial(
        curve.h.reversed_coeffs(n) * (Fraction(1) / L), prec
    )
    root = w.sqrt_unit()
    s = curve.lc_sqrt()
    lead = s * P.sheet if s is not None else QuadExt(0, P.sheet, L)

    def shifted(ser, k):
        return TruncatedSeries([Fraction(0)] * k + ser.coeffs, prec)

    a_part = shifted(rev_a, N - da)
    b_part = shifted(rev_b * root, N - db - g - 1)
    if isinstance(lead, QuadExt):
        coeffs = [a_part.coeffs[i] + lead * b_part.coeffs[i] for i in range(prec)]
        v = next((i for i, c in enumerate(coeffs) if c != 0), None)
        if v is None:
            raise ArithmeticError("series precision exhausted at infinity")
        return v - N, coeffs[v]
    total = a_part + b_part.scale(lead)
    v = total.valuation()
    if v is None:
        raise ArithmeticError("series precision exhausted at infinity")
    return v - N, total.coeffs[v]


def local_leading(F: FunctionFieldElement, P: CurvePoint):
    """(n, c) with F = c * t^n * (1 + O(t)) in the canonical uniformizer at P."""
    if F.is_zero():
        raise ZeroFunctionError("valuation of zero")
    if not F.curve.contains(P):
        raise ValueError(f"{P!r} is not on the curve")
    vn, cn = _numerator_local(F, P)
    vd, cd = _poly_local(F.d, P, F.curve)
    return vn - vd, cn / cd


def valuation(F: FunctionFieldElement, P: CurvePoint) -> int:
    """Order of vanishing of F at P (negative at poles)."""
    if F.is_zero():
        raise ZeroFunctionError("valuation of zero")
    if not F.curve.contains(P):
        raise ValueError(f"{P!r} is not on the curve")
    # cheap paths that avoid series work
    if P.kind == "affine" and not F.b.is_zero():
        num_val = F.a.eval(P.x) + F.b.eval(P.x) * P.y
        if num_val != 0:
            vd, _ = _poly_local(F.d, P, F.curve)
            return -vd
    vn, _ = _numerator_local(F, P)
    vd, _ = _poly_local(F.d, P, F.curve)
    return vn - vd


def evaluate(F: FunctionFieldElement, P: CurvePoint):
    """Value of F at P: a Fraction, a QuadExt, 0, or the infinity marker."""
    n, c = local_leading(F, P)
    if n > 0:
        return Fraction(0)
    if n < 0:
        return INFINITY
    return c


def tame_symbol(a: FunctionFieldElement, b: FunctionFieldElement, P: CurvePoint):
    """(-1)^(v(a)v(b)) * a^v(b) / b^v(a) evaluated at P; exact and nonzero."""
    if a.is_zero() or b.is_zero():
        raise ZeroFunctionError("tame symbol of the zero function")
    na, ca = local_leading(a, P)
    nb, cb = local_leading(b, P)
    sign = -1 if (na * nb) % 2 else 1
    return sign * (ca**nb) / (cb**na)


# ----------------------------------------------------------------------
# divisors of functions
# ----------------------------------------------------------------------


def divisor_of(F: FunctionFieldElement) -> Divisor:
    """Exact degree-zero divisor of a nonzero function."""
    if F.is_zero():
        raise ZeroFunctionError("divisor of zero")
    curve = F.curve
    g = curve.genus
    terms = []

    norm = F.norm_numerator()
    if norm.is_zero():
        raise ZeroFunctionError("numerator norm vanishes identically")
    _collect_numerator(F, norm, terms)
    _collect_x_polynomial(curve, F.d, terms, sign=-1)

    # infinity
    vn_parts = _infinity_numerator_vals(F)
    vd = -F.d.degree * (2 if curve.is_odd_model else 1)
    if curve.is_odd_model:
        v = vn_parts[0] - vd
        if v:
            terms.append((CurvePoint.infinity(), v))
    elif curve.lc_sqrt() is not None:
        for sheet, vn in zip((1, -1), vn_parts):
            v = vn - vd
            if v:
                terms.append((CurvePoint.infinity(sheet), v))
    else:
        v = vn_parts[0] - vd
        if v:
            terms.append((InfinityPair(), v))

    D = Divisor(terms)
    if D.degree != 0:
        raise ArithmeticError(f"divisor degree {D.degree} != 0 (internal error)")
    return D


def _collect_numerator(F, norm, terms):
    curve = F.curve
    _, factors = norm.factor()
    for q, mult in factors:
        if q.degree == 1:
            x0 = -q.coeffs[0]
            if curve.h.eval(x0) == 0:
                P = CurvePoint.branch(x0)
                v, _ = _numerator_local(F, P)
                if v:
                    terms.append((P, v))
            else:
                y2 = curve.h.eval(x0)
                y0 = sqrt_fraction(y2)
                if y0 is not None:
                    Pp = CurvePoint.affine(x0, y0)
                    vp, _ = _numerator_local(F, Pp)
                    vm = mult - vp
                    if vp:
                        terms.append((Pp, vp))
                    if vm:
                        terms.append((CurvePoint.affine(x0, -y0), vm))
                else:
                    if mult % 2:
                        raise ArithmeticError("odd multiplicity over a conjugate pair")
                    terms.append((ConjugatePair(x0), mult // 2))
        else:
            terms.append((FiberTerm(q), mult))


def _collect_x_polynomial(curve, poly, terms, sign):
    """Affine divisor of a polynomial in x alone (sheet-symmetric)."""
    if poly.degree == 0:
        return
    _, factors = poly.factor()
    for q, mult in factors:
        if q.degree == 1:
            x0 = -q.coeffs[0]
            if curve.h.eval(x0) == 0:
                terms.append((CurvePoint.branch(x0), sign * 2 * mult))
            else:
                y0 = sqrt_fraction(curve.h.eval(x0))
                if y0 is not None:
                    terms.append((CurvePoint.affine(x0, y0), sign * mult))
                    terms.append((CurvePoint.affine(x0, -y0), sign * mult))
                else:
                    terms.append((ConjugatePair(x0), sign * mult))
        else:
            terms.append((FiberTerm(q), sign * 2 * mult))


def _infinity_numerator_vals(F):
    curve = F.curve
    g = curve.genus
    a, b = F.a, F.b
    if curve.is_odd_model:
        if b.is_zero():
            return (-2 * a.degree,)
        if a.is_zero():
            return (-(2 * b.degree + 2 * g + 1),)
        return (min(-2 * a.degree, -(2 * b.degree + 2 * g + 1)),)
    if curve.lc_sqrt() is not None:
        out = []
        for sheet in (1, -1):
            v, _ = _numerator_local(F, CurvePoint.infinity(sheet))
            out.append(v)
        return tuple(out)
    # non-square leading coefficient: no cancellation is possible over Q
    if b.is_zero():
        return (-a.degree,)
    if a.is_zero():
        return (-(b.degree + g + 1),)
    return (min(-a.degree, -(b.degree + g + 1)),)
