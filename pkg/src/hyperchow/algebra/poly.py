"""Dense univariate polynomials over exact rationals.

Coefficients are `fractions.Fraction`, stored lowest degree first with no
trailing zeros.  Everything here is immutable and exact; the only outside
help is sympy, used for factoring into irreducibles over Q when the support
of a divisor is not rational.
"""
from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache


def sqrt_fraction(q: Fraction) -> Fraction | None:
    """Exact square root of a rational, or None if q is not a square."""
    if q < 0:
        return None
    num, den = q.numerator, q.denominator
    rn, rd = math.isqrt(num), math.isqrt(den)
    if rn * rn == num and rd * rd == den:
        return Fraction(rn, rd)
    return None


class Polynomial:
    """Immutable polynomial with Fraction coefficients, lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [c if isinstance(c, Fraction) else Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    # -- constructors -------------------------------------------------
    @classmethod
    def zero(cls):
        return cls(())

    @classmethod
    def one(cls):
        return cls((1,))

    @classmethod
    def x(cls):
        return cls((0, 1))

    @classmethod
    def constant(cls, c):
        return cls((c,))

    @classmethod
    def from_roots(cls, roots, lead=1):
        p = cls((lead,))
        for r in roots:
            p = p * cls((-Fraction(r), 1))
        return p

    # -- basic queries ------------------------------------------------
    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def lc(self) -> Fraction:
        if not self.coeffs:
            return Fraction(0)
        return self.coeffs[-1]

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self == Polynomial((other,))
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        if not self.coeffs:
            return "Poly(0)"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                parts.append(str(c))
            elif i == 1:
                parts.append(f"{c}*x" if c != 1 else "x")
            else:
                parts.append(f"{c}*x^{i}" if c != 1 else f"x^{i}")
        return "Poly(" + " + ".join(parts) + ")"

    # -- ring operations ----------------------------------------------
    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        res = list(a)
        for i, c in enumerate(b):
            res[i] = res[i] + c
        return Polynomial(res)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return Polynomial.zero()
            return Polynomial(tuple(c * other for c in self.coeffs))
        if not isinstance(other, Polynomial):
            return NotImplemented
        if not self.coeffs or not other.coeffs:
            return Polynomial.zero()
        res = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                res[i + j] += a * b
        return Polynomial(res)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = Polynomial.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __divmod__(self, other):
        other = _coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        q = [Fraction(0)] * max(0, self.degree - other.degree + 1)
        rem = list(self.coeffs)
        dlc = other.lc
        dd = other.degree
        while len(rem) - 1 >= dd and rem:
            k = len(rem) - 1 - dd
            f = rem[-1] / dlc
            q[k] = f
            for i, c in enumerate(other.coeffs):
                rem[k + i] -= f * c
            while rem and rem[-1] == 0:
                rem.pop()
        return Polynomial(q), Polynomial(rem)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other) -> "Polynomial":
        q, r = divmod(self, other)
        if not r.is_zero():
            raise ArithmeticError("inexact polynomial division")
        return q

    # -- calculus / evaluation ----------------------------------------
    def derivative(self) -> "Polynomial":
        return Polynomial(tuple(c * i for i, c in enumerate(self.coeffs) if i))

    def eval(self, x0):
        """Horner evaluation; x0 may be Fraction, int, float or complex."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x0 + c
        if isinstance(x0, (int, Fraction)) and not isinstance(acc, (complex, float)):
            return Fraction(acc)
        return acc

    def __call__(self, x0):
        return self.eval(x0)

    def compose(self, other: "Polynomial") -> "Polynomial":
        acc = Polynomial.zero()
        for c in reversed(self.coeffs):
            acc = acc * other + Polynomial((c,))
        return acc

    def shift(self, x0) -> "Polynomial":
        """p(x + x0) as a polynomial in x (Taylor recentering)."""
        return self.compose(Polynomial((Fraction(x0), 1)))

    def reversed_coeffs(self, n: int | None = None) -> "Polynomial":
        """x^n * p(1/x); n defaults to deg(p)."""
        if n is None:
            n = self.degree
        if n < self.degree:
            raise ValueError("reversal length below degree")
        cs = [Fraction(0)] * (n + 1)
        for i, c in enumerate(self.coeffs):
            cs[n - i] = c
        return Polynomial(cs)

    # -- gcd machinery -------------------------------------------------
    def monic(self) -> "Polynomial":
        if self.is_zero():
            return self
        inv = 1 / self.lc
        return Polynomial(tuple(c * inv for c in self.coeffs))

    def gcd(self, other: "Polynomial") -> "Polynomial":
        a, b = self, _coerce(other)
        while not b.is_zero():
            a, b = b, a % b
        return a.monic() if not a.is_zero() else a

    def xgcd(self, other: "Polynomial"):
        """Extended gcd: returns (g, s, t) with s*self + t*other = g, g monic."""
        a, b = self, _coerce(other)
        s0, s1 = Polynomial.one(), Polynomial.zero()
        t0, t1 = Polynomial.zero(), Polynomial.one()
        while not b.is_zero():
            q, r = divmod(a, b)
            a, b = b, r
            s0, s1 = s1, s0 - q * s1
            t0, t1 = t1, t0 - q * t1
        if a.is_zero():
            return a, s0, t0
        inv = 1 / a.lc
        return a * inv, s0 * inv, t0 * inv

    def is_squarefree(self) -> bool:
        if self.degree <= 1:
            return not self.is_zero()
        return self.gcd(self.derivative()).degree == 0

    def root_multiplicity(self, x0) -> int:
        x0 = Fraction(x0)
        p, k = self, 0
        while not p.is_zero() and p.eval(x0) == 0:
            p = p.exact_div(Polynomial((-x0, 1)))
            k += 1
        return k

    # -- factorization over Q -------------------------------------------
    def factor(self):
        """Factor into monic irreducibles over Q.

        Returns (constant, [(factor, multiplicity), ...]) with factors monic,
        sorted by (degree, coefficients) for determinism.
        """
        if self.is_zero():
            raise ValueError("cannot factor the zero polynomial")
        const, factors = _factor_cached(self.coeffs)
        return const, list(factors)

    def rational_roots(self):
        """All rational roots with multiplicity, as [(Fraction, int), ...]."""
        out = []
        for f, m in self.factor()[1]:
            if f.degree == 1:
                out.append((-f.coeffs[0] / f.coeffs[1], m))
        return out


def _coerce(v):
    if isinstance(v, Polynomial):
        return v
    if isinstance(v, (int, Fraction)):
        return Polynomial((v,))
    return NotImplemented


@lru_cache(maxsize=4096)
def _factor_cached(coeffs):
    import sympy

    x = sympy.Symbol("x")
    expr = sympy.Poly(
        [sympy.Rational(c.numerator, c.denominator) for c in reversed(coeffs)],
        x,
        domain="QQ",
    )
    const, parts = expr.factor_list()
    const = Fraction(const.p, const.q)
    out = []
    for fac, mult in parts:
        cs = [Fraction(c.p, c.q) for c in reversed(fac.all_coeffs())]
        p = Polynomial(cs)
        const *= p.lc**mult
        out.append((p.monic(), int(mult)))
    out.sort(key=lambda fm: (fm[0].degree, fm[0].coeffs))
    return const, tuple(out)
