"""Truncated power series used for local expansions at curve points.

Coefficients are Fractions (occasionally QuadExt); only the handful of
operations the valuation/leading-term machinery needs.
"""
from __future__ import annotations

from fractions import Fraction


class TruncatedSeries:
    """Series sum c_k t^k truncated mod t^prec."""

    __slots__ = ("coeffs", "prec")

    def __init__(self, coeffs, prec):
        cs = list(coeffs)[:prec]
        cs += [Fraction(0)] * (prec - len(cs))
        self.coeffs = cs
        self.prec = prec

    @classmethod
    def from_polynomial(cls, p, prec):
        return cls(list(p.coeffs), prec)

    def __add__(self, other):
        n = min(self.prec, other.prec)
        return TruncatedSeries([self.coeffs[i] + other.coeffs[i] for i in range(n)], n)

    def __sub__(self, other):
        n = min(self.prec, other.prec)
        return TruncatedSeries([self.coeffs[i] - other.coeffs[i] for i in range(n)], n)

    def __mul__(self, other):
        if not isinstance(other, TruncatedSeries):
            return TruncatedSeries([c * other for c in self.coeffs], self.prec)
        n = min(self.prec, other.prec)
        out = [Fraction(0)] * n
        for i, a in enumerate(self.coeffs[:n]):
            if a == 0:
                continue
            for j in range(n - i):
                b = other.coeffs[j]
                if b != 0:
                    out[i + j] = out[i + j] + a * b
        return TruncatedSeries(out, n)

    __rmul__ = __mul__

    def scale(self, c):
        return TruncatedSeries([a * c for a in self.coeffs], self.prec)

    def sqrt_unit(self):
        """Square root of a series with constant term exactly 1."""
        if self.coeffs[0] != 1:
            raise ValueError("sqrt_unit needs constant term 1")
        out = [Fraction(1)] + [Fraction(0)] * (self.prec - 1)
        for k in range(1, self.prec):
            acc = Fraction(0)
            for i in range(1, k):
                acc = acc + out[i] * out[k - i]
            out[k] = (self.coeffs[k] - acc) / 2
        return TruncatedSeries(out, self.prec)

    def valuation(self):
        """Index of first nonzero coefficient, or None if all vanish."""
        for i, c in enumerate(self.coeffs):
            if c != 0:
                return i
        return None

    def __repr__(self):
        return f"Series({self.coeffs}, O(t^{self.prec}))"
