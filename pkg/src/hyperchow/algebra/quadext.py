"""Elements of a real quadratic extension Q(sqrt(disc)).

Used where an exact value lives just outside Q: leading coefficients at the
two conjugate places at infinity of an even-degree model whose leading
coefficient is not a square, and tame-symbol values built from them.
"""
from __future__ import annotations

from fractions import Fraction

class QuadExt:
    """p + q*sqrt(disc) with p, q rational and disc a fixed non-square."""

    __slots__ = ("p", "q", "disc")

    def __init__(self, p, q, disc):
        self.p = Fraction(p)
        self.q = Fraction(q)
        self.disc = Fraction(disc)

    @classmethod
    def sqrt_of(cls, disc):
        return cls(0, 1, disc)

    def _check(self, other):
        if isinstance(other, QuadExt):
            if other.disc != self.disc and self.q and other.q:
                raise ValueError("mixing different quadratic extensions")
            return other
        if isinstance(other, (int, Fraction)):
            return QuadExt(other, 0, self.disc)
        return None

    def __add__(self, other):
        o = self._check(other)
        if o is None:
            return NotImplemented
        return QuadExt(self.p + o.p, self.q + o.q, self.disc)

    __radd__ = __add__

    def __neg__(self):
        return QuadExt(-self.p, -self.q, self.disc)

    def __sub__(self, other):
        o = self._check(other)
        if o is None:
            return NotImplemented
        return QuadExt(self.p - o.p, self.q - o.q, self.disc)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._check(other)
        if o is None:
            return NotImplemented
        return QuadExt(
            self.p * o.p + self.q * o.q * self.disc,
            self.p * o.q + self.q * o.p,
            self.disc,
        )

    __rmul__ = __mul__

    def conjugate(self):
        return QuadExt(self.p, -self.q, self.disc)

    def norm(self) -> Fraction:
        return self.p * self.p - self.q * self.q * self.disc

    def inverse(self):
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("zero element of quadratic extension")
        return QuadExt(self.p / n, -self.q / n, self.disc)

    def __truediv__(self, other):
        o = self._check(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = QuadExt(1, 0, self.disc)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, QuadExt):
            if self.q == 0 and other.q == 0:
                return self.p == other.p
            return self.p == other.p and self.q == other.q and self.disc == other.disc
        if isinstance(other, (int, Fraction)):
            return self.q == 0 and self.p == other
        return NotImplemented

    def __hash__(self):
        if self.q == 0:
            return hash(self.p)
        return hash((self.p, self.q, self.disc))

    def __repr__(self):
        if self.q == 0:
            return f"{self.p}"
        return f"({self.p} + {self.q}*sqrt({self.disc}))"

    def is_rational(self) -> bool:
        return self.q == 0

    def as_fraction(self) -> Fraction:
        if self.q != 0:
            raise ValueError("not a rational value")
        return self.p

    def __float__(self):
        root = float(self.disc) ** 0.5
        return float(self.p) + float(self.q) * root
