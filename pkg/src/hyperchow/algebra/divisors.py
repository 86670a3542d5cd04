"""Divisors on a hyperelliptic curve.

Keys are rational curve points when the support is rational.  Support that is
only defined over an extension is carried symbolically so that degrees and
additivity stay exact:

* ``ConjugatePair(x0)`` -- the two points (x0, +-sqrt(h(x0))) over a rational
  x0 where h(x0) is not a square; multiplicity is the common valuation at
  either point, and the key has degree 2.
* ``FiberTerm(q)`` -- everything above an irreducible q(x) of degree >= 2.
  The stored multiplicity m means a total degree contribution m * deg(q)
  (summed over the places in the fiber, weighted by residue degree).
* ``InfinityPair()`` -- the two conjugate places at infinity of an even model
  whose leading coefficient is not a square; degree 2.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .curve import CurvePoint
from .poly import Polynomial


@dataclass(frozen=True)
class ConjugatePair:
    x: Fraction

    @property
    def degree(self) -> int:
        return 2

    def __repr__(self):
        return f"pair(x={self.x})"


@dataclass(frozen=True)
class FiberTerm:
    poly: Polynomial

    @property
    def degree(self) -> int:
        return self.poly.degree

    def __repr__(self):
        return f"fiber({self.poly})"


@dataclass(frozen=True)
class InfinityPair:
    @property
    def degree(self) -> int:
        return 2

    def __repr__(self):
        return "oo-pair"


class Divisor:
    """Finite formal sum of places with integer multiplicities."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        d = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            for place, mult in items:
                if mult:
                    d[place] = d.get(place, 0) + mult
                    if d[place] == 0:
                        del d[place]
        self.terms = d

    @classmethod
    def of_point(cls, P: CurvePoint, mult: int = 1):
        return cls([(P, mult)])

    def __getitem__(self, place) -> int:
        return self.terms.get(place, 0)

    def __iter__(self):
        return iter(self.terms.items())

    def __len__(self):
        return len(self.terms)

    def __add__(self, other):
        d = dict(self.terms)
        for place, mult in other.terms.items():
            d[place] = d.get(place, 0) + mult
            if d[place] == 0:
                del d[place]
        out = Divisor()
        out.terms = d
        return out

    def __neg__(self):
        out = Divisor()
        out.terms = {p: -m for p, m in self.terms.items()}
        return out

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, n: int):
        if n == 0:
            return Divisor()
        out = Divisor()
        out.terms = {p: n * m for p, m in self.terms.items()}
        return out

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, Divisor):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    @property
    def degree(self) -> int:
        return sum(m * p.degree for p, m in self.terms.items())

    def is_zero(self) -> bool:
        return not self.terms

    def is_effective(self) -> bool:
        return all(m > 0 for m in self.terms.values())

    def positive_part(self) -> "Divisor":
        return Divisor([(p, m) for p, m in self.terms.items() if m > 0])

    def negative_part(self) -> "Divisor":
        """The poles, as an effective divisor."""
        return Divisor([(p, -m) for p, m in self.terms.items() if m < 0])

    def rational_points(self):
        """Iterate (CurvePoint, mult); raises if symbolic support is present."""
        for p, m in self.terms.items():
            if not isinstance(p, CurvePoint):
                raise ValueError(f"divisor has non-rational support at {p!r}")
            yield p, m

    def has_symbolic_support(self) -> bool:
        return any(not isinstance(p, CurvePoint) for p in self.terms)

    def sorted_items(self):
        return sorted(self.terms.items(), key=lambda pm: repr(pm[0]))

    def __repr__(self):
        if not self.terms:
            return "Div(0)"
        bits = []
        for p, m in self.sorted_items():
            bits.append(f"{'+' if m > 0 else '-'}{abs(m)}[{p!r}]")
        return "Div(" + " ".join(bits) + ")"
