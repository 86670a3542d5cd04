"""Higher Chow precycles on hyperelliptic Jacobians: exact construction and
verification of the cycle condition, tame-symbol decompositions, and
intersection combinatorics, plus numerical evaluation of the real-regulator
integrals behind the non-vanishing statements."""

from . import algebra, cycles, jacobian, numerics, serialize

__version__ = "0.1.0"

__all__ = ["algebra", "cycles", "jacobian", "numerics", "serialize", "__version__"]
