"""Exact arithmetic for hyperelliptic curves over Q."""
from .curve import CurvePoint, CurveTransport, HyperellipticCurve, MobiusMap, mobius_transport
from .divisors import ConjugatePair, Divisor, FiberTerm, InfinityPair
from .function_field import (
    INFINITY,
    FunctionFieldElement,
    ZeroFunctionError,
    divisor_of,
    evaluate,
    local_leading,
    tame_symbol,
    valuation,
)
from .poly import Polynomial, sqrt_fraction
from .quadext import QuadExt

__all__ = [
    "CurvePoint",
    "CurveTransport",
    "HyperellipticCurve",
    "MobiusMap",
    "mobius_transport",
    "ConjugatePair",
    "Divisor",
    "FiberTerm",
    "InfinityPair",
    "INFINITY",
    "FunctionFieldElement",
    "ZeroFunctionError",
    "divisor_of",
    "evaluate",
    "local_leading",
    "tame_symbol",
    "valuation",
    "Polynomial",
    "sqrt_fraction",
    "QuadExt",
]
