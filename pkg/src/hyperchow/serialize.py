"""JSON serialization of exact objects.

Rationals are decimal strings "p/q" (or "p" when q = 1).  The schema:

    rational:   "p/q"
    polynomial: [rational, ...]                      (lowest degree first)
    curve:      {"h": polynomial}
    point:      {"kind": "affine", "x": r, "y": r}
                {"kind": "branch", "x": r}
                {"kind": "infinity"} | {"kind": "infinity", "sheet": +-1}
    function:   {"a": polynomial, "b": polynomial, "d": polynomial}
    divisor:    [[point, mult], ...]
    class:      {"degree": n, "u": polynomial, "v": polynomial}
"""
from __future__ import annotations

from fractions import Fraction

from .algebra.curve import CurvePoint, HyperellipticCurve
from .algebra.divisors import Divisor
from .algebra.function_field import FunctionFieldElement
from .algebra.poly import Polynomial
from .jacobian import PicPoint


class SchemaError(ValueError):
    pass


def rational_to_json(q: Fraction) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def rational_from_json(s) -> Fraction:
    if isinstance(s, int):
        return Fraction(s)
    if not isinstance(s, str):
        raise SchemaError(f"expected a rational string, got {s!r}")
    return Fraction(s)


def polynomial_to_json(p: Polynomial) -> list:
    return [rational_to_json(c) for c in p.coeffs]


def polynomial_from_json(data) -> Polynomial:
    if not isinstance(data, list):
        raise SchemaError("polynomial must be a list of rationals")
    return Polynomial([rational_from_json(c) for c in data])


def curve_to_json(curve: HyperellipticCurve) -> dict:
    return {"h": polynomial_to_json(curve.h)}


def curve_from_json(data) -> HyperellipticCurve:
    if "h" not in data:
        raise SchemaError("curve record needs the key 'h'")
    return HyperellipticCurve(polynomial_from_json(data["h"]))


def point_to_json(P: CurvePoint) -> dict:
    if P.kind == "affine":
        return {"kind": "affine", "x": rational_to_json(P.x), "y": rational_to_json(P.y)}
    if P.kind == "branch":
        return {"kind": "branch", "x": rational_to_json(P.x)}
    out = {"kind": "infinity"}
    if P.sheet is not None:
        out["sheet"] = P.sheet
    return out


def point_from_json(data) -> CurvePoint:
    kind = data.get("kind")
    if kind == "affine":
        return CurvePoint.affine(rational_from_json(data["x"]), rational_from_json(data["y"]))
    if kind == "branch":
        return CurvePoint.branch(rational_from_json(data["x"]))
    if kind == "infinity":
        return CurvePoint.infinity(data.get("sheet"))
    raise SchemaError(f"unknown point kind {kind!r}")


def function_to_json(F: FunctionFieldElement) -> dict:
    return {
        "a": polynomial_to_json(F.a),
        "b": polynomial_to_json(F.b),
        "d": polynomial_to_json(F.d),
    }


def function_from_json(curve: HyperellipticCurve, data) -> FunctionFieldElement:
    return FunctionFieldElement(
        curve,
        polynomial_from_json(data.get("a", [])),
        polynomial_from_json(data.get("b", [])),
        polynomial_from_json(data.get("d", ["1"])),
    )


def divisor_to_json(D: Divisor) -> list:
    out = []
    for place, mult in D.sorted_items():
        if not isinstance(place, CurvePoint):
            raise SchemaError("only rational-support divisors serialize")
        out.append([point_to_json(place), mult])
    return out


def divisor_from_json(data) -> Divisor:
    return Divisor([(point_from_json(p), int(m)) for p, m in data])


def pic_point_to_json(p: PicPoint) -> dict:
    return {
        "degree": p.degree,
        "u": polynomial_to_json(p.cls.u),
        "v": polynomial_to_json(p.cls.v),
    }
