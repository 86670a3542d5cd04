import pytest

from hyperchow.algebra import CurvePoint, HyperellipticCurve, Polynomial
from hyperchow.jacobian import JacobianContext


@pytest.fixture(scope="session")
def elliptic_lambda4():
    """y^2 = x(x-1)(x-4)."""
    return HyperellipticCurve(Polynomial.from_roots([0, 1, 4]))


@pytest.fixture(scope="session")
def genus2_curve():
    """y^2 = x(x-1)(x-2)(x-3)(x-4)."""
    return HyperellipticCurve(Polynomial.from_roots([0, 1, 2, 3, 4]))


@pytest.fixture(scope="session")
def genus3_curve():
    """y^2 = x(x-1)(x-2)(x-3)(x-4)(x-5)(x-6)."""
    return HyperellipticCurve(Polynomial.from_roots([0, 1, 2, 3, 4, 5, 6]))


@pytest.fixture(scope="session")
def genus2_ctx(genus2_curve):
    return JacobianContext(genus2_curve, CurvePoint.branch(0), CurvePoint.infinity())


@pytest.fixture(scope="session")
def genus3_ctx(genus3_curve):
    return JacobianContext(genus3_curve, CurvePoint.branch(0), CurvePoint.infinity())


@pytest.fixture(scope="session")
def genus2_pointed_ctx():
    """y^2 = x(x-1)(x-2)(x-3)(x+25), carrying the rational point (5, 60)."""
    curve = HyperellipticCurve(Polynomial.from_roots([0, 1, 2, 3, -25]))
    ctx = JacobianContext(curve, CurvePoint.branch(0), CurvePoint.infinity())
    return ctx, curve.point(5, 60)


@pytest.fixture(scope="session")
def genus3_pointed_ctx():
    """y^2 = x(x-1)(x-2)(x-3)(x-4)(x-5)(x+28), carrying (7, 420)."""
    curve = HyperellipticCurve(Polynomial.from_roots([0, 1, 2, 3, 4, 5, -28]))
    ctx = JacobianContext(curve, CurvePoint.branch(0), CurvePoint.infinity())
    return ctx, curve.point(7, 420)
