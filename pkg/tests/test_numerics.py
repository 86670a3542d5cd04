"""Volume forms, periods, the log-coordinate integral, and Gram data."""
import math
from fractions import Fraction

import numpy as np
from scipy.special import ellipj, ellipk

from hyperchow.numerics.integrals import (
    LogFactor,
    curve_integral,
    curve_mass,
    functional_equation_check,
    gram_normalize,
    gram_self_check,
    invariant_log_integral,
    legendre_model,
    unit_volume_form,
)
from hyperchow.numerics.model import ComplexCurveModel
from hyperchow.numerics.periods import elliptic_periods, jacobi_sn, sample_log_coordinate

TOL = 1e-9


def test_mass_normalization():
    model = legendre_model(2.0)
    form, mass = unit_volume_form(model, tol=TOL)
    renorm = curve_mass(model, form.matrix, tol=TOL)
    assert abs(renorm.value - 1.0) < 1e-8


def test_zero_matrix_integrates_to_zero():
    model = legendre_model(2.0)
    z = curve_integral(model, np.zeros((1, 1)), LogFactor.from_roots([0.0]), tol=TOL)
    assert z.value == 0.0


def test_covolume_cross_check():
    # two independent computations of the same lattice covolume
    for lam in (2.0, 3.0, 5.0, 1.5, 0.5):
        covol = elliptic_periods(lam)[2]
        model = legendre_model(lam)
        mass = curve_mass(model, np.array([[1.0]]), tol=TOL)
        assert abs(mass.value - covol) / covol < 1e-8


def test_periods_rectangular_at_half():
    p1, p2, _ = elliptic_periods(0.5)
    assert abs(p1.imag) < 1e-12 * abs(p1)
    assert abs(p2.real) < 1e-12 * abs(p2)


def test_covolume_inversion_scaling():
    # direct substitution x -> x/lam in the mass integral gives
    # covol(1/lam) = |lam| * covol(lam)
    for lam in (2.0, 3.0, 2.5):
        v = elliptic_periods(lam)[2]
        vinv = elliptic_periods(1.0 / lam)[2]
        assert abs(vinv - lam * v) / vinv < 1e-12


def test_functional_equation_values():
    for lam in (2, 3, 5, Fraction(3, 2), 2 + 1j):
        chk = functional_equation_check(lam, tol=1e-8)
        assert chk["residual"] <= max(1e-6, 3 * chk["error"])


def test_log_integral_conjugation_symmetry():
    a = invariant_log_integral(2 + 1j, tol=1e-8)
    b = invariant_log_integral(2 - 1j, tol=1e-8)
    assert abs(a.value - b.value) <= max(1e-8, 3 * (a.error_estimate + b.error_estimate))


def test_log_integral_not_constant():
    I2 = invariant_log_integral(2.0, tol=TOL)
    Ihalf = invariant_log_integral(0.5, tol=TOL)
    gap = abs(I2.value - Ihalf.value)
    assert gap > 5 * (I2.error_estimate + Ihalf.error_estimate)
    assert abs(gap - math.log(2.0)) < 1e-8


def test_monte_carlo_oracle_agreement():
    for lam in (2.0, 3.0, 5.0):
        mean, se = sample_log_coordinate(lam, 200000, seed=1234)
        quad = invariant_log_integral(lam, tol=TOL)
        assert abs(mean - quad.value) <= 3 * se


def test_jacobi_sn_matches_scipy_on_reals():
    m = 0.4
    for u in (0.25, 0.9, 1.6, 2.3):
        ref = ellipj(u, m)[0]
        val = complex(jacobi_sn(u, m))
        assert abs(val - ref) < 1e-12


def test_jacobi_sn_periodicity_complex():
    m = 0.5
    K = float(ellipk(m))
    Kp = float(ellipk(1 - m))
    u = 0.37 + 0.21j
    assert abs(jacobi_sn(u + 4 * K, m) - jacobi_sn(u, m)) < 1e-10
    assert abs(jacobi_sn(u + 2j * Kp, m) - jacobi_sn(u, m)) < 1e-10


def test_gram_genus1_reduces_to_covolume_scaling():
    model = legendre_model(2.0)
    gd = gram_normalize(model, tol=TOL)
    covol = elliptic_periods(2.0)[2]
    assert abs(gd.transform[0, 0] - 1 / math.sqrt(covol)) < 1e-9
    assert gd.check_residual < 1e-12


def test_gram_self_consistency_genus2(genus2_curve):
    model = ComplexCurveModel.from_exact(genus2_curve)
    gd = gram_normalize(model, tol=TOL)
    resid = gram_self_check(gd, tol=TOL)
    assert resid < 10 * TOL * 1e6  # recomputed inner products stay near identity
    assert resid < 1e-7


def test_gram_positive_definite(genus3_curve):
    model = ComplexCurveModel.from_exact(genus3_curve)
    gd = gram_normalize(model, tol=1e-8)
    eig = np.linalg.eigvalsh(gd.gram)
    assert np.all(eig > 0)


def test_sheet_flip_leaves_results_unchanged():
    model = legendre_model(2.0)
    flipped = model.flipped()
    a = curve_integral(model, np.array([[1.0]]), LogFactor.from_roots([0.0]), tol=TOL)
    b = curve_integral(flipped, np.array([[1.0]]), LogFactor.from_roots([0.0]), tol=TOL)
    assert a.value == b.value
    assert model.residual_on_sheet(np.array([0.3 + 0.2j, 2.5 - 1j])) < 1e-12


def test_quadrature_result_combinators():
    from hyperchow.numerics.model import QuadratureResult

    a = QuadratureResult(2.0, 1e-9, 10, 1e-8)
    b = QuadratureResult(4.0, 1e-9, 20, 1e-8)
    assert (a + b).value == 6.0
    assert (a - b).value == -2.0
    r = a.ratio(b)
    assert abs(r.value - 0.5) < 1e-15
    assert r.cells_used == 30
