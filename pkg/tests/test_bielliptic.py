"""The bielliptic construction, the splitting identities, the regulator
pairing, and the genus-3 cover diagram."""
import numpy as np
import pytest

from hyperchow.numerics.bielliptic import (
    ConstructionError,
    bielliptic_gram,
    bielliptic_identity_check,
    build_bielliptic,
    pairing_cross_check,
    solve_degree2_cover,
    _h_value,
)
from hyperchow.numerics.covers import build_genus3_cover
from hyperchow.numerics.integrals import (
    LogFactor,
    gram_normalize,
    regulator_pairing,
)

TOL = 1e-8


def test_solve_degree2_cover_constraints():
    a, b, f = solve_degree2_cover(2.0, 3.0)
    # h fixes 0, 1, infinity
    assert abs(_h_value(a, b, f, 0.0 + 0j)) < 1e-14
    assert abs(_h_value(a, b, f, 1.0 + 0j) - 1.0) < 1e-12
    assert abs(a) > 0
    with pytest.raises(ConstructionError):
        solve_degree2_cover(2.0, 2.0)


def test_build_residuals():
    data = build_bielliptic(2.0, 3.0, tol=TOL)
    for key in ("critical_value_1", "critical_value_2", "deck_involution",
                "commutativity_1", "commutativity_2", "product_constant"):
        assert data.residuals[key] < 1e-10, key
    assert data.residuals["pullback_mass_1"] < 1e-8
    assert data.residuals["pullback_mass_2"] < 1e-8
    assert abs(data.c_constant) > 1e-6


def test_g_has_degree_four():
    """g = h o f has degree 4: four preimages of a generic value."""
    data = build_bielliptic(2.0, 3.0, tol=TOL)
    a, b, f = data.a, data.b, data.f
    w = 0.73 + 0.41j
    # solutions of h(x) = w: a x^2 + (b - w) x - w f = 0, two x-values,
    # each with two sheet points
    roots = np.roots([a, b - w, -w * f])
    assert len(roots) == 2 and abs(roots[0] - roots[1]) > 1e-8
    for r in roots:
        assert abs(_h_value(a, b, f, r) - w) < 1e-9
    # and the log factor bookkeeping matches: total zero-order is 4
    zero_weight = sum(wt for wt in data.log_g.weights if wt > 0)
    assert zero_weight == 2  # two x-plane zeros, each a double point on C


def test_identity_checks_pair_2_3():
    rep = bielliptic_identity_check(2.0, 3.0, tol=TOL)
    assert rep["splitting_residual"] <= 1e-5
    assert abs(rep["mass_difference"].value) <= 1e-6
    assert abs(rep["degree_factor"] - 2.0) < 1e-6
    assert rep["verdict"] == "nonzero"
    assert abs(rep["pairing_value"]) > 5 * rep["pairing_error"]


def test_pullback_forms_are_orthogonal():
    data = build_bielliptic(2.0, 3.0, tol=TOL)
    gram = bielliptic_gram(data, tol=TOL)
    # gram_from_forms enforces orthonormality within its check tolerance
    assert gram.check_residual < 1e-6


def test_pairing_two_code_paths():
    cc = pairing_cross_check(2.0, 3.0, tol=TOL)
    assert cc["difference"] <= max(1e-8, 3 * cc["combined_error"])


def test_pairing_swap_negates():
    data = build_bielliptic(2.0, 3.0, tol=TOL)
    gram = bielliptic_gram(data, tol=TOL)
    a = regulator_pairing(data.model, data.log_f, gram, pair=(0, 1), tol=TOL)
    b = regulator_pairing(data.model, data.log_f, gram, pair=(1, 0), tol=TOL)
    assert abs(a.value + b.value) < 1e-9


def test_pairing_matches_identity_assembly():
    """regulator pairing = 2 * I(f, tau) with tau from the identity check."""
    rep = bielliptic_identity_check(2.0, 3.0, tol=TOL)
    cc = pairing_cross_check(2.0, 3.0, tol=TOL)
    assert abs(cc["pairing"].value - 2 * rep["pairing_value"]) < 1e-7


def test_cholesky_gauge_pairing_runs(genus2_curve):
    from hyperchow.numerics.model import ComplexCurveModel

    model = ComplexCurveModel.from_exact(genus2_curve)
    gram = gram_normalize(model, tol=TOL)
    logfac = LogFactor.from_roots([0.0])
    res = regulator_pairing(model, logfac, gram, tol=TOL)
    assert res.error_estimate < 1e-6
    assert abs(res.value) > 5 * res.error_estimate


def test_genus3_cover():
    rec = build_genus3_cover(5.0, 2.0, 3.0, tol=TOL)
    assert rec["genus_C"] == 3
    assert rec["cover_degree"] == 2
    assert rec["residuals"]["elliptic_leg"] < 1e-10
    assert rec["residuals"]["cover_leg"] < 1e-10
    assert rec["residuals"]["pullback_mass"] < 1e-7
    assert rec["residuals"]["min_fiber_gap"] > 1e-3
    assert len(rec["branch_C"]) == 7  # plus infinity: eight branch points


def test_genus3_cover_rejects_collisions():
    with pytest.raises(ConstructionError):
        build_genus3_cover(2.0, 2.0, 3.0, tol=TOL)
