"""Acceptance gate: every criterion at its stated tolerance.

Run with `pytest -s tests/test_acceptance.py` to see one line per criterion.
Criteria and their bounds:

 1. exact cycle condition (boundary = 0, exact; < 10 s)
 2. functional equation residual <= 1e-6 at quadrature tol 1e-8 (< 60 s per value)
 3. cross-oracles: AGM vs quadrature <= 1e-8 relative; Monte Carlo within 3 sigma
 4. bielliptic splitting residual <= 1e-5, mass difference <= 1e-6, and a
    nonzero pairing verdict on at least one pair
 5. intersection counts: 8 points on 2 curves (generic), 4 on 3 (special)
 6. specialization identity, exact, 5 random rational points
 7. genus-2 decomposition: exact restriction divisors, constant residual terms
 8. randomized algebraic property suites, fixed seed, 100% pass
"""
import time

import pytest

from hyperchow.acceptance import ALL_CRITERIA, run_all

_RESULTS = {}


@pytest.fixture(scope="module")
def results():
    if not _RESULTS:
        t0 = time.time()
        for rec in run_all():
            _RESULTS[rec["name"]] = rec
        _RESULTS["_total"] = time.time() - t0
    return _RESULTS


def _show(rec):
    line = f"[{rec['status'].upper():>13}] {rec['name']}: {rec['detail']}"
    print(line)
    return rec["status"]


@pytest.mark.parametrize("name", [name for name, _ in ALL_CRITERIA])
def test_criterion(results, name):
    rec = results[name]
    status = _show(rec)
    assert status == "pass", f"{name}: {rec['detail']}"


def test_criterion_runtimes(results):
    # criterion 1 carries its own runtime bound; the whole gate should be
    # comfortably interactive
    rec = results["cycle-condition-exact"]
    assert rec["value"] < 10.0
    print(f"[     RUNTIME ] full acceptance suite: {results['_total']:.1f}s")
