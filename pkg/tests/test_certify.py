"""Certification grids: enclosure proofs, registry behavior, determinism.

The e and sqrt(e) enclosure constants are certified here against the
factorial series with an explicit tail bound, entirely in rational
arithmetic, so the adverse-end comparisons in the grid checks rest on a
proved inclusion.
"""
from fractions import Fraction
from math import factorial

import pytest

from kfam.certify import (
    ACCEPTANCE_GRIDS,
    E_HI,
    E_LO,
    GRID_CHECKS,
    SQRT_E_HI,
    SQRT_E_LO,
    certify_grid,
)
from kfam.formulas import binom, f_of_z


def _e_series_bounds(terms: int = 18):
    low = sum(Fraction(1, factorial(i)) for i in range(terms + 1))
    # tail: sum_{i>N} 1/i! < 2/(N+1)!
    high = low + Fraction(2, factorial(terms + 1))
    return low, high


def test_e_enclosure_certified():
    low, high = _e_series_bounds()
    assert E_LO <= low
    assert high <= E_HI


def test_sqrt_e_enclosure_certified():
    low, high = _e_series_bounds()
    assert SQRT_E_LO**2 <= low
    assert SQRT_E_HI**2 >= high


def test_registry_contents():
    assert set(GRID_CHECKS) == {
        "f-mono",
        "f3-fprime3",
        "g-ratio",
        "two-g5",
        "eqc3large",
        "eqboundf",
        "eqboundc2",
        "peel-combine",
        "final-compare",
    }
    assert set(ACCEPTANCE_GRIDS) <= set(GRID_CHECKS)


def test_unknown_id_rejected():
    with pytest.raises(KeyError):
        certify_grid("no-such-grid")


@pytest.mark.parametrize(
    "name",
    ["g-ratio", "two-g5", "eqc3large", "eqboundf", "eqboundc2", "peel-combine", "final-compare"],
)
def test_default_small_grids_pass(name):
    report = certify_grid(name)
    assert len(report.points) > 0
    assert report.n_skipped == 0
    assert report.all_pass


def test_f_mono_restricted_grid():
    report = certify_grid("f-mono", ranges={"k": [4, 5, 6]})
    assert report.all_pass
    assert len(report.checked) > 0


def test_f_mono_point_values():
    report = certify_grid("f-mono", ranges={"k": [4], "s": [3], "m": [9], "z": [3]})
    (pt,) = report.points
    assert pt.params == {"k": 4, "s": 3, "m": 9, "z": 3}
    assert pt.lhs[0] == f_of_z(9, 3, 4, 2) - f_of_z(9, 3, 4, 3) == 7
    assert pt.lhs[1] == binom(9 - 3 - 2, 4 - 3) == 4
    assert pt.passed


def test_out_of_hypothesis_points_skipped_with_reason():
    report = certify_grid("f3-fprime3", ranges={"k": [4], "s": [2, 3, 4], "m": [8]})
    reasons = {p.params["s"]: p.skipped for p in report.points}
    assert reasons[2] and "s" in reasons[2]
    assert reasons[3] and "s" in reasons[3]
    assert reasons[4] is None
    # skipped points never count as failures
    assert report.all_pass
    assert report.n_skipped == 2


def test_low_k_points_skipped():
    report = certify_grid("f-mono", ranges={"k": [3], "s": [2], "m": [9], "z": [3]})
    assert all(p.skipped for p in report.points)
    assert report.checked == []


def test_parallel_report_identical():
    ranges = {"k": [4, 5, 6, 7]}
    a = certify_grid("f-mono", ranges=ranges, jobs=1)
    b = certify_grid("f-mono", ranges=ranges, jobs=3)
    assert [(p.params, p.lhs, p.rhs, p.passed, p.skipped) for p in a.points] == [
        (p.params, p.lhs, p.rhs, p.passed, p.skipped) for p in b.points
    ]


def test_report_json_shape():
    report = certify_grid("final-compare")
    payload = report.to_json()
    assert payload["name"] == "final-compare"
    assert payload["total"] == payload["checked"] == len(report.points)
    assert payload["all_pass"] is True
    for entry in payload["points"]:
        assert set(entry) >= {"point", "lhs", "rhs", "pass"}
