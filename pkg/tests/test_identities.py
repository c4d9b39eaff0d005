import json
import threading
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from recurlab import identities as idm
from recurlab.identities import (
    MIN_CASES,
    cases_to_csv,
    cases_to_json,
    discover_correction,
    identity,
    jfib,
    jfl_pair,
    jlucas,
    negative_index_symmetry,
    verify_identity,
    xvi_case,
    xvi_cases,
    xvi_reference_sign,
    xvi_summary,
)

# --- sequences ----------------------------------------------------------------------------


def test_jfib_examples():
    assert [jfib(1, n) for n in range(1, 7)] == [1, 1, 2, 3, 5, 8]
    assert [jfib(2, n) for n in range(1, 7)] == [1, 2, 5, 12, 29, 70]
    assert jfib(2, 0) == 0 and jfib(2, -1) == 1


def test_jlucas_examples():
    assert [jlucas(1, n) for n in range(1, 6)] == [1, 3, 4, 7, 11]
    assert [jlucas(2, n) for n in range(1, 6)] == [2, 6, 14, 34, 82]
    assert [jlucas(3, n) for n in range(1, 5)] == [3, 11, 36, 119]


@pytest.mark.parametrize("j", range(1, 9))
def test_recurrence_both_directions(j):
    p = jfl_pair(j)
    for n in range(-28, 31):
        assert p.F(n) == p.F(n - 2) + j * p.F(n - 1)
        assert p.L(n) == p.L(n - 2) + j * p.L(n - 1)
    assert p.F(0) == 0


@pytest.mark.parametrize("j", range(1, 9))
def test_negative_index_symmetry(j):
    assert negative_index_symmetry(j, 30)


def test_concurrent_fill_is_consistent():
    results = []

    def work(j):
        results.append([jfib(j, n) for n in range(-40, 200)])

    threads = [threading.Thread(target=work, args=(7,)) for _ in range(8)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert all(r == results[0] for r in results)


# --- catalog -----------------------------------------------------------------------------


def test_worked_examples():
    assert jfib(2, 6) == 70 == jlucas(2, 3) * jfib(2, 3)
    assert jfib(2, 4) == 12 == Fraction(jfib(2, 3) ** 2 - jfib(2, 1) ** 2, 2)
    g = identity("GELIN")
    lhs, rhs, ok, _ = g.check(2, {"n": 3})
    assert lhs == rhs == -71 and ok


def test_gelin_at_j1_is_constant_one():
    g = identity("GELIN")
    assert {g.check(1, {"n": n})[0] for n in range(3, 21)} == {1}


PASSING = ["III", "IV", "V", "VIII", "IX", "X", "XI", "XII", "XIII", "XIV_sum", "XV", "CATALAN", "GELIN"]


@pytest.mark.parametrize("iid", PASSING)
def test_reference_catalog_passes(iid):
    cases = verify_identity(iid, range(1, 6))
    assert cases and all(c.passed for c in cases)


@pytest.mark.parametrize("iid", ["VI", "VII", "XII_2", "CASSINI"])
def test_printed_misprints_fail_and_reference_passes(iid):
    assert not all(c.passed for c in verify_identity(iid, range(1, 6), form="printed"))
    assert all(c.passed for c in verify_identity(iid, range(1, 6), form="reference"))


def test_xv_respects_constraint():
    for c in verify_identity("XV", range(1, 3), {"a": range(1, 6), "b": range(1, 6), "c": range(1, 6)}):
        b = dict(c.bindings)
        assert "d" not in b or b["a"] + b["b"] == b["c"] + b["d"]


def test_rejects_bad_j():
    with pytest.raises(ValueError):
        verify_identity("III", [0])


# --- corrections ------------------------------------------------------------------------------


@pytest.mark.parametrize("iid,edit_word", [("VII", "sign"), ("VI", "drop"), ("CASSINI", "exponent")])
def test_unique_correction(iid, edit_word):
    corr = discover_correction(iid, range(1, 6), {"n": range(1, 21), "m": range(1, 11)})
    assert corr.status == "corrected", corr.candidates
    assert len(corr.candidates) == 1 and edit_word in corr.edit
    assert corr.corrected == str(identity(iid, "reference"))


def test_printed_form_holds_for_correct_identity():
    assert discover_correction("III", range(1, 7)).status == "printed form holds"


def test_correction_needs_enough_cases():
    with pytest.raises(ValueError):
        discover_correction("VII", [1], {"n": range(2, 5)})
    assert MIN_CASES == 100


def test_vii_corrected_value():
    # j = 2, n = 1: L^2 - (j^2 + 4) F^2 = 4 - 8 = -4
    assert jlucas(2, 1) ** 2 - 8 * jfib(2, 1) ** 2 == -4


# --- XVI sign rule ------------------------------------------------------------------------------


def test_xvi_reference_sign_exhaustive():
    for j in range(1, 6):
        p = jfl_pair(j)
        for a in range(1, 13):
            for b in range(1, 13):
                for c in range(1, 13):
                    d = a + b - c
                    if d < 1:
                        continue
                    lhs = p.F(a) * p.F(b) - p.F(c) * p.F(d)
                    assert lhs == xvi_reference_sign(a, b, c) * p.F(abs(c - b)) * p.F(abs(c - a))


def test_xvi_hand_checked_instance():
    # j = 2, (a, b, c, d) = (4, 2, 5, 1): printed case analysis gives the wrong sign
    p = jfl_pair(2)
    lhs = p.F(4) * p.F(2) - p.F(5) * p.F(1)
    assert lhs == -5 == xvi_reference_sign(4, 2, 5) * p.F(3) * p.F(1)
    case = xvi_case(4, 2, 5)
    cases = [c for c in xvi_cases("XVI" + case, [2], {"a": [4], "b": [2], "c": [5]})]
    assert cases and not cases[0].passed


def test_xvi_summary_both_readings_reported():
    s = xvi_summary(range(1, 3), {"a": range(1, 8), "b": range(1, 8), "c": range(1, 8)})
    assert s["reference_matches"] == s["cases"]
    for reading in ("as_printed", "swapped"):
        assert 0 < s[reading]["correct"] < s[reading]["covered"]


# --- serialization -------------------------------------------------------------------------------


def test_case_serialization():
    cases = verify_identity("III", [1, 2], {"n": range(2, 4)})
    rows = cases_to_csv(cases).splitlines()
    assert rows[0] == "identity,j,indices,pass" and rows[1] == "III,1,n=2,1"
    data = json.loads(cases_to_json(cases))
    assert data[0]["pass"] is True and data[0]["lhs"] == "3"


@given(st.integers(1, 6), st.integers(-20, 20), st.integers(-20, 20))
def test_addition_law_property(j, m, n):
    # F_(m+n) = F_(m+1) F_n + F_m F_(n-1)
    p = jfl_pair(j)
    assert p.F(m + n) == p.F(m + 1) * p.F(n) + p.F(m) * p.F(n - 1)
