from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, strategies as st

from recurlab.polyalgebra.poly import IntPolynomial
from recurlab.polyalgebra.roots import dominant_root
from recurlab.rulecore import (
    ConvergenceError,
    IntegerSequence,
    RecurrenceRule,
    RuleSyntaxError,
    backward_extend,
    characteristic_polynomial,
    generate_terms,
    parse_rule,
    ratio_limit,
    render_rule,
)


# --- parsing ---------------------------------------------------------------------


def test_parse_padovan():
    r = parse_rule("u[n-2]+u[n-3]")
    assert r.lags == (2, 3) and r.coeffs == (1, 1)


def test_parse_shift():
    r = parse_rule("u[n-1]")
    assert r.lags == (1,) and r.coeffs == (1,)


def test_parse_pell():
    r = parse_rule("2*u[n-1]+u[n-2]")
    assert r.lags == (1, 2) and r.coeffs == (2, 1)


def test_parse_rational_and_duplicates():
    r = parse_rule("1/2*u[n-3] + u[n-1] + u[n-3]")
    assert r.lags == (1, 3) and r.coeffs == (1, Fraction(3, 2))
    assert parse_rule("u[n-4]+u[n-4]").coeffs == (2,)


@pytest.mark.parametrize("text", ["", "u[n-0]", "u[n+1]", "u[n-1]+", "v[n-1]", "u[n-1] u[n-2]", "x*u[n-1]"])
def test_parse_errors(text):
    with pytest.raises(RuleSyntaxError) as exc:
        parse_rule(text)
    assert exc.value.pos >= 0


def test_parse_zero_net_coefficient():
    with pytest.raises(ValueError):
        parse_rule("u[n-2]+-1*u[n-2]")


def test_rule_invariants():
    with pytest.raises(ValueError):
        RecurrenceRule((2, 1), (1, 1))
    with pytest.raises(ValueError):
        RecurrenceRule((1,), (0,))
    assert RecurrenceRule.from_lags([4, 1, 2]).order == 4


# --- generation ------------------------------------------------------------------


def test_padovan_terms():
    s = generate_terms(parse_rule("u[n-2]+u[n-3]"), [1, 1, 1], 10)
    assert list(s) == [1, 1, 1, 2, 2, 3, 4, 5, 7, 9]


def test_rule_124_terms():
    s = generate_terms(RecurrenceRule.from_lags([1, 2, 4]), [1, 1, 1, 2], 12)
    assert list(s) == [1, 1, 1, 2, 4, 7, 12, 21, 37, 65, 114, 200]


def test_pell_terms():
    s = generate_terms(parse_rule("2*u[n-1]+u[n-2]"), [1, 2], 6)
    assert list(s) == [1, 2, 5, 12, 29, 70]


def test_init_too_short():
    with pytest.raises(ValueError):
        generate_terms(parse_rule("u[n-2]+u[n-3]"), [1, 1], 5)


def test_rational_terms_exact():
    s = generate_terms(parse_rule("1/2*u[n-1]+1/3*u[n-2]"), [1, 1], 5)
    assert s.terms[2] == Fraction(5, 6)


def test_sequence_indexing_and_json():
    s = generate_terms(parse_rule("u[n-1]+u[n-2]"), [1, 1], 8, start_index=1)
    assert s[8] == 21 and s.end_index == 8
    with pytest.raises(IndexError):
        s[0]
    assert list(IntegerSequence.from_json(s.to_json())) == list(s)


# --- backward extension ------------------------------------------------------------


def test_backward_fibonacci():
    s = backward_extend(parse_rule("u[n-1]+u[n-2]"), [1, 1], 3)
    assert s.start_index == -2
    assert list(s) == [-1, 1, 0, 1, 1]
    assert s[0] == 0 and s[-1] == 1 and s[-2] == -1


def test_backward_pell():
    s = backward_extend(parse_rule("2*u[n-1]+u[n-2]"), [1, 2], 1)
    assert list(s) == [0, 1, 2]


def test_backward_constant():
    assert list(backward_extend(parse_rule("u[n-1]"), [5], 2)) == [5, 5, 5]


# --- characteristic polynomial and ratio limits ---------------------------------------


@pytest.mark.parametrize("rule,coeffs", [
    ("u[n-2]+u[n-3]", [-1, -1, 0, 1]),
    ("u[n-1]+u[n-3]", [-1, 0, -1, 1]),
    ("u[n-1]+u[n-2]+u[n-4]", [-1, 0, -1, -1, 1]),
])
def test_characteristic_polynomial(rule, coeffs):
    assert characteristic_polynomial(parse_rule(rule)) == IntPolynomial(coeffs)


@pytest.mark.parametrize("rule,init,digits", [
    ("u[n-2]+u[n-3]", [1, 1, 1], "1.3247179572447"),
    ("u[n-1]+u[n-3]", [1, 1, 1], "1.465571231876768"),
    ("u[n-1]+u[n-2]", [1, 1], "1.618033988"),
])
def test_ratio_limit_examples(rule, init, digits):
    r = ratio_limit(parse_rule(rule), init, tol=1e-18)
    assert mpmath.nstr(r, 30).startswith(digits)
    root = dominant_root(characteristic_polynomial(parse_rule(rule)), 1, 2, tol=Fraction(1, 10**20))
    assert abs(r - root) < 1e-11


def test_ratio_limit_rejects_bad_input():
    with pytest.raises(ValueError):
        ratio_limit(parse_rule("u[n-1]+u[n-2]"), [0, 0])
    with pytest.raises(ValueError):
        ratio_limit(parse_rule("u[n-1]+-1*u[n-2]"), [1, 2])


def test_ratio_limit_cap():
    # p = 3 Tribonacci-like rule converges slowly; a tiny cap must signal non-convergence
    with pytest.raises(ConvergenceError):
        ratio_limit(RecurrenceRule.from_lags([1, 4, 5]), [1, 1, 1, 1, 2], max_terms=20)


# --- properties ---------------------------------------------------------------------

lag_sets = st.lists(st.integers(1, 6), min_size=1, max_size=4, unique=True)
coeff = st.integers(-3, 3).filter(bool)


@st.composite
def rules(draw, positive=False):
    lags = sorted(draw(lag_sets))
    cs = [draw(st.integers(1, 3) if positive else coeff) for _ in lags]
    return RecurrenceRule(tuple(lags), tuple(cs))


@given(rules(), st.data())
def test_generated_terms_round_trip(rule, data):
    init = data.draw(st.lists(st.integers(-20, 20), min_size=rule.order, max_size=rule.order))
    s = generate_terms(rule, init, rule.order + 25)
    for p in range(rule.order, len(s)):
        assert rule.apply(s.terms, p) == s.terms[p]


@given(rules())
def test_parse_render_round_trip(rule):
    assert parse_rule(render_rule(rule)) == rule


@given(rules(), st.data())
def test_backward_then_forward_is_identity(rule, data):
    init = data.draw(st.lists(st.integers(-20, 20), min_size=rule.order, max_size=rule.order))
    back = backward_extend(rule, init, 10)
    again = generate_terms(rule, list(back.terms[: rule.order]), len(back), back.start_index)
    assert again == back


@given(st.sampled_from([[2, 3], [1, 3], [1, 2], [1, 4], [1, 2, 4]]), st.data())
def test_ratio_limit_independent_of_init(lags, data):
    rule = RecurrenceRule.from_lags(lags)
    a = data.draw(st.lists(st.integers(1, 50), min_size=rule.order, max_size=rule.order))
    b = data.draw(st.lists(st.integers(1, 50), min_size=rule.order, max_size=rule.order))
    assert abs(ratio_limit(rule, a) - ratio_limit(rule, b)) < 1e-11
