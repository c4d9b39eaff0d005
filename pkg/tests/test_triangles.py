from fractions import Fraction

import pytest

from recurlab.identities import jfib
from recurlab.triangles import (
    ASYMMETRIC_ROWS_PRINTED,
    DELANNOY_PRINTED,
    V_PRINTED,
    W_PRINTED,
    DelannoySquare,
    asymmetric_triangle,
    delannoy,
    delannoy_diagonal_sums,
    eta_suite,
    lt_offset_report,
    lucas_alignment,
    p_lucas_trib,
    p_trib_limit,
    p_tribonacci,
    pascal_shallow_fib,
    perrin,
)


@pytest.mark.parametrize("n,value", [(1, 1), (4, 5), (6, 13)])
def test_pascal_examples(n, value):
    assert pascal_shallow_fib(n) == value


def test_pascal_is_fibonacci():
    assert all(pascal_shallow_fib(n) == jfib(1, n + 1) for n in range(0, 31))


def test_asymmetric_rows():
    t = asymmetric_triangle(6)
    assert t.rows == ASYMMETRIC_ROWS_PRINTED
    assert t.rows[4] == (1, 5, 9, 7, 2) and t.rows[5] == (1, 6, 14, 16, 9, 2)


def test_asymmetric_shallow_sums_are_lucas():
    t = asymmetric_triangle(20)
    assert t.shallow_sums[:7] == (1, 1, 3, 4, 7, 11, 18)
    assert lucas_alignment(t.shallow_sums) == 0
    assert t.to_csv().splitlines()[0] == "row,k,value"


def test_delannoy_examples():
    assert delannoy(2, 2) == 13 and delannoy(4, 4) == 321 and delannoy(0, 5) == 1


def test_delannoy_printed_table():
    sq = DelannoySquare(5, 6)
    assert sq.table == DELANNOY_PRINTED
    assert all(sq[i, j] == delannoy(i, j) for i in range(5) for j in range(6))


def test_delannoy_symmetry():
    sq = DelannoySquare(15)
    assert all(sq[i, j] == sq[j, i] for i in range(15) for j in range(15))


def test_anti_diagonals():
    s = delannoy_diagonal_sums("anti", count=12)
    assert s[:6] == [1, 2, 5, 12, 29, 70]
    assert all(s[n + 1] == 2 * s[n] + s[n - 1] for n in range(1, 11))


def test_shallow_examples():
    assert delannoy_diagonal_sums("shallow", 1, 8) == [1, 1, 2, 4, 7, 13, 24, 44]
    assert delannoy_diagonal_sums("shallow", 2, 11) == [1, 1, 1, 2, 4, 6, 9, 15, 25, 40, 64]


@pytest.mark.parametrize("p", [0, 1, 2, 3])
def test_shallow_equals_p_tribonacci(p):
    n = 20
    assert delannoy_diagonal_sums("shallow", p, n) == p_tribonacci(p, n)


def test_diagonal_errors():
    with pytest.raises(ValueError):
        delannoy_diagonal_sums("steep")
    with pytest.raises(ValueError):
        delannoy_diagonal_sums("anti", count=0)


def test_p_tribonacci_examples():
    assert p_tribonacci(1, 8) == [1, 1, 2, 4, 7, 13, 24, 44]
    assert p_tribonacci(2, 11) == [1, 1, 1, 2, 4, 6, 9, 15, 25, 40, 64]
    assert p_tribonacci(0, 6) == [1, 2, 5, 12, 29, 70]
    assert p_lucas_trib(1, 7) == [3, 1, 3, 7, 11, 21, 39]
    with pytest.raises(ValueError):
        p_tribonacci(3, 4)


@pytest.mark.parametrize("p", [0, 1, 2, 3])
def test_lucas_tribonacci_offset(p):
    rep = lt_offset_report(p)
    assert rep["printed_holds"] is False
    assert rep["holding_shifts"] == [1]


@pytest.mark.parametrize("p", [1, 2, 3])
def test_p_tribonacci_ratio_at_60_terms(p):
    # stated tolerance; for p = 3 the subdominant pair has modulus ratio 0.733 and 0.733^60 ~ 1e-8
    t = p_tribonacci(p, 60)
    ratio = Fraction(t[-1], t[-2])
    assert abs(float(ratio) - float(p_trib_limit(p))) < 1e-8


def test_p_tribonacci_ratio_converges_to_limit():
    for p in range(0, 5):
        t = p_tribonacci(p, 400)
        assert abs(float(Fraction(t[-1], t[-2])) - float(p_trib_limit(p))) < 1e-12


def test_perrin():
    assert perrin(10) == [3, 0, 2, 3, 2, 5, 5, 7, 10, 12]


def test_eta_suite():
    rep = eta_suite(17)
    assert tuple(rep.V) == V_PRINTED
    assert tuple(rep.W[:12]) == W_PRINTED
    assert rep.V[3] == 9 and rep.anomalies[4] == (9, 10)
    assert set(rep.anomalies) == {2, 4}
    assert rep.perrin_shift_holding == [0] and not rep.printed_perrin_holds
    assert all(rep.w_relation.values()) and set(range(5, 13)) <= set(rep.w_relation)
    assert rep.W[7] == 21 == rep.V[4] + 2 * rep.W[3]
    errs = [abs(rep.w_square_error[n]) for n in sorted(rep.w_square_error)]
    assert errs[-1] < errs[0]


def test_eta_suite_precision_guard():
    with pytest.raises(ValueError):
        eta_suite(11)
    with pytest.raises(ValueError):
        eta_suite(200, dps=30)
