"""Additive sequences read off triangles and squares, p-Tribonacci families and the eta relations."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb

import mpmath

from ._precision import DEFAULT_DPS
from .polyalgebra.poly import IntPolynomial
from .polyalgebra.roots import dominant_root
from .rulecore import RecurrenceRule, backward_extend, generate_terms

# --- Pascal and the asymmetric triangle ---------------------------------------------


def pascal_shallow_fib(n: int) -> int:
    """sum_k C(n-k, k); equals F_(n+1) with F_1 = F_2 = 1."""
    if n < 0:
        raise ValueError("n must be non-negative")
    return sum(comb(n - k, k) for k in range(n // 2 + 1))


ASYMMETRIC_ROWS_PRINTED = (
    (1,), (1, 2), (1, 3, 2), (1, 4, 5, 2), (1, 5, 9, 7, 2), (1, 6, 14, 16, 9, 2),
)


@dataclass(frozen=True)
class AsymmetricTriangle:
    rows: tuple[tuple[int, ...], ...]
    shallow_sums: tuple[int, ...]  # s_n = sum_k T(n-k, k), rows counted from 0

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["row", "k", "value"])
        for r, row in enumerate(self.rows):
            for k, v in enumerate(row):
                w.writerow([r, k, v])
        return buf.getvalue()


def asymmetric_triangle(rows: int) -> AsymmetricTriangle:
    """Left border 1, right border 2, Pascal interior; apex row (1,)."""
    if rows < 1:
        raise ValueError("rows must be positive")
    out = [(1,)]
    if rows >= 2:
        out.append((1, 2))
    while len(out) < rows:
        prev = out[-1]
        out.append((1,) + tuple(prev[k - 1] + prev[k] for k in range(1, len(prev))) + (2,))
    sums = []
    for n in range(rows):
        sums.append(sum(out[n - k][k] for k in range(n + 1) if k < len(out[n - k])))
    return AsymmetricTriangle(tuple(out), tuple(sums))


def lucas_alignment(sums, start: int = 1) -> int | None:
    """Shift s with sums[n] = L_(n+s) for every n >= start (L_0 = 2, L_1 = 1), or None."""
    luc = [2, 1]
    while len(luc) < len(sums) + 10:
        luc.append(luc[-1] + luc[-2])
    for s in range(-start, 6):
        if all(0 <= n + s < len(luc) and sums[n] == luc[n + s] for n in range(start, len(sums))):
            return s
    return None


# --- Delannoy square --------------------------------------------------------------


@lru_cache(maxsize=None)
def delannoy(i: int, j: int) -> int:
    if i < 0 or j < 0:
        raise ValueError("indices must be non-negative")
    if i == 0 or j == 0:
        return 1
    # iterate row by row to avoid deep recursion
    prev = [1] * (j + 1)
    for _ in range(i):
        cur = [1]
        for c in range(1, j + 1):
            cur.append(cur[c - 1] + prev[c] + prev[c - 1])
        prev = cur
    return prev[j]


DELANNOY_PRINTED = (
    (1, 1, 1, 1, 1, 1),
    (1, 3, 5, 7, 9, 11),
    (1, 5, 13, 25, 41, 61),
    (1, 7, 25, 63, 129, 231),
    (1, 9, 41, 129, 321, 681),
)


class DelannoySquare:
    """D(i, j) for 0 <= i < rows, 0 <= j < cols."""

    def __init__(self, rows: int, cols: int | None = None):
        cols = rows if cols is None else cols
        t = [[1] * cols for _ in range(rows)]
        for i in range(1, rows):
            for j in range(1, cols):
                t[i][j] = t[i - 1][j] + t[i][j - 1] + t[i - 1][j - 1]
        self.table = tuple(tuple(r) for r in t)

    def __getitem__(self, ij):
        return self.table[ij[0]][ij[1]]

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerows(self.table)
        return buf.getvalue()


def delannoy_diagonal_sums(kind: str, p: int = 0, count: int = 12) -> list[int]:
    """Sums over the cells {(i, j) : i + (p+1) j = n} for n = 0..count-1.

    ``kind="anti"`` is the p = 0 case. The slope p + 1 is a modelling choice,
    validated by comparison with :func:`p_tribonacci`.
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    if kind == "anti":
        p = 0
    elif kind != "shallow":
        raise ValueError("kind must be 'anti' or 'shallow'")
    if p < 0:
        raise ValueError("p must be non-negative")
    sq = DelannoySquare(count, count)
    return [sum(sq[n - (p + 1) * j, j] for j in range(n // (p + 1) + 1)) for n in range(count)]


# --- p-Tribonacci ----------------------------------------------------------------------


def p_trib_rule(p: int) -> RecurrenceRule:
    """u_(n+1) = u_n + u_(n-p) + u_(n-p-1); for p = 0 the first two lags merge into 2 u_n."""
    if p < 0:
        raise ValueError("p must be non-negative")
    return RecurrenceRule.from_lags([1, p + 1, p + 2])


def p_tribonacci(p: int, count: int) -> list[int]:
    """Initial terms 1 (p+1 times), 2; the rule then produces 4, ..."""
    if count < p + 3:
        raise ValueError("count must be >= p + 3")
    return list(generate_terms(p_trib_rule(p), [1] * (p + 1) + [2], count))


def p_lucas_trib(p: int, count: int) -> list[int]:
    """Initial terms 3, 1 (p times), 3."""
    if count < p + 3:
        raise ValueError("count must be >= p + 3")
    return list(generate_terms(p_trib_rule(p), [3] + [1] * p + [3], count))


def p_trib_limit(p: int, dps: int = DEFAULT_DPS):
    """The positive root of x^(p+2) - x^(p+1) - x - 1; it lies in ]1, 2[ for p >= 1 and is 1 + sqrt(2) for p = 0."""
    if p < 0:
        raise ValueError("p must be non-negative")
    poly = IntPolynomial.monomial(p + 2) - IntPolynomial.monomial(p + 1) - IntPolynomial([1, 1])
    return dominant_root(poly, 1, 3, tol=Fraction(1, 10 ** (dps // 2)), dps=dps)


def lt_offset_report(p: int, count: int = 30, shifts=range(-3, 4)) -> dict:
    """Which s makes LT_(n+s) = T_n + 2 T_(n-p) + 3 T_(n-p-1) hold for every admissible n (1-based)."""
    T = p_tribonacci(p, count)
    LT = p_lucas_trib(p, count + max(shifts) + 1)
    holding = []
    for s in shifts:
        ns = [n for n in range(p + 2, count + 1) if 1 <= n + s <= len(LT)]
        if ns and all(LT[n + s - 1] == T[n - 1] + 2 * T[n - p - 1] + 3 * T[n - p - 2] for n in ns):
            holding.append(s)
    return {"p": p, "printed_holds": 0 in holding, "holding_shifts": holding}


# --- eta, V, W and Perrin ---------------------------------------------------------------

ETA_RULE = RecurrenceRule.from_lags([1, 2, 4])
V_PRINTED = (2, 3, 5, 9, 17, 29, 51, 90, 158, 277, 486, 853, 1497, 2627, 4610, 8090, 14197)
W_PRINTED = (1, 1, 1, 2, 4, 7, 12, 21, 37, 65, 114, 200)


def perrin(count: int) -> list[int]:
    """P(0..count-1) with P(0)=3, P(1)=0, P(2)=2."""
    p = [3, 0, 2]
    while len(p) < count:
        p.append(p[-2] + p[-3])
    return p[:count]


@dataclass
class EtaReport:
    eta: mpmath.mpf
    V: list[int]
    W: list[int]
    P: list[int]
    exact: list[int]  # recurrence-consistent sequence obtained by back-extending the tail of V
    anomalies: dict[int, tuple[int, int]]  # n -> (nint(eta^n), exact value)
    perrin_shift_holding: list[int]  # s with V_n = P(2n + s) for all n > 4
    printed_perrin_holds: bool
    w_relation: dict[int, bool]  # n -> W_(n+3) == V_n + 2 W_(n-1)
    w_square_error: dict[int, float]  # n -> W_(2n) / (W_n V_n) - 1

    def to_dict(self) -> dict:
        return {
            "eta": mpmath.nstr(self.eta, 20),
            "V": self.V, "W": self.W,
            "anomalies": {str(k): list(v) for k, v in self.anomalies.items()},
            "perrin_shift_holding": self.perrin_shift_holding,
            "printed_perrin_holds": self.printed_perrin_holds,
            "w_relation": {str(k): v for k, v in self.w_relation.items()},
            "w_square_error": {str(k): v for k, v in self.w_square_error.items()},
            "note": "W is identified with the rule {1,2,4} sequence 1,1,1,2,4,7,...",
        }


def eta_suite(count: int = 17, dps: int = DEFAULT_DPS) -> EtaReport:
    """V_n = nint(eta^n) for n = 1..count and its relations to W and the Perrin numbers."""
    if count < 12:
        raise ValueError("count must be >= 12")
    need = int(count * 0.25) + 20
    if dps < need:
        raise ValueError(f"count={count} needs at least {need} digits")
    with mpmath.workdps(dps):
        eta = dominant_root(IntPolynomial([-1, 0, -1, -1, 1]), 1, 2, tol=Fraction(1, 10 ** (dps // 2)), dps=dps)
        V = [int(mpmath.nint(eta**n)) for n in range(1, count + 1)]
    W = list(generate_terms(ETA_RULE, [1, 1, 1, 2], 2 * count + 4))
    # back-extend from V_(count-3..count) to n = 1; differences against V are the anomalies
    tail = backward_extend(ETA_RULE, V[-4:], count - 4, start_index=count - 3)
    exact = list(tail.terms)
    anomalies = {n: (V[n - 1], exact[n - 1]) for n in range(1, count + 1) if V[n - 1] != exact[n - 1]}
    P = perrin(2 * count + 8)
    holding = [s for s in range(-3, 4) if all(V[n - 1] == P[2 * n + s] for n in range(5, count + 1))]
    w_rel = {n: W[n + 2] == V[n - 1] + 2 * W[n - 2] for n in range(5, count + 1) if n + 2 < len(W)}
    sq = {n: float(Fraction(W[2 * n - 1], W[n - 1] * V[n - 1]) - 1) for n in range(5, min(count, 12) + 1)}
    return EtaReport(eta, V, W[:count], P[: 2 * count + 2], exact, anomalies, holding, 1 in holding, w_rel, sq)
