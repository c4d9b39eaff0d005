"""Guaranteed real-root enclosure and counting.

All sign decisions are made in exact rational arithmetic; extended precision is
only used to report the final values.
"""

from __future__ import annotations

from fractions import Fraction

import mpmath

from .._precision import DEFAULT_DPS
from .poly import IntPolynomial, rat_divmod, rat_eval


class NoSignChange(ValueError):
    pass


def to_fraction(x) -> Fraction:
    """Exact rational value of an int, float, Fraction, decimal string or mpf."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, float)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    if isinstance(x, mpmath.mpf):
        man, exp = x.man_exp
        return Fraction(int(man)) * Fraction(2) ** int(exp)
    return Fraction(x)


def _sign(v) -> int:
    return (v > 0) - (v < 0)


def sturm_chain(p: IntPolynomial) -> list[list[Fraction]]:
    """Sturm sequence of the squarefree part of ``p`` (rational coefficient lists)."""
    f = p.squarefree_part()
    chain = [list(map(Fraction, f.coeffs))]
    if f.degree < 1:
        return chain
    chain.append(list(map(Fraction, f.derivative().coeffs)))
    while True:
        _, r = rat_divmod(chain[-2], chain[-1])
        if not r:
            break
        chain.append([-c for c in r])
    return chain


def _variations(signs) -> int:
    s = [v for v in signs if v != 0]
    return sum(1 for a, b in zip(s, s[1:]) if a != b)


def _signs_at(chain, x) -> list[int]:
    if x == "+inf":
        return [_sign(c[-1]) for c in chain]
    if x == "-inf":
        return [_sign(c[-1]) * (-1) ** (len(c) - 1) for c in chain]
    return [_sign(rat_eval(c, x)) for c in chain]


def _count(chain, lo, hi) -> int:
    return _variations(_signs_at(chain, lo)) - _variations(_signs_at(chain, hi))


def sturm_real_root_count(p: IntPolynomial, lo=None, hi=None) -> int:
    """Number of distinct real roots of ``p`` in ``]lo, hi]``.

    ``None`` (or +-inf floats) stand for the infinite endpoints. Multiplicities are
    removed before the chain is built.
    """
    if p.is_zero():
        raise ValueError("the zero polynomial has infinitely many roots")
    if p.degree == 0:
        return 0
    lo_ = "-inf" if lo is None or lo == float("-inf") else to_fraction(lo)
    hi_ = "+inf" if hi is None or hi == float("inf") else to_fraction(hi)
    if lo_ != "-inf" and hi_ != "+inf" and lo_ >= hi_:
        return 0
    return _count(sturm_chain(p), lo_, hi_)


def cauchy_bound(p: IntPolynomial) -> Fraction:
    lc = abs(p.leading)
    return 1 + max(Fraction(abs(a), lc) for a in p.coeffs[:-1]) if p.degree > 0 else Fraction(1)


def isolate_real_roots(p: IntPolynomial, lo=None, hi=None) -> list[tuple[Fraction, Fraction]]:
    """Disjoint intervals ``]a, b]`` each holding exactly one distinct real root."""
    if p.degree < 1:
        return []
    chain = sturm_chain(p)
    bound = cauchy_bound(p)
    a0 = -bound if lo is None else max(to_fraction(lo), -bound - 1)
    b0 = bound if hi is None else min(to_fraction(hi), bound + 1)
    out = []
    stack = [(a0, b0, _count(chain, a0, b0))]
    while stack:
        a, b, n = stack.pop()
        if n == 0:
            continue
        if n == 1:
            out.append((a, b))
            continue
        m = (a + b) / 2
        stack.append((m, b, _count(chain, m, b)))
        stack.append((a, m, _count(chain, a, m)))
    out.sort()
    return out


def _refine(c: list[Fraction], chain, a: Fraction, b: Fraction, tol: Fraction):
    """Shrink ``]a, b]`` around its single root until narrower than ``tol``.

    ``c`` is the squarefree part. Returns the exact root when one is hit,
    otherwise the final bracket.
    """
    if rat_eval(c, b) == 0:
        return b, b
    # move the left end off any neighbouring root so sign tests apply
    while rat_eval(c, a) == 0:
        m = (a + b) / 2
        if _count(chain, m, b) == 1:
            a = m
        else:
            b = m
            if rat_eval(c, b) == 0:
                return b, b
    sa = _sign(rat_eval(c, a))
    while b - a > tol:
        m = (a + b) / 2
        sm = _sign(rat_eval(c, m))
        if sm == 0:
            return m, m
        if sm == sa:
            a = m
        else:
            b = m
    return a, b


def real_roots(p: IntPolynomial, lo=None, hi=None, tol=Fraction(1, 10**15), dps: int = DEFAULT_DPS) -> list:
    """All distinct real roots in ``]lo, hi]`` as mpf values, each enclosed to width < tol."""
    tol = to_fraction(tol)
    chain = sturm_chain(p)
    sqf = p.squarefree_part()
    c = list(map(Fraction, sqf.coeffs))
    roots = []
    with mpmath.workdps(dps):
        for a, b in isolate_real_roots(p, lo, hi):
            a, b = _refine(c, chain, a, b, tol)
            if a == b:
                roots.append(mpmath.mpf(a.numerator) / a.denominator)
            else:
                roots.append(_polish(sqf, a, b))
    return roots


def _polish(p: IntPolynomial, a: Fraction, b: Fraction):
    """Newton steps from the bracket midpoint, kept only while inside the bracket."""
    lo = mpmath.mpf(a.numerator) / a.denominator
    hi = mpmath.mpf(b.numerator) / b.denominator
    x = (lo + hi) / 2
    dp = p.derivative()
    for _ in range(60):
        d = dp(x)
        if d == 0:
            break
        nx = x - p(x) / d
        if not (lo <= nx <= hi):
            break
        if abs(nx - x) <= abs(x) * mpmath.eps * 4:
            x = nx
            break
        x = nx
    return x


def dominant_root(p: IntPolynomial, lo=1, hi=2, tol=Fraction(1, 10**15), dps: int = DEFAULT_DPS):
    """Root of ``p`` inside ``]lo, hi[`` located by exact bisection, then Newton-polished.

    Requires a sign change between the endpoints.
    """
    a, b = to_fraction(lo), to_fraction(hi)
    tol = to_fraction(tol)
    c = list(map(Fraction, p.coeffs))
    fa, fb = rat_eval(c, a), rat_eval(c, b)
    if fa * fb >= 0:
        raise NoSignChange(f"{p} has no sign change on [{lo}, {hi}]")
    sa = _sign(fa)
    while b - a > tol:
        m = (a + b) / 2
        sm = _sign(rat_eval(c, m))
        if sm == 0:
            a = b = m
            break
        if sm == sa:
            a = m
        else:
            b = m
    with mpmath.workdps(dps):
        if a == b:
            return mpmath.mpf(a.numerator) / a.denominator
        return _polish(p, a, b)
