"""Generalized additive recurrences ``u_p = sum_j q_j * u_{p - i(j)}``.

Rules are written in a small textual grammar::

    rule := term ('+' term)*
    term := [coeff '*'] 'u[n-' lag ']'

where ``coeff`` is an integer or ``p/q`` rational (default 1) and ``lag`` is a
positive integer. Sequence terms are kept exact (``int`` or ``Fraction``).
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import mpmath

from ._precision import DEFAULT_DPS
from .polyalgebra.poly import IntPolynomial


class RuleSyntaxError(ValueError):
    """Malformed rule text; ``pos`` is the 0-based offending character offset."""

    def __init__(self, message: str, text: str, pos: int):
        super().__init__(f"{message} at position {pos}: {text!r}")
        self.text = text
        self.pos = pos


class ConvergenceError(RuntimeError):
    pass


def _exact(x):
    """Normalize to int when integral, Fraction otherwise."""
    if isinstance(x, bool):
        raise TypeError("booleans are not sequence terms")
    if isinstance(x, int):
        return x
    f = Fraction(x)
    return f.numerator if f.denominator == 1 else f


@dataclass(frozen=True)
class RecurrenceRule:
    lags: tuple[int, ...]
    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        lags = tuple(int(i) for i in self.lags)
        coeffs = tuple(Fraction(c) for c in self.coeffs)
        if not lags:
            raise ValueError("a rule needs at least one lag")
        if len(lags) != len(coeffs):
            raise ValueError("lags and coeffs must have equal length")
        if any(i < 1 for i in lags):
            raise ValueError("lags must be >= 1")
        if any(b <= a for a, b in zip(lags, lags[1:])):
            raise ValueError("lags must be strictly increasing")
        if any(c == 0 for c in coeffs):
            raise ValueError("zero coefficients are not allowed")
        object.__setattr__(self, "lags", lags)
        object.__setattr__(self, "coeffs", coeffs)

    @classmethod
    def from_lags(cls, lags: Iterable[int], coeffs: Iterable | None = None) -> RecurrenceRule:
        """Build from possibly unsorted lags; duplicate lags have their coefficients summed."""
        lags = list(lags)
        coeffs = [1] * len(lags) if coeffs is None else list(coeffs)
        if len(coeffs) != len(lags):
            raise ValueError("lags and coeffs must have equal length")
        merged: dict[int, Fraction] = {}
        for i, q in zip(lags, coeffs):
            merged[int(i)] = merged.get(int(i), Fraction(0)) + Fraction(q)
        zero = [i for i, q in merged.items() if q == 0]
        if zero:
            raise ValueError(f"net coefficient of lag(s) {sorted(zero)} is zero")
        keys = sorted(merged)
        return cls(tuple(keys), tuple(merged[i] for i in keys))

    @property
    def order(self) -> int:
        return self.lags[-1]

    @property
    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def apply(self, terms: Sequence, p: int):
        """Evaluate the right-hand side for absolute position ``p`` of ``terms``."""
        return _exact(sum(q * terms[p - i] for i, q in zip(self.lags, self.coeffs)))

    def render(self) -> str:
        return render_rule(self)

    def __str__(self) -> str:
        return self.render()


@dataclass(frozen=True)
class IntegerSequence:
    start_index: int
    terms: tuple

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(_exact(t) for t in self.terms))

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms)

    def __getitem__(self, n: int):
        """Term with sequence index ``n`` (not list position)."""
        k = n - self.start_index
        if not 0 <= k < len(self.terms):
            raise IndexError(f"index {n} outside [{self.start_index}, {self.end_index}]")
        return self.terms[k]

    @property
    def end_index(self) -> int:
        return self.start_index + len(self.terms) - 1

    def to_json(self) -> str:
        return json.dumps([str(t) for t in self.terms])

    @classmethod
    def from_json(cls, text: str, start_index: int = 1) -> IntegerSequence:
        return cls(start_index, tuple(Fraction(s) for s in json.loads(text)))


_TERM = re.compile(
    r"\s*(?:(?P<coeff>[+-]?\d+(?:/\d+)?)\s*\*\s*)?u\s*\[\s*n\s*-\s*(?P<lag>\d+)\s*\]\s*"
)


def parse_rule(text: str) -> RecurrenceRule:
    """Parse ``"2*u[n-1]+u[n-2]"``-style text into a rule.

    Duplicate lags are merged by summing their coefficients.
    """
    pos = 0
    lags: list[int] = []
    coeffs: list[Fraction] = []
    while True:
        m = _TERM.match(text, pos)
        if not m:
            # point at the first non-blank character that failed to parse
            bad = pos
            while bad < len(text) and text[bad].isspace():
                bad += 1
            raise RuleSyntaxError("expected term 'u[n-<lag>]'", text, bad)
        coeff = Fraction(m.group("coeff")) if m.group("coeff") else Fraction(1)
        if coeff.denominator == 0:
            raise RuleSyntaxError("zero denominator", text, m.start("coeff"))
        lag = int(m.group("lag"))
        if lag < 1:
            raise RuleSyntaxError("lag must be >= 1", text, m.start("lag"))
        lags.append(lag)
        coeffs.append(coeff)
        pos = m.end()
        if pos == len(text):
            break
        if text[pos] != "+":
            raise RuleSyntaxError("expected '+'", text, pos)
        pos += 1
    try:
        return RecurrenceRule.from_lags(lags, coeffs)
    except ValueError as exc:
        raise RuleSyntaxError(str(exc), text, 0) from None


def render_rule(rule: RecurrenceRule) -> str:
    """Canonical text form; ``parse_rule(render_rule(r)) == r``."""
    parts = []
    for i, q in zip(rule.lags, rule.coeffs):
        if q == 1:
            parts.append(f"u[n-{i}]")
        else:
            parts.append(f"{q}*u[n-{i}]")
    return "+".join(parts)


def generate_terms(rule: RecurrenceRule, init: Sequence, count: int, start_index: int = 1) -> IntegerSequence:
    """Return ``init`` extended by the rule to ``count`` terms in total."""
    if len(init) < rule.order:
        raise ValueError(f"need at least {rule.order} initial terms, got {len(init)}")
    if count < 1:
        raise ValueError("count must be positive")
    terms = [_exact(t) for t in init]
    while len(terms) < count:
        terms.append(rule.apply(terms, len(terms)))
    return IntegerSequence(start_index, tuple(terms[:count]) if count < len(terms) else tuple(terms))


def backward_extend(rule: RecurrenceRule, init: Sequence, count: int, start_index: int = 1) -> IntegerSequence:
    """Prepend ``count`` terms by solving the rule for its oldest lag."""
    n = rule.order
    if len(init) < n:
        raise ValueError(f"need at least {n} known terms, got {len(init)}")
    if count < 0:
        raise ValueError("count must be non-negative")
    qm = rule.coeffs[-1]
    terms = [_exact(t) for t in init]
    for _ in range(count):
        # newest term used is at position n - 1 of the current list
        p = n - 1
        rest = sum(q * terms[p - i] for i, q in zip(rule.lags[:-1], rule.coeffs[:-1]))
        terms.insert(0, _exact((terms[p] - rest) / qm))
    return IntegerSequence(start_index - count, tuple(terms))


def characteristic_polynomial(rule: RecurrenceRule) -> IntPolynomial:
    """``x^n - sum_j q_j x^(n - i(j))`` for an integer-coefficient rule."""
    if not rule.is_integral:
        raise ValueError("characteristic polynomial needs integer coefficients")
    n = rule.order
    c = [0] * (n + 1)
    c[n] = 1
    for i, q in zip(rule.lags, rule.coeffs):
        c[n - i] -= int(q)
    return IntPolynomial(c)


def _mp(x):
    if isinstance(x, int):
        return mpmath.mpf(x)
    return mpmath.mpf(x.numerator) / x.denominator


def _aitken(x0, x1, x2):
    d = x2 - 2 * x1 + x0
    if d == 0:
        return x2
    return x2 - (x2 - x1) ** 2 / d


def ratio_limit(
    rule: RecurrenceRule,
    init: Sequence,
    tol: float = 1e-12,
    max_terms: int = 10_000,
    dps: int = DEFAULT_DPS,
):
    """Limit of ``u_{n+1}/u_n`` by successive ratios with Aitken acceleration.

    Terms are generated exactly; ratios are formed at ``dps`` digits. Stops once
    three consecutive accelerated estimates agree within ``tol / 10``.
    """
    if any(q <= 0 for q in rule.coeffs):
        raise ValueError("ratio_limit requires all-positive coefficients")
    if all(_exact(t) == 0 for t in init):
        raise ValueError("initial terms are all zero")
    if len(init) < rule.order:
        raise ValueError(f"need at least {rule.order} initial terms, got {len(init)}")
    terms = [_exact(t) for t in init]
    tol = mpmath.mpf(tol)
    with mpmath.workdps(dps):
        ratios = []
        accel = []
        while len(terms) < max_terms:
            terms.append(rule.apply(terms, len(terms)))
            a, b = terms[-2], terms[-1]
            if a == 0:
                continue
            ratios.append(_mp(b) / _mp(a))
            if len(ratios) >= 3:
                accel.append(_aitken(*ratios[-3:]))
            if len(accel) >= 3 and len(ratios) > 2 * rule.order:
                e0, e1, e2 = accel[-3:]
                if abs(e2 - e1) < tol / 10 and abs(e1 - e0) < tol / 10:
                    return +e2
        raise ConvergenceError(
            f"ratio of {render_rule(rule)} did not settle within {max_terms} terms"
        )
