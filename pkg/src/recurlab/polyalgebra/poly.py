"""Dense integer polynomials with exact rational helpers."""

from __future__ import annotations

import json
import re
from fractions import Fraction
from typing import Iterable, Sequence

import mpmath


def _strip(coeffs: Sequence) -> tuple:
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


class IntPolynomial:
    """Polynomial with arbitrary-precision integer coefficients, constant term first.

    The zero polynomial is the empty coefficient tuple.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        c = []
        for a in coeffs:
            if isinstance(a, Fraction):
                if a.denominator != 1:
                    raise ValueError(f"non-integer coefficient {a}")
                a = a.numerator
            if not isinstance(a, int):
                if float(a) != int(a):
                    raise ValueError(f"non-integer coefficient {a!r}")
                a = int(a)
            c.append(a)
        self.coeffs = _strip(c)

    @classmethod
    def monomial(cls, degree: int, coeff: int = 1) -> IntPolynomial:
        return cls([0] * degree + [coeff])

    @classmethod
    def from_terms(cls, terms: dict[int, int]) -> IntPolynomial:
        """Build from a ``{exponent: coefficient}`` mapping."""
        if not terms:
            return cls()
        c = [0] * (max(terms) + 1)
        for e, a in terms.items():
            c[e] += a
        return cls(c)

    @classmethod
    def from_json(cls, text: str) -> IntPolynomial:
        return cls(json.loads(text))

    def to_json(self) -> str:
        return json.dumps(list(self.coeffs))

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other) -> bool:
        if isinstance(other, IntPolynomial):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"IntPolynomial({list(self.coeffs)})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for e in range(self.degree, -1, -1):
            a = self.coeffs[e]
            if a == 0:
                continue
            sign = "-" if a < 0 else "+"
            mag = abs(a)
            if e == 0:
                body = str(mag)
            else:
                xe = "x" if e == 1 else f"x^{e}"
                body = xe if mag == 1 else f"{mag}*{xe}"
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        out = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __add__(self, other: IntPolynomial) -> IntPolynomial:
        n = max(len(self.coeffs), len(other.coeffs))
        a = list(self.coeffs) + [0] * (n - len(self.coeffs))
        for i, b in enumerate(other.coeffs):
            a[i] += b
        return IntPolynomial(a)

    def __neg__(self) -> IntPolynomial:
        return IntPolynomial([-a for a in self.coeffs])

    def __sub__(self, other: IntPolynomial) -> IntPolynomial:
        return self + (-other)

    def __mul__(self, other) -> IntPolynomial:
        if isinstance(other, int):
            return IntPolynomial([a * other for a in self.coeffs])
        if not self.coeffs or not other.coeffs:
            return IntPolynomial()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPolynomial(out)

    __rmul__ = __mul__

    def shift(self, k: int) -> IntPolynomial:
        """Multiply by x**k."""
        if not self.coeffs:
            return self
        return IntPolynomial([0] * k + list(self.coeffs))

    def derivative(self) -> IntPolynomial:
        return IntPolynomial([i * a for i, a in enumerate(self.coeffs)][1:])

    def __call__(self, x):
        """Horner evaluation; works for int, Fraction and mpmath numbers."""
        acc = 0
        for a in reversed(self.coeffs):
            acc = acc * x + a
        return acc

    def divmod_exact(self, other: IntPolynomial) -> tuple[IntPolynomial, IntPolynomial] | None:
        """Integer division with remainder, or None when the quotient is not integral.

        Always succeeds when ``other`` has leading coefficient +-1.
        """
        q, r = rat_divmod(list(map(Fraction, self.coeffs)), list(map(Fraction, other.coeffs)))
        if any(c.denominator != 1 for c in q) or any(c.denominator != 1 for c in r):
            return None
        return IntPolynomial(q), IntPolynomial(r)

    def divides(self, other: IntPolynomial) -> bool:
        """True iff self divides ``other`` over the rationals."""
        _, r = rat_divmod(list(map(Fraction, other.coeffs)), list(map(Fraction, self.coeffs)))
        return not r

    def primitive(self) -> IntPolynomial:
        """Content-free version with positive leading coefficient."""
        from math import gcd

        if not self.coeffs:
            return self
        g = 0
        for a in self.coeffs:
            g = gcd(g, a)
        if self.leading < 0:
            g = -g
        return IntPolynomial([a // g for a in self.coeffs])

    def gcd(self, other: IntPolynomial) -> IntPolynomial:
        """Primitive gcd over the rationals."""
        g = rat_gcd(list(map(Fraction, self.coeffs)), list(map(Fraction, other.coeffs)))
        return IntPolynomial(clear_denominators(g)).primitive()

    def squarefree_part(self) -> IntPolynomial:
        if self.degree < 1:
            return self
        g = self.gcd(self.derivative())
        if g.degree < 1:
            return self.primitive()
        q, r = rat_divmod(list(map(Fraction, self.coeffs)), list(map(Fraction, g.coeffs)))
        assert not r
        return IntPolynomial(clear_denominators(q)).primitive()

    def eval_mp(self, x, dps: int | None = None):
        if dps is None:
            return self(mpmath.mpf(x))
        with mpmath.workdps(dps):
            return self(mpmath.mpf(x))


# --- rational coefficient-list helpers (constant term first) -------------------


def rat_strip(c: list[Fraction]) -> list[Fraction]:
    while c and c[-1] == 0:
        c.pop()
    return c


def rat_divmod(a: list[Fraction], b: list[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    a = rat_strip(list(a))
    b = rat_strip(list(b))
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if len(a) < len(b):
        return [], a
    q = [Fraction(0)] * (len(a) - len(b) + 1)
    r = list(a)
    lb = b[-1]
    db = len(b) - 1
    while len(r) >= len(b):
        coef = r[-1] / lb
        shift = len(r) - 1 - db
        q[shift] = coef
        for i, bc in enumerate(b):
            r[shift + i] -= coef * bc
        r.pop()
        rat_strip(r)
    return rat_strip(q), r


def rat_gcd(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    a = rat_strip(list(a))
    b = rat_strip(list(b))
    while b:
        _, r = rat_divmod(a, b)
        a, b = b, r
    if not a:
        return a
    lc = a[-1]
    return [c / lc for c in a]


def clear_denominators(c: list[Fraction]) -> list[int]:
    from math import lcm

    d = 1
    for x in c:
        d = lcm(d, Fraction(x).denominator)
    return [int(Fraction(x) * d) for x in c]


def rat_eval(c: Sequence[Fraction], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for a in reversed(c):
        acc = acc * x + a
    return acc


_MONO = re.compile(r"([+-]?)\s*(\d*)\s*\*?\s*(?:(x)(?:\s*(?:\^|\*\*)\s*(\d+))?)?")


def parse_poly(text: str, var: str = "x") -> IntPolynomial:
    """Parse ``"x^9 - 2x^4 - x^3 + 1"``-style text (``*`` and ``**`` accepted)."""
    s = text.replace(" ", "").replace(var, "x")
    if s.endswith("=0"):
        s = s[:-2]
    terms: dict[int, int] = {}
    pos = 0
    while pos < len(s):
        m = _MONO.match(s, pos)
        if not m or m.end() == pos or (not m.group(2) and not m.group(3)):
            raise ValueError(f"cannot parse polynomial {text!r} at {pos}")
        sign = -1 if m.group(1) == "-" else 1
        coeff = int(m.group(2)) if m.group(2) else 1
        exp = (int(m.group(4)) if m.group(4) else 1) if m.group(3) else 0
        terms[exp] = terms.get(exp, 0) + sign * coeff
        pos = m.end()
    return IntPolynomial.from_terms(terms)
