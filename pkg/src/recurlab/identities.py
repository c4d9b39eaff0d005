"""j-Fibonacci / j-Lucas numbers and an exact verifier for identities between them.

Identities are written in a small term language (see :class:`Identity`) so that
single-edit variants (sign flips, subscript shifts, dropped parameters,
exponent changes) can be enumerated mechanically by :func:`discover_correction`.
"""

from __future__ import annotations

import csv
import io
import itertools
import json
import threading
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

# --- sequences -----------------------------------------------------------------


class JFLPair:
    """F_(j,n) and L_(j,n) for every integer n, filled lazily in both directions.

    F_(j,1) = 1, F_(j,2) = j; L_(j,1) = j, L_(j,2) = j^2 + 2;
    both satisfy u_n = u_(n-2) + j u_(n-1). Fills are serialized by a lock so an
    instance can be shared between threads.
    """

    def __init__(self, j: int):
        if j < 1:
            raise ValueError("j must be a positive integer")
        self.j = j
        self.fib: dict[int, int] = {1: 1, 2: j}
        self.lucas: dict[int, int] = {1: j, 2: j * j + 2}
        self._lock = threading.Lock()

    def _get(self, table: dict[int, int], n: int) -> int:
        v = table.get(n)
        if v is not None:
            return v
        with self._lock:
            j = self.j
            hi = max(table)
            while hi < n:
                table[hi + 1] = table[hi - 1] + j * table[hi]
                hi += 1
            lo = min(table)
            while lo > n:
                # u_(lo-1) = u_(lo+1) - j u_lo
                table[lo - 1] = table[lo + 1] - j * table[lo]
                lo -= 1
            return table[n]

    def F(self, n: int) -> int:
        return self._get(self.fib, n)

    def L(self, n: int) -> int:
        return self._get(self.lucas, n)


_PAIRS: dict[int, JFLPair] = {}
_PAIRS_LOCK = threading.Lock()


def jfl_pair(j: int) -> JFLPair:
    """Shared per-j instance."""
    p = _PAIRS.get(j)
    if p is None:
        with _PAIRS_LOCK:
            p = _PAIRS.setdefault(j, JFLPair(j))
    return p


def jfib(j: int, n: int) -> int:
    return jfl_pair(j).F(n)


def jlucas(j: int, n: int) -> int:
    return jfl_pair(j).L(n)


# --- term language ---------------------------------------------------------------


@dataclass(frozen=True)
class Lin:
    """Integer linear form sum(c * var) + const."""

    coefs: tuple[tuple[str, int], ...] = ()
    const: int = 0

    @classmethod
    def of(cls, const: int = 0, **coefs: int) -> Lin:
        return cls(tuple(sorted((v, c) for v, c in coefs.items() if c)), const)

    def __call__(self, env: Mapping[str, int]) -> int:
        return self.const + sum(c * env[v] for v, c in self.coefs)

    def shifted(self, d: int) -> Lin:
        return Lin(self.coefs, self.const + d)

    def without(self, var: str) -> Lin:
        return Lin(tuple((v, c) for v, c in self.coefs if v != var), self.const)

    @property
    def variables(self) -> tuple[str, ...]:
        return tuple(v for v, _ in self.coefs)

    def __str__(self) -> str:
        out = ""
        for v, c in self.coefs:
            s = v if abs(c) == 1 else f"{abs(c)}{v}"
            out += ("-" if c < 0 else "+") + s
        if self.const or not out:
            out += f"{self.const:+d}"
        return out[1:] if out.startswith("+") else out


def _jpoly_str(c: tuple[int, ...]) -> str:
    parts = []
    for e, a in enumerate(c):
        if a:
            mono = "" if e == 0 else ("j" if e == 1 else f"j^{e}")
            if mono and abs(a) == 1:
                parts.append(("-" if a < 0 else "+") + mono)
            else:
                parts.append(f"{a:+d}" + mono)
    s = "".join(reversed(parts)) if parts else "0"
    return s[1:] if s.startswith("+") else s


def _jpoly(c: tuple[int, ...], j: int) -> int:
    return sum(a * j**e for e, a in enumerate(c))


@dataclass(frozen=True)
class Factor:
    seq: str  # "F" or "L"
    index: Lin
    power: int = 1

    def __str__(self) -> str:
        s = f"{self.seq}({self.index})"
        return s if self.power == 1 else f"{s}^{self.power}"


@dataclass(frozen=True)
class Term:
    """sign * jcoef(j) * (-1)^parity * prod(factors), optionally summed over sum_var."""

    sign: int = 1
    factors: tuple[Factor, ...] = ()
    jcoef: tuple[int, ...] = (1,)
    parity: Lin | None = None
    sum_var: str | None = None
    sum_lo: Lin | None = None
    sum_hi: Lin | None = None

    def value(self, pair: JFLPair, env: Mapping[str, int]) -> int:
        if self.sum_var is not None:
            lo, hi = self.sum_lo(env), self.sum_hi(env)
            return sum(self._value1(pair, {**env, self.sum_var: k}) for k in range(lo, hi + 1))
        return self._value1(pair, env)

    def _value1(self, pair, env) -> int:
        v = self.sign * _jpoly(self.jcoef, pair.j)
        if self.parity is not None and self.parity(env) % 2:
            v = -v
        for f in self.factors:
            x = pair.F(f.index(env)) if f.seq == "F" else pair.L(f.index(env))
            v *= x**f.power
        return v

    def __str__(self) -> str:
        parts = []
        if self.jcoef != (1,):
            jc = _jpoly_str(self.jcoef)
            parts.append(jc if len([a for a in self.jcoef if a]) == 1 else f"({jc})")
        if self.parity is not None:
            parts.append(f"(-1)^({self.parity})")
        parts += [str(f) for f in self.factors]
        body = "*".join(parts) if parts else "1"
        if self.sum_var is not None:
            body = f"sum[{self.sum_var}={self.sum_lo}..{self.sum_hi}] {body}"
        return body


@dataclass(frozen=True)
class Side:
    terms: tuple[Term, ...]
    divisor: tuple[int, ...] = (1,)  # polynomial in j dividing the whole side

    def value(self, pair: JFLPair, env) -> tuple[Fraction, bool]:
        """(value, exact) where exact is False when the division leaves a remainder."""
        num = sum(t.value(pair, env) for t in self.terms)
        d = _jpoly(self.divisor, pair.j)
        if d == 0:
            return Fraction(0), False
        return Fraction(num, d), num % d == 0

    def __str__(self) -> str:
        s = ""
        for t in self.terms:
            s += (" - " if t.sign < 0 else " + ") + str(t)
        s = s[3:] if s.startswith(" + ") else "-" + s[3:]
        if self.divisor != (1,):
            s = f"[{s}]/({_jpoly_str(self.divisor)})"
        return s


@dataclass(frozen=True)
class Identity:
    id: str
    lhs: Side
    rhs: Side
    params: tuple[str, ...]
    quote: str = ""

    def __str__(self) -> str:
        return f"{self.lhs} = {self.rhs}"

    def check(self, j: int, env: Mapping[str, int]) -> tuple[Fraction, Fraction, bool, str]:
        pair = jfl_pair(j)
        lv, lex = self.lhs.value(pair, env)
        rv, rex = self.rhs.value(pair, env)
        note = ""
        if not (lex and rex):
            note = "non-exact division"
        return lv, rv, lex and rex and lv == rv, note


def F(idx: Lin, power: int = 1) -> Factor:
    return Factor("F", idx, power)


def L(idx: Lin, power: int = 1) -> Factor:
    return Factor("L", idx, power)


def T(*factors: Factor, sign: int = 1, j: tuple[int, ...] = (1,), parity: Lin | None = None, **kw) -> Term:
    return Term(sign, tuple(factors), j, parity, **kw)


def S(*terms: Term, div: tuple[int, ...] = (1,)) -> Side:
    return Side(tuple(terms), div)


n_, m_, r_, a_, b_, c_ = (Lin.of(**{v: 1}) for v in "nmrabc")
J2P4 = (4, 0, 1)  # j^2 + 4
JDIV = (0, 1)  # j


def _n(k: int = 0) -> Lin:
    return n_.shifted(k)


def _catalogue() -> tuple[dict[str, Identity], dict[str, Identity]]:
    """(printed, reference) forms keyed by identity id."""
    two_n = Lin.of(n=2)
    three_n = Lin.of(n=3)
    mpn = Lin.of(m=1, n=1)
    mmn = Lin.of(m=1, n=-1)
    d_ = Lin.of(a=1, b=1, c=-1)
    P: dict[str, Identity] = {}
    P["III"] = Identity("III", S(T(F(two_n))), S(T(L(n_), F(n_))), ("n",), "F(j,2n) = L(j,n) F(j,n)")
    P["IV"] = Identity("IV", S(T(F(mpn))), S(T(F(m_), L(n_)), T(L(m_), F(n_)), div=(2,)), ("m", "n"),
                       "F(j,m+n) = (F(j,m) L(j,n) + L(j,m) F(j,n))/2")
    P["V"] = Identity("V", S(T(F(m_), L(n_))), S(T(F(mpn)), T(F(mmn), parity=n_)), ("m", "n"),
                      "F(j,m) L(j,n) = F(j,m+n) + (-1)^n F(j,m-n)")
    P["VI"] = Identity("VI", S(T(F(mpn))), S(T(L(_n(-1))), T(L(_n(1))), div=J2P4), ("m", "n"),
                       "F(j,m+n) = (L(j,n-1) + L(j,n+1))/(j^2+4)")
    P["VII"] = Identity("VII", S(T(L(n_, 2)), T(F(n_, 2), j=J2P4)), S(T(j=(4,), parity=n_)), ("n",),
                        "L(j,n)^2 + (j^2+4) F(j,n)^2 = 4(-1)^n")
    P["VIII"] = Identity("VIII", S(T(F(m_), F(n_))), S(T(L(mpn)), T(L(mmn), sign=-1, parity=n_), div=J2P4),
                         ("m", "n"), "F(j,m) F(j,n) = [L(j,m+n) - (-1)^n L(j,m-n)]/(j^2+4)")
    P["IX"] = Identity("IX", S(T(F(m_), L(n_))), S(T(F(mpn)), T(F(mmn), parity=n_)), ("m", "n"),
                       "F(j,m) L(j,n) = F(j,m+n) + (-1)^n F(j,m-n)")
    P["X"] = Identity("X", S(T(F(n_, 2))), S(T(L(two_n)), T(sign=-1, j=(2,), parity=n_), div=J2P4), ("n",),
                      "F(j,n)^2 = [L(j,2n) - 2(-1)^n]/(j^2+4)")
    P["XI"] = Identity("XI", S(T(F(two_n))), S(T(F(_n(1), 2)), T(F(_n(-1), 2), sign=-1), div=JDIV), ("n",),
                       "F(j,2n) = j^-1 [F(j,n+1)^2 - F(j,n-1)^2]")
    P["XII_1"] = Identity("XII_1", S(T(F(two_n))), S(T(F(n_), F(_n(1))), T(F(n_), F(_n(-1)))), ("n",),
                          "F(j,2n) = F(j,n)(F(j,n+1) + F(j,n-1))")
    P["XII_2"] = Identity("XII_2", S(T(F(two_n))), S(T(F(n_), F(_n(1)), j=JDIV), T(F(n_), F(_n(-1)), j=(2,))),
                          ("n",), "F(j,2n) = F(j,n)(j F(j,n+1) + 2 F(j,n-1))")
    P["XII_3"] = Identity("XII_3", S(T(F(two_n))), S(T(F(n_), F(_n(1)), j=(2,)), T(F(n_), F(n_), sign=-1, j=JDIV)),
                          ("n",), "F(j,2n) = F(j,n)(2 F(j,n+1) - j F(j,n))")
    P["XIII"] = Identity("XIII", S(T(F(three_n))),
                         S(T(F(_n(1), 3)), T(F(n_, 3), j=JDIV), T(F(_n(-1), 3), sign=-1), div=JDIV), ("n",),
                         "F(j,3n) = j^-1 (F(j,n+1)^3 + j F(j,n)^3 - F(j,n-1)^3)")
    k_ = Lin.of(k=1)
    P["XIV_sum"] = Identity("XIV_sum", S(T(F(k_, 2), sum_var="k", sum_lo=Lin.of(1), sum_hi=n_)),
                            S(T(F(n_), F(_n(1))), div=JDIV), ("n",),
                            "sum_{k=1}^n F(j,k)^2 = j^-1 F(j,n) F(j,n+1)")
    P["XV"] = Identity("XV", S(T(F(a_), F(b_)), T(F(c_), F(d_), sign=-1)),
                       S(T(F(Lin.of(a=1, r=-1)), F(Lin.of(b=1, r=-1)), parity=r_),
                         T(F(Lin.of(c=1, r=-1)), F(Lin.of(a=1, b=1, c=-1, r=-1)), sign=-1, parity=r_)),
                       ("a", "b", "c", "r"),
                       "F(j,a)F(j,b) - F(j,c)F(j,d) = (-1)^r (F(j,a-r)F(j,b-r) - F(j,c-r)F(j,d-r)), d = a+b-c")
    P["CATALAN"] = Identity("CATALAN", S(T(F(n_, 2)), T(F(Lin.of(n=1, r=-1)), F(Lin.of(n=1, r=1)), sign=-1)),
                            S(T(F(r_, 2), parity=Lin.of(n=1, r=-1))), ("n", "r"),
                            "F_n^2 - F_(n-r) F_(n+r) = (-1)^(n-r) F_r^2")
    P["CASSINI"] = Identity("CASSINI", S(T(F(_n(-1)), F(_n(1))), T(F(n_), sign=-1)), S(T(parity=n_)), ("n",),
                            "F_(n-1) F_(n+1) - F_n = (-1)^n")
    P["GELIN"] = Identity("GELIN", S(T(F(n_, 4)), T(F(_n(1)), F(_n(-1)), F(_n(2)), F(_n(-2)), sign=-1)),
                          S(T(F(n_, 2), j=(-1, 0, 1), parity=n_), T(j=(0, 0, 1))), ("n",),
                          "F(j,n)^4 - F(j,n+1)F(j,n-1)F(j,n+2)F(j,n-2) = (-1)^n (j^2-1) F(j,n)^2 + j^2")

    R = dict(P)
    R["VI"] = replace(P["VI"], lhs=S(T(F(n_))))
    R["VII"] = replace(P["VII"], lhs=S(T(L(n_, 2)), T(F(n_, 2), sign=-1, j=J2P4)))
    R["XII_2"] = replace(P["XII_2"], rhs=S(T(F(n_), F(n_), j=JDIV), T(F(n_), F(_n(-1)), j=(2,))))
    R["CASSINI"] = replace(P["CASSINI"], lhs=S(T(F(_n(-1)), F(_n(1))), T(F(n_, 2), sign=-1)))
    return P, R


PRINTED, REFERENCE = _catalogue()
GROUPS = {"XII": ("XII_1", "XII_2", "XII_3")}
IDENTITY_IDS = tuple(PRINTED) + ("XVIa", "XVIb")
CORRECTED = tuple(k for k in PRINTED if PRINTED[k] != REFERENCE[k])


def identity(id: str, form: str = "reference") -> Identity:
    table = {"reference": REFERENCE, "printed": PRINTED}.get(form)
    if table is None:
        raise ValueError("form must be 'reference' or 'printed'")
    try:
        return table[id]
    except KeyError:
        raise KeyError(f"unknown identity {id!r}") from None


# --- verification ---------------------------------------------------------------


@dataclass(frozen=True)
class IdentityCase:
    id: str
    j: int
    bindings: tuple[tuple[str, int], ...]
    lhs: Fraction
    rhs: Fraction
    passed: bool
    note: str = ""

    def to_dict(self) -> dict:
        return {"id": self.id, "j": self.j, "bindings": dict(self.bindings),
                "lhs": str(self.lhs), "rhs": str(self.rhs), "pass": self.passed, "note": self.note}


DEFAULT_RANGES: dict[str, Sequence[int]] = {
    "n": range(2, 21), "m": range(1, 21), "r": range(0, 5),
    "a": range(1, 11), "b": range(1, 11), "c": range(1, 11),
}


def _grid(params: Sequence[str], ranges: Mapping[str, Iterable[int]]):
    axes = [list(ranges.get(p, DEFAULT_RANGES[p])) for p in params]
    for combo in itertools.product(*axes):
        yield dict(zip(params, combo))


def _evaluate(ident: Identity, j_range, ranges, label: str | None = None) -> list[IdentityCase]:
    out = []
    for j in j_range:
        for env in _grid(ident.params, ranges):
            lv, rv, ok, note = ident.check(j, env)
            out.append(IdentityCase(label or ident.id, j, tuple(env.items()), lv, rv, ok, note))
    return out


def verify_identity(id: str, j_range: Iterable[int] = range(1, 6), index_ranges: Mapping[str, Iterable[int]] | None = None,
                    form: str = "reference") -> list[IdentityCase]:
    """Exact pass/fail matrix of one identity (or group, e.g. "XII") over a parameter grid.

    ``form="printed"`` checks the text as originally stated; ``"reference"``
    uses the corrected forms for the known misprints (see :data:`CORRECTED`).
    """
    ranges = dict(index_ranges or {})
    j_range = list(j_range)
    if any(j < 1 for j in j_range):
        raise ValueError("j must be positive")
    if id in ("XVIa", "XVIb"):
        return xvi_cases(id, j_range, ranges)
    ids = GROUPS.get(id, (id,))
    out: list[IdentityCase] = []
    for i in ids:
        out += _evaluate(identity(i, form), j_range, ranges)
    return out


# --- single-edit corrections -----------------------------------------------------


def _edits_side(side: Side, where: str):
    for ti, t in enumerate(side.terms):
        terms = list(side.terms)
        terms[ti] = replace(t, sign=-t.sign)
        yield f"flip sign of {where} term {ti + 1}", replace(side, terms=tuple(terms))
        for fi, f in enumerate(t.factors):
            def with_factor(nf, ti=ti, fi=fi, t=t):
                fs = list(t.factors)
                fs[fi] = nf
                ts = list(side.terms)
                ts[ti] = replace(t, factors=tuple(fs))
                return replace(side, terms=tuple(ts))

            for d in (-1, 1):
                yield (f"shift subscript of {f} in {where} term {ti + 1} by {d:+d}",
                       with_factor(replace(f, index=f.index.shifted(d))))
            if len(f.index.variables) > 1:
                for v in f.index.variables:
                    yield (f"drop parameter {v} from {f} in {where} term {ti + 1}",
                           with_factor(replace(f, index=f.index.without(v))))
            for d in (-1, 1):
                if f.power + d >= 1:
                    yield (f"change exponent of {f} in {where} term {ti + 1} to {f.power + d}",
                           with_factor(replace(f, power=f.power + d)))


def single_edit_variants(ident: Identity):
    for desc, s in _edits_side(ident.lhs, "left"):
        yield desc, replace(ident, lhs=s)
    for desc, s in _edits_side(ident.rhs, "right"):
        yield desc, replace(ident, rhs=s)


MIN_CASES = 100


@dataclass
class Correction:
    id: str
    status: str  # "printed form holds" | "corrected" | "ambiguous" | "no variant passes"
    cases: int
    printed: str
    corrected: str | None = None
    edit: str | None = None
    candidates: list[tuple[str, str]] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {"id": self.id, "status": self.status, "cases": self.cases, "printed": self.printed,
                "corrected": self.corrected, "edit": self.edit,
                "candidates": [{"edit": e, "form": f} for e, f in self.candidates]}


def _passes(ident: Identity, j_range, ranges) -> tuple[bool, int]:
    n = 0
    for j in j_range:
        for env in _grid(ident.params, ranges):
            n += 1
            if not ident.check(j, env)[2]:
                return False, n
    return True, n


def discover_correction(id: str, j_range: Iterable[int] = range(1, 6),
                        index_ranges: Mapping[str, Iterable[int]] | None = None) -> Correction:
    """Search every single edit of the printed form for one that holds on the whole grid."""
    base = identity(id, "printed")
    ranges = dict(index_ranges or {})
    j_range = list(j_range)
    total = len(j_range) * sum(1 for _ in _grid(base.params, ranges))
    if total < MIN_CASES:
        raise ValueError(f"grid has {total} cases; at least {MIN_CASES} are required")
    ok, _ = _passes(base, j_range, ranges)
    if ok:
        return Correction(id, "printed form holds", total, str(base))
    found: dict[str, str] = {}
    for desc, var in single_edit_variants(base):
        key = str(var)
        if key in found.values():
            continue
        if _passes(var, j_range, ranges)[0]:
            found[desc] = key
    cands = list(found.items())
    if not cands:
        return Correction(id, "no variant passes", total, str(base))
    if len(cands) > 1:
        return Correction(id, "ambiguous", total, str(base), candidates=cands)
    edit, form = cands[0]
    return Correction(id, "corrected", total, str(base), form, edit, cands)


# --- (XVI a/b): sign of F_a F_b - F_c F_d ------------------------------------------


def _eps(t: int) -> int:
    return 1 if t >= 0 else (-1) ** (abs(t) + 1)


def xvi_reference_sign(a: int, b: int, c: int) -> int:
    """Sign s with F_a F_b - F_c F_(a+b-c) = s * F_|c-b| * F_|c-a|, valid for every j.

    Follows from F_(c+x)F_(c+y) - F_c F_(c+x+y) = (-1)^c F_x F_y and F_(-t) = (-1)^(t+1) F_t.
    """
    return (-1) ** (c % 2) * _eps(a - c) * _eps(b - c)


def _between(x, lo, hi) -> bool:
    return lo != x != hi


def xvi_case(a: int, b: int, c: int, reading: str = "as_printed") -> str | None:
    """Which printed case, 'a' or 'b', claims (a, b, c, d); 'conflict' when both; None when neither.

    ``reading="swapped"`` exchanges the words odd and even in both conditions.
    """
    d = a + b - c
    vals = (a, b, c, d)
    lo, hi = min(vals), max(vals)
    odd = lo % 2 == 1
    if reading == "swapped":
        odd = not odd
    elif reading != "as_printed":
        raise ValueError("reading must be 'as_printed' or 'swapped'")
    in_a = (odd and _between(a, lo, hi)) or (not odd and _between(c, lo, hi))
    in_b = (not odd and _between(a, lo, hi)) or (odd and _between(c, lo, hi))
    if in_a and in_b:
        return "conflict"
    return "a" if in_a else "b" if in_b else None


def _xvi_grid(ranges):
    for env in _grid(("a", "b", "c"), ranges):
        if env["a"] + env["b"] - env["c"] >= 1:
            yield env["a"], env["b"], env["c"]


def xvi_cases(id: str, j_range, ranges=None, reading: str = "as_printed") -> list[IdentityCase]:
    """Cases the printed condition assigns to (XVI a) or (XVI b), checked against the printed sign."""
    want = id[-1]
    out = []
    for j in j_range:
        p = jfl_pair(j)
        for a, b, c in _xvi_grid(ranges or {}):
            case = xvi_case(a, b, c, reading)
            if case not in (want, "conflict"):
                continue
            d = a + b - c
            lhs = p.F(a) * p.F(b) - p.F(c) * p.F(d)
            e = abs(c - b) + abs(c - a) + (1 if want == "b" else 0)
            rhs = (-1) ** e * p.F(abs(c - b)) * p.F(abs(c - a))
            note = "both conditions hold" if case == "conflict" else ""
            out.append(IdentityCase(id, j, (("a", a), ("b", b), ("c", c), ("d", d)),
                                    Fraction(lhs), Fraction(rhs), lhs == rhs, note))
    return out


def xvi_sign_table(j_range=range(1, 6), ranges=None) -> list[dict]:
    """Brute-force sign of F_a F_b - F_c F_d relative to F_|c-b| F_|c-a|, beside both printed readings."""
    rows = []
    for j in j_range:
        p = jfl_pair(j)
        for a, b, c in _xvi_grid(ranges or {}):
            d = a + b - c
            lhs = p.F(a) * p.F(b) - p.F(c) * p.F(d)
            mag = p.F(abs(c - b)) * p.F(abs(c - a))
            if mag == 0:
                continue
            if lhs not in (mag, -mag):
                raise AssertionError(f"magnitude law broken at j={j}, {(a, b, c, d)}")
            s = 1 if lhs == mag else -1
            row = {"j": j, "a": a, "b": b, "c": c, "d": d, "sign": s,
                   "reference_sign": xvi_reference_sign(a, b, c)}
            for reading in ("as_printed", "swapped"):
                case = xvi_case(a, b, c, reading)
                if case in ("a", "b"):
                    pred = (-1) ** (abs(c - b) + abs(c - a) + (case == "b"))
                    row[reading] = case
                    row[reading + "_ok"] = pred == s
                else:
                    row[reading] = case
                    row[reading + "_ok"] = None
            rows.append(row)
    return rows


def xvi_summary(j_range=range(1, 6), ranges=None) -> dict:
    rows = xvi_sign_table(j_range, ranges)
    out = {"cases": len(rows), "reference_matches": sum(r["sign"] == r["reference_sign"] for r in rows)}
    for reading in ("as_printed", "swapped"):
        covered = [r for r in rows if r[reading + "_ok"] is not None]
        out[reading] = {
            "covered": len(covered),
            "correct": sum(1 for r in covered if r[reading + "_ok"]),
            "conflicts": sum(1 for r in rows if r[reading] == "conflict"),
            "uncovered": sum(1 for r in rows if r[reading] is None),
        }
    return out


# --- misc checks and output ----------------------------------------------------------


def negative_index_symmetry(j: int, n_max: int = 30) -> bool:
    """F_(j,-n) = (-1)^(n+1) F_(j,n) for 1 <= n <= n_max."""
    p = jfl_pair(j)
    return all(p.F(-n) == (-1) ** (n + 1) * p.F(n) for n in range(1, n_max + 1))


def cases_to_json(cases: Sequence[IdentityCase]) -> str:
    return json.dumps([c.to_dict() for c in cases], indent=1)


def cases_to_csv(cases: Sequence[IdentityCase]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["identity", "j", "indices", "pass"])
    for c in cases:
        w.writerow([c.id, c.j, ";".join(f"{k}={v}" for k, v in c.bindings), int(c.passed)])
    return buf.getvalue()
