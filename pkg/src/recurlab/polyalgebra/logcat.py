"""Logarithmic forms Log[1/(+-(x^e - c))]/Log(x) and the catalog of their special values."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import mpmath

from .._precision import DEFAULT_DPS
from .poly import IntPolynomial, parse_poly
from .psi import SilverMean, phi, verify_root_membership
from .roots import dominant_root


class LogDomainError(ValueError):
    def __init__(self, index: int, value):
        super().__init__(f"Log argument of atom {index} is not positive ({mpmath.nstr(value, 10)})")
        self.index = index
        self.value = value


def _mp(c):
    if isinstance(c, Fraction):
        return mpmath.mpf(c.numerator) / c.denominator
    return mpmath.mpf(c)


@dataclass(frozen=True)
class LogAtom:
    """sign * Log[1/(orientation * (x**power - shift))] / Log(x)."""

    shift: object
    orientation: int = 1
    sign: int = 1
    power: int = 1

    def __post_init__(self):
        if self.orientation not in (1, -1) or self.sign not in (1, -1):
            raise ValueError("orientation and sign must be +1 or -1")
        if self.power < 1:
            raise ValueError("power must be a positive integer")

    def argument(self, x):
        return self.orientation * (x**self.power - _mp(self.shift))


@dataclass(frozen=True)
class LogExpr:
    atoms: tuple[LogAtom, ...]

    def __call__(self, x, dps: int = DEFAULT_DPS):
        return eval_log_expr(self, x, dps)

    def __str__(self) -> str:
        parts = []
        for a in self.atoms:
            xe = "x" if a.power == 1 else f"x^{a.power}"
            inner = f"{xe}-{a.shift}" if a.orientation == 1 else f"{a.shift}-{xe}"
            parts.append(("-" if a.sign < 0 else "+") + f"Log[1/({inner})]/Log(x)")
        s = "".join(parts)
        return s[1:] if s.startswith("+") else s


def log_ratio(shift, orientation: int = 1, power: int = 1) -> LogExpr:
    """Single-atom expression Log[1/(+-(x^power - shift))]/Log(x)."""
    return LogExpr((LogAtom(shift, orientation, 1, power),))


def eval_log_expr(expr: LogExpr, x, dps: int = DEFAULT_DPS):
    with mpmath.workdps(dps):
        x = mpmath.mpf(x)
        if x <= 0 or x == 1:
            raise ValueError("x must be positive and different from 1")
        lx = mpmath.log(x)
        total = mpmath.mpf(0)
        for i, atom in enumerate(expr.atoms):
            arg = atom.argument(x)
            if arg <= 0:
                raise LogDomainError(i, arg)
            total += atom.sign * mpmath.log(1 / arg) / lx
        return total


# --- catalog -------------------------------------------------------------------


@dataclass(frozen=True)
class CatalogEntry:
    identity_id: str
    description: str
    inputs: dict
    expected: Fraction
    observe: Callable[[int], mpmath.mpf]


def _kbonacci_limit(n: int, dps: int):
    p = IntPolynomial([-1] * n + [1])
    return dominant_root(p, 1, 2, tol=Fraction(1, 10 ** (dps // 2)), dps=dps)


def _lucas_j(j: int, n: int) -> int:
    # j-Lucas numbers L_j(1) = j, L_j(2) = j^2 + 2, L_j(n) = L_j(n-2) + j L_j(n-1)
    a, b = 2, j
    for _ in range(n - 1):
        a, b = b, a + j * b
    return b if n >= 1 else a


def _log_entry(iid, desc, base, expr, expected, inputs):
    def observe(dps):
        with mpmath.workdps(dps):
            return eval_log_expr(expr, base(dps), dps)

    return CatalogEntry(iid, desc, {"expr": str(expr), **inputs}, Fraction(expected), observe)


def log_catalog(silver_k: range = range(1, 5), lucas_n: range = range(1, 11)) -> list[CatalogEntry]:
    """Every logarithmic identity checked by :func:`verify_log_catalog`."""
    E: list[CatalogEntry] = []

    def pw(k, e):
        return lambda dps: phi(k, dps + 10) ** e

    for k in range(1, 7):
        E.append(_log_entry(
            "2deg" if k == 4 else f"I_k{k}",
            f"phi_{k} solves Log[1/(x-1)]/Log(x) = {k}",
            pw(k, 1), log_ratio(1), k, {"x": f"phi_{k}"}))
    for n in range(2, 9):
        E.append(_log_entry(
            f"intro_n{n}", f"{n}-bonacci limit solves Log[1/(2-x)]/Log(x) = {n}",
            lambda dps, n=n: _kbonacci_limit(n, dps + 10), log_ratio(2, -1), n,
            {"x": f"{n}-bonacci limit"}))
    for n in lucas_n:
        o = (-1) ** (n + 1)
        E.append(_log_entry(
            f"II_log_n{n}", f"phi_1^{n} solves Log[1/(+-(x - L_{n}))]/Log(x) = 1",
            pw(1, n), log_ratio(_lucas_j(1, n), o), 1, {"x": f"phi_1^{n}"}))

        def direct(dps, n=n):
            with mpmath.workdps(dps):
                f = phi(1, dps + 10) ** n
                lhs = 1 / ((-1) ** (n + 1) * f + (-1) ** n * _lucas_j(1, n))
                return lhs / f

        E.append(CatalogEntry(f"II_n{n}", f"1/((-1)^{n+1} phi^{n} + (-1)^{n} L_{n}) = phi^{n} (ratio)",
                              {"n": n}, Fraction(1), direct))
    for k in silver_k:
        for n in lucas_n:
            o = (-1) ** (n + 1)
            L = _lucas_j(k, n)
            base = lambda dps, k=k: SilverMean.of(k, dps + 10).value
            E.append(_log_entry(
                f"silver_log_k{k}_n{n}", f"S_{k} solves Log[1/(+-(x^{n} - {L}))]/Log(x) = {n}",
                base, log_ratio(L, o, n), n, {"x": f"S_{k}", "L": L}))

            def sdirect(dps, k=k, n=n, L=L):
                with mpmath.workdps(dps):
                    s = SilverMean.of(k, dps + 10).value ** n
                    return (1 / ((-1) ** (n + 1) * s + (-1) ** n * L)) / s

            E.append(CatalogEntry(f"silver_k{k}_n{n}", f"1/[(-1)^{n+1} S_{k}^{n} + (-1)^{n} L_{k}({n})] = S_{k}^{n} (ratio)",
                                  {"k": k, "n": n, "L": L}, Fraction(1), sdirect))

    greek = [
        ("alpha", 2, 2, LogExpr((LogAtom(2),)), Fraction(5, 2)),
        ("beta", 2, 3, LogExpr((LogAtom(3),)), Fraction(5, 3)),
        ("chi", 2, 4, LogExpr((LogAtom(2), LogAtom(5, -1, -1))), Fraction(-5, 4)),
        ("delta", 3, 2, LogExpr((LogAtom(2, -1), LogAtom(1, 1, -1))), Fraction(7, 2)),
        ("epsilon", 4, 2, LogExpr((LogAtom(1),)), Fraction(1, 2)),
        ("gamma", 4, 3, LogExpr((LogAtom(2),)), Fraction(4, 3)),
        ("eta", 4, 4, LogExpr((LogAtom(3),)), Fraction(9, 4)),
        ("sigma", 4, 5, LogExpr((LogAtom(4),)), Fraction(9, 5)),
        ("tau", 4, 2, LogExpr((LogAtom(2, -1), LogAtom(1, 1, -1))), Fraction(2)),
    ]
    for name, k, e, expr, val in greek:
        E.append(_log_entry(name, f"x = phi_{k}^{e}: {expr} = {val}", pw(k, e), expr, val,
                            {"x": f"phi_{k}^{e}"}))
    return E


def verify_log_catalog(dps: int = DEFAULT_DPS, tol=1e-12, entries: list[CatalogEntry] | None = None) -> list[dict]:
    """Evaluate each catalog identity; failures are returned, not raised."""
    out = []
    tol = mpmath.mpf(tol)
    for e in entries if entries is not None else log_catalog():
        with mpmath.workdps(dps):
            try:
                observed = e.observe(dps)
                expected = _mp(e.expected)
                residual = abs(observed - expected)
                ok = bool(residual < tol)
                obs = mpmath.nstr(observed, 20)
                res = mpmath.nstr(residual, 5)
            except LogDomainError as exc:
                obs, res, ok = None, None, False
                e = CatalogEntry(e.identity_id, e.description + f" [{exc}]", e.inputs, e.expected, e.observe)
        out.append({
            "identity_id": e.identity_id,
            "inputs": e.inputs,
            "expected": str(e.expected),
            "observed": obs,
            "residual": res,
            "pass": ok,
        })
    return out


# polynomials listed as sharing a root with phi_k (k -> list), plus the eta = phi_4^2 pair
ROOT_CLAIMS: dict[int, list[str]] = {
    1: ["x^2-x-1", "x^3-2x-1", "x^4-x^2-2x-1", "x^5-x^3-x^2-2x-1",
        "x^6-x^4-x^3-x^2-2x-1", "x^7-x^5-x^4-x^3-x^2-2x-1"],
    2: ["x^3-x^2-1", "x^4-x^2-x-1", "x^5-2x^2-x-1"],
    3: ["x^4-x^3-1", "x^5-x^3-x-1", "x^6-x^3-x^2-x-1", "x^9-x^7-x^5-x^3-x-1"],
    4: ["x^3-x-1", "x^5-x^2-x-1", "x^5-x^4-1", "x^6-x^4-x-1", "x^7-x^4-x^2-x-1", "x^8-x^7-x-1",
        "x^8-x^4-x^3-x^2-x-1", "x^9-2x^4-x^3-x^2-x-1", "x^10-x^9-x^4-1",
        "x^10-x^7-x^6-x^4-1", "x^10-x^5-2x^4-x^3-x^2-x-1"],
    5: ["x^6-x^5-1", "x^7-x^5-x-1", "x^8-x^5-x^2-x-1", "x^9-x^5-x^3-x^2-x-1",
        "x^10-x^5-x^4-x^3-x^2-x-1", "x^11-2x^5-x^4-x^3-x^2-x-1",
        "x^13-x^7-x^6-2x^5-x^4-x^3-x^2-x-1"],
}
ETA_CLAIMS = ["x^4-x^3-x^2-1", "x^8-x^7-x^6-x^3-x^2-1"]


def verify_root_claims(dps: int = DEFAULT_DPS) -> list[dict]:
    """Exact divisibility check of every listed 'phi_k is also a root of' polynomial."""
    out = []
    for k, polys in ROOT_CLAIMS.items():
        for text in polys:
            p = parse_poly(text)
            m = verify_root_membership(p, k, dps)
            out.append({
                "identity_id": f"root_phi{k}",
                "inputs": {"poly": text, "k": k},
                "expected": "member",
                "observed": f"quotient {m.quotient}" if m.member else "not divisible",
                "residual": mpmath.nstr(m.residual, 5),
                "pass": m.member,
            })
    eta_min = parse_poly(ETA_CLAIMS[0])
    for text in ETA_CLAIMS:
        p = parse_poly(text)
        qr = p.divmod_exact(eta_min)
        ok = qr is not None and qr[1].is_zero()
        with mpmath.workdps(dps):
            res = abs(p(phi(4, dps) ** 2))
        out.append({
            "identity_id": "root_eta",
            "inputs": {"poly": text, "x": "phi_4^2"},
            "expected": "member",
            "observed": f"quotient {qr[0]}" if ok else "not divisible",
            "residual": mpmath.nstr(res, 5),
            "pass": ok,
        })
    return out
