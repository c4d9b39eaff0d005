"""The chains of equations x^{k+1} - x^k - 1, x^{k+2} - x^k - x - 1, ... sharing the root phi_k."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple

import mpmath

from .._precision import DEFAULT_DPS
from .poly import IntPolynomial
from .roots import dominant_root, real_roots

# x^2 - x + 1: the only factor x^{n} - x^{n-1} - 1 can split off (n = 5 mod 6)
CYCLOTOMIC_6 = IntPolynomial([1, -1, 1])


class PrecisionError(ArithmeticError):
    pass


def phi_polynomial(k: int) -> IntPolynomial:
    """x^{k+1} - x^k - 1."""
    if k < 1:
        raise ValueError("k must be >= 1")
    return IntPolynomial.from_terms({k + 1: 1, k: -1, 0: -1})


@lru_cache(maxsize=None)
def minimal_polynomial(k: int) -> IntPolynomial:
    """Minimal polynomial of phi_k: x^{k+1} - x^k - 1 with any x^2 - x + 1 factor removed."""
    p = phi_polynomial(k)
    qr = p.divmod_exact(CYCLOTOMIC_6)
    if qr is not None and qr[1].is_zero():
        return qr[0]
    return p


def is_phi_polynomial_reducible(k: int) -> bool:
    return minimal_polynomial(k) != phi_polynomial(k)


@dataclass(frozen=True)
class PhiConstant:
    k: int
    value: mpmath.mpf
    minimal_poly: IntPolynomial

    @property
    def defining_poly(self) -> IntPolynomial:
        return phi_polynomial(self.k)


def phi(k: int, dps: int = DEFAULT_DPS) -> mpmath.mpf:
    """phi_k, the root in ]1, 2[ of x^{k+1} - x^k - 1."""
    return _phi_cached(k, dps)


@lru_cache(maxsize=None)
def _phi_cached(k: int, dps: int):
    tol = Fraction(1, 10 ** (dps // 2))
    return dominant_root(phi_polynomial(k), 1, 2, tol=tol, dps=dps + 5)


def phi_constant(k: int, dps: int = DEFAULT_DPS) -> PhiConstant:
    return PhiConstant(k, phi(k, dps), minimal_polynomial(k))


@dataclass(frozen=True)
class SilverMean:
    k: int
    value: mpmath.mpf

    @classmethod
    def of(cls, k: int, dps: int = DEFAULT_DPS) -> SilverMean:
        with mpmath.workdps(dps):
            return cls(k, (k + mpmath.sqrt(k * k + 4)) / 2)

    def continued_fraction(self, terms: int = 10) -> list[int]:
        out = []
        x = self.value
        with mpmath.workdps(max(30, terms * 2)):
            for _ in range(terms):
                a = int(mpmath.floor(x))
                out.append(a)
                x = 1 / (x - a)
        return out


def build_psi(k: int, m: int) -> IntPolynomial:
    """Member m of the chain started by x^{k+1} - x^k - 1.

    Each step replaces the leading term x^{k+m} by x^{k+m+1} - x^m, adding
    coefficients when the subtracted power already occurs.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if m < 0:
        raise ValueError("m must be >= 0")
    p = dict(enumerate(phi_polynomial(k).coeffs))
    for step in range(1, m + 1):
        top = k + step
        assert p.get(top) == 1
        del p[top]
        p[top + 1] = 1
        p[step] = p.get(step, 0) - 1
    return IntPolynomial.from_terms(p)


def psi_derivative_values(k: int, m_max: int, dps: int = DEFAULT_DPS) -> list:
    """Psi'_{k,m}(phi_k) for m = 0..m_max."""
    with mpmath.workdps(dps):
        x = phi(k, dps)
        return [build_psi(k, m).derivative()(x) for m in range(m_max + 1)]


def psi_derivative_gaps(k: int, m_max: int, dps: int = DEFAULT_DPS) -> list[tuple]:
    """Consecutive gaps of Psi'_{k,m}(phi_k) and their ratios.

    Entry ``m`` (starting at 1) holds ``(gap_m, ratio_m)`` with
    ``gap_m = Psi'_{k,m} - Psi'_{k,m-1}`` and ``ratio_m = gap_{m+1} / gap_m``.
    Raises ``PrecisionError`` if a gap is not resolved at ``dps`` digits and
    ``ValueError`` if the derivative values are not strictly increasing.
    """
    if m_max < 3:
        raise ValueError("m_max must be >= 3")
    with mpmath.workdps(dps):
        vals = psi_derivative_values(k, m_max, dps)
        gaps = [b - a for a, b in zip(vals, vals[1:])]
        floor = mpmath.mpf(10) ** (-(dps // 2))
        for m, (g, v) in enumerate(zip(gaps, vals[1:]), start=1):
            if abs(g) <= floor * abs(v):
                raise PrecisionError(f"gap {m} not resolved at {dps} digits")
        if any(g <= 0 for g in gaps):
            raise ValueError("Psi' values at phi_k are not strictly increasing in m")
        return [(gaps[i], gaps[i + 1] / gaps[i]) for i in range(len(gaps) - 1)]


@dataclass
class PsiRootReport:
    k: int
    m: int
    degree: int
    roots: list
    expected: list[str]
    found: list[str]
    sigma: mpmath.mpf | None
    matches_claim: bool
    note: str = ""


def _label(r, phik, tol) -> str:
    if abs(r + 1) < tol:
        return "-1"
    if abs(r - phik) < tol:
        return "phi"
    if -1 < r < 0:
        return "sigma"
    return "other"


def statement2_prediction(k: int, m: int) -> list[str]:
    """Real roots the two-parity claim predicts for Psi_{k,m}."""
    deg = k + m + 1
    if k % 2 == 0:
        return ["-1", "phi"]
    if deg % 2 == 1:
        return ["-1", "sigma", "phi"]
    return ["sigma", "phi"]


def psi_real_roots(k: int, m: int, tol=Fraction(1, 10**15), dps: int = DEFAULT_DPS) -> PsiRootReport:
    """All real roots of Psi_{k,m}, compared against the parity claim.

    Disagreement is reported in the result, never raised.
    """
    p = build_psi(k, m)
    with mpmath.workdps(dps):
        roots = real_roots(p, tol=tol, dps=dps)
        phik = phi(k, dps)
        eps = mpmath.mpf(10) ** -(dps // 3)
        found = [_label(r, phik, eps) for r in roots]
        sig = [r for r, f in zip(roots, found) if f == "sigma"]
        # sigma should sit in ]-1, 0[; confirm by a restricted count
        if sig:
            from .roots import sturm_real_root_count

            inside = sturm_real_root_count(p, -1, Fraction(-1, 10**9))
            if inside != len(sig):
                raise AssertionError("sigma enclosure disagrees with the Sturm count")
    expected = statement2_prediction(k, m)
    ok = sorted(found) == sorted(expected)
    note = "" if ok else f"predicted {expected}, found {found}"
    return PsiRootReport(k, m, p.degree, roots, expected, found, sig[0] if sig else None, ok, note)


class Membership(NamedTuple):
    member: bool
    quotient: IntPolynomial | None
    divisor: IntPolynomial
    residual: mpmath.mpf


def verify_root_membership(p: IntPolynomial, k: int, dps: int = DEFAULT_DPS) -> Membership:
    """Does phi_k's minimal polynomial divide ``p`` exactly?

    The numeric residual |p(phi_k)| is returned as a cross-check only.
    """
    div = minimal_polynomial(k)
    qr = p.divmod_exact(div)
    member = qr is not None and qr[1].is_zero()
    with mpmath.workdps(dps):
        residual = abs(p(phi(k, dps)))
    return Membership(member, qr[0] if member else None, div, residual)


@dataclass
class SigmaRatioReport:
    k: int
    m: int
    sigma: mpmath.mpf
    printed_ratio: mpmath.mpf | None
    even_ratio: mpmath.mpf
    target: mpmath.mpf
    printed_holds: bool
    even_holds: bool


def sigma_gap_ratios(k: int, m: int, dps: int = DEFAULT_DPS, tol=1e-20) -> SigmaRatioReport:
    """Both readings of the sigma_k derivative-gap ratio for odd k.

    printed: (Psi'_{2m+4} - Psi'_{2m+2}) / (Psi'_{m+2} - Psi'_{2m})
    even:    (Psi'_{2m+4} - Psi'_{2m+2}) / (Psi'_{2m+2} - Psi'_{2m})
    each compared against sigma_k**2.
    """
    if k % 2 == 0:
        raise ValueError("sigma_k exists only for odd k")
    if m < 2:
        raise ValueError("m must be > 1")
    with mpmath.workdps(dps):
        base = build_psi(k, 0)
        sig = [r for r in real_roots(base, -1, 0, dps=dps) if -1 < r < 0]
        s = sig[0]

        def d(i):
            return build_psi(k, i).derivative()(s)

        num = d(2 * m + 4) - d(2 * m + 2)
        den_printed = d(m + 2) - d(2 * m)
        den_even = d(2 * m + 2) - d(2 * m)
        target = s * s
        printed = num / den_printed if den_printed != 0 else None
        even = num / den_even
        return SigmaRatioReport(
            k, m, s, printed, even, target,
            printed is not None and abs(printed - target) < tol,
            abs(even - target) < tol,
        )
