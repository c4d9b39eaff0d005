"""Nested power towers, the odd silver-mean nested radical and the self-looped cycle graph."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import mpmath
import numpy as np

from .._precision import DEFAULT_DPS
from .poly import IntPolynomial
from .psi import phi


class FixedPointError(RuntimeError):
    pass


@dataclass(frozen=True)
class TowerResult:
    r: mpmath.mpf
    tower_value: mpmath.mpf
    iterations: int
    log_check: mpmath.mpf


def nested_power_tower(k, alpha, tol=1e-12, max_iter: int = 100_000, dps: int = DEFAULT_DPS) -> TowerResult:
    """Solve Log[k/(r-1)]/Log(r) = alpha through the tower {k + {k + ...}^e}^e, e = alpha/(alpha+1).

    The tower itself converges to s = r**alpha; the outermost exponent 1/alpha
    (as in the alpha = 4 display ending in ``^0.25``) turns it into r.
    ``log_check`` is Log[k/(r-1)]/Log(r) evaluated at the returned r.
    """
    with mpmath.workdps(dps):
        k = mpmath.mpf(k)
        alpha = mpmath.mpf(alpha)
        if k <= 0:
            raise ValueError("k must be positive")
        if alpha < 1:
            raise ValueError("alpha must be >= 1")
        e = alpha / (alpha + 1)
        tol = mpmath.mpf(tol)
        t = k
        for it in range(1, max_iter + 1):
            nt = (k + t) ** e
            if abs(nt - t) < tol / 100:
                t = nt
                break
            t = nt
        else:
            raise FixedPointError(f"tower did not settle within {max_iter} iterations")
        r = t ** (1 / alpha)
        check = mpmath.log(k / (r - 1)) / mpmath.log(r)
        return TowerResult(r, t, it, check)


def odd_silver_nested_radical(k: int, tol=1e-12, max_iter: int = 100_000, dps: int = DEFAULT_DPS):
    """k - 1 + sqrt(k^2 - k + 1 + sqrt(k^2 - k + 1 + ...)), the positive root of x^2 - (2k-1)x - 1."""
    if k < 1:
        raise ValueError("k must be >= 1")
    with mpmath.workdps(dps):
        c = mpmath.mpf(k * k - k + 1)
        tol = mpmath.mpf(tol)
        t = mpmath.sqrt(c)
        for _ in range(max_iter):
            nt = mpmath.sqrt(c + t)
            if abs(nt - t) < tol / 100:
                return k - 1 + nt
            t = nt
        raise FixedPointError("nested radical did not settle")


def cycle_with_loop(n: int) -> np.ndarray:
    """Adjacency matrix of the directed n-cycle 0 -> 1 -> ... -> n-1 -> 0 with a loop at vertex 0."""
    if n < 2:
        raise ValueError("n must be >= 2")
    a = np.zeros((n, n), dtype=np.int64)
    for i in range(n):
        a[i, (i + 1) % n] = 1
    a[0, 0] = 1
    return a


def charpoly_exact(a) -> IntPolynomial:
    """det(xI - A) by Faddeev-LeVerrier in exact rationals."""
    m = [[Fraction(int(v)) for v in row] for row in np.asarray(a)]
    n = len(m)
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    mk = [[Fraction(0)] * n for _ in range(n)]
    c = Fraction(1)
    for k in range(1, n + 1):
        # M_k = A M_{k-1} + c_{n-k+1} I ; c_{n-k} = -tr(A M_k) / k
        nm = [[sum(m[i][l] * mk[l][j] for l in range(n)) for j in range(n)] for i in range(n)]
        for i in range(n):
            nm[i][i] += c
        mk = nm
        am = [[sum(m[i][l] * mk[l][j] for l in range(n)) for j in range(n)] for i in range(n)]
        c = -sum(am[i][i] for i in range(n)) / k
        coeffs[n - k] = c
    return IntPolynomial(coeffs)


def power_iteration(a, tol=1e-14, max_iter: int = 1_000_000) -> float:
    a = np.asarray(a, dtype=float)
    v = np.ones(a.shape[0])
    lam = 0.0
    for _ in range(max_iter):
        w = a @ v
        nlam = float(np.linalg.norm(w) / np.linalg.norm(v))
        v = w / np.linalg.norm(w)
        if abs(nlam - lam) < tol:
            return nlam
        lam = nlam
    raise FixedPointError("power iteration did not converge")


@dataclass(frozen=True)
class GraphEigenReport:
    n: int
    dominant: float
    charpoly: IntPolynomial
    charpoly_matches: bool
    residual: float


def cycle_graph_eigen_check(n: int, tol=1e-8) -> GraphEigenReport:
    """Dominant eigenvalue of the self-looped n-cycle against phi_{n-1}."""
    a = cycle_with_loop(n)
    cp = charpoly_exact(a)
    expected = IntPolynomial.from_terms({n: 1, n - 1: -1, 0: -1})
    dom = power_iteration(a, tol=tol / 1000)
    res = abs(dom - float(phi(n - 1)))
    return GraphEigenReport(n, dom, cp, cp == expected or cp == -expected, res)
