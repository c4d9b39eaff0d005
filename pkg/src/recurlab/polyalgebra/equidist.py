"""Fractional parts of powers: discrepancy and proximity of two power sequences."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Union

import mpmath

from .psi import PrecisionError

Real = Union[int, float, str, mpmath.mpf, Callable[[int], mpmath.mpf]]

GUARD_DIGITS = 15


def required_dps(x, N: int) -> int:
    """Digits needed so that frac(x^N) keeps GUARD_DIGITS correct digits."""
    return int(mpmath.ceil(N * mpmath.log10(x))) + GUARD_DIGITS


def _value(x: Real, dps: int):
    with mpmath.workdps(dps):
        return +(x(dps) if callable(x) else mpmath.mpf(x))


def star_discrepancy(points) -> float:
    """D*_N of points in [0, 1[ (exact formula on the sorted sample)."""
    s = sorted(points)
    n = len(s)
    if n == 0:
        raise ValueError("empty sample")
    d = mpmath.mpf(0)
    for i, v in enumerate(s, start=1):
        d = max(d, mpmath.mpf(i) / n - v, v - mpmath.mpf(i - 1) / n)
    return d


@dataclass
class FracReport:
    N: int
    dps: int
    fracs: list
    discrepancy: mpmath.mpf
    first_close: int | None = None
    epsilon: float | None = None
    fracs_y: list = field(default_factory=list)


def power_frac_probe(x: Real, y: Real | None = None, N: int = 50, epsilon=1e-3, dps: int | None = None) -> FracReport:
    """frac(x^n) for n = 1..N with its star discrepancy; with ``y``, the least n where the two are within epsilon.

    ``x`` and ``y`` may be numbers or callables ``dps -> value`` (so that
    constants are recomputed at the working precision). ``dps`` defaults to the
    minimum safe value and a smaller explicit value raises PrecisionError.
    """
    if N < 1:
        raise ValueError("N must be positive")
    probe_x = _value(x, 30)
    probe_y = _value(y, 30) if y is not None else probe_x
    if probe_x <= 1 or probe_y <= 1:
        raise ValueError("x and y must exceed 1")
    need = required_dps(max(probe_x, probe_y), N)
    if dps is None:
        dps = need
    elif dps < need:
        raise PrecisionError(f"N={N} needs at least {need} digits, got {dps}")
    with mpmath.workdps(dps):
        xv = _value(x, dps)
        fx = [mpmath.frac(xv**n) for n in range(1, N + 1)]
        rep = FracReport(N, dps, fx, star_discrepancy(fx))
        if y is not None:
            yv = _value(y, dps)
            fy = [mpmath.frac(yv**n) for n in range(1, N + 1)]
            rep.fracs_y = fy
            rep.epsilon = epsilon
            eps = mpmath.mpf(epsilon)
            rep.first_close = next((n for n, (a, b) in enumerate(zip(fx, fy), start=1) if abs(a - b) < eps), None)
        return rep
