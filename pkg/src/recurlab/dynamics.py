"""Lagged iteration u_n = F_a(u_(n-i), u_(n-j)) of F_a(x, y) = a x(1-x) y(1-y).

Trajectories are double precision. Grids of parameter values are advanced
together with numpy; single values use a plain Python loop with the same
operation order, so both paths give bit-identical numbers.
"""

from __future__ import annotations

import csv
import io
import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Callable, Iterable, Sequence

import numpy as np

DEFAULT_INIT = (0.6, 0.7, 0.8)
RULES = {"7": (2, 1), "8": (3, 2), "9": (3, 1)}


class DivergenceError(ArithmeticError):
    def __init__(self, index: int, a: float):
        super().__init__(f"trajectory left the finite range at index {index} (a={a})")
        self.index = index
        self.a = a


@dataclass(frozen=True)
class LagMap:
    a: float
    lag_pair: tuple[int, int] = (3, 1)
    init: tuple[float, ...] | None = None

    def __post_init__(self):
        i, j = self.lag_pair
        if not i > j >= 1:
            raise ValueError("lag pair must satisfy i > j >= 1")
        init = DEFAULT_INIT[:i] if self.init is None else tuple(float(v) for v in self.init)
        if len(init) != i:
            raise ValueError(f"lag pair {self.lag_pair} needs {i} initial values")
        object.__setattr__(self, "lag_pair", (int(i), int(j)))
        object.__setattr__(self, "init", init)


def _scalar_run(a: float, lags, init, N: int) -> list[float]:
    i, j = lags
    u = list(init) + [0.0] * (N - len(init))
    for n in range(len(init), N):
        x = u[n - i]
        y = u[n - j]
        u[n] = a * x * (1 - x) * y * (1 - y)
    return u


def trajectory(m: LagMap, N: int) -> np.ndarray:
    """u_1..u_N (initial values included). Raises DivergenceError on overflow or NaN."""
    if N < m.lag_pair[0]:
        raise ValueError("N must be at least the largest lag")
    with np.errstate(all="ignore"):
        u = np.array(_scalar_run(float(m.a), m.lag_pair, m.init, N))
    bad = np.flatnonzero(~np.isfinite(u))
    if bad.size:
        raise DivergenceError(int(bad[0]) + 1, m.a)
    return u


def trajectories(a_values, lags, init, N: int) -> np.ndarray:
    """Array of shape (N, len(a_values)); column k is the trajectory for a_values[k]."""
    i, j = lags
    a = np.asarray(a_values, dtype=float)
    u = np.empty((N, a.size))
    u[: len(init)] = np.asarray(init, dtype=float)[:, None]
    with np.errstate(all="ignore"):
        for n in range(len(init), N):
            x = u[n - i]
            y = u[n - j]
            u[n] = a * x * (1 - x) * y * (1 - y)
    return u


# --- classification ---------------------------------------------------------------


@dataclass(frozen=True)
class OrbitReport:
    kind: str  # fixed | periodic | weird | zero_collapse | aperiodic | divergent
    period: int | None = None
    distinct: int | None = None
    equality_pattern: tuple[tuple[int, ...], ...] | None = None
    transient_length: int | None = None
    witness: tuple[float, ...] = ()

    @property
    def key(self) -> tuple[str, int | None]:
        return self.kind, self.period

    def to_dict(self) -> dict:
        d = asdict(self)
        d["equality_pattern"] = [list(c) for c in self.equality_pattern] if self.equality_pattern else None
        d["witness"] = list(self.witness)
        return d


def _classes(vals: Sequence[float], tol: float) -> list[list[int]]:
    reps: list[float] = []
    members: list[list[int]] = []
    for pos, v in enumerate(vals, start=1):
        for k, r in enumerate(reps):
            if abs(r - v) < tol:
                members[k].append(pos)
                break
        else:
            reps.append(v)
            members.append([pos])
    return members


def rotate_pattern(pattern, p: int, shift: int) -> frozenset:
    """Relabel positions 1..p as if the cycle started ``shift`` places later."""
    return frozenset(frozenset(((q - 1 - shift) % p) + 1 for q in cls) for cls in pattern)


def pattern_matches(report: OrbitReport, required: Iterable[Iterable[int]]) -> bool:
    """True if some cyclic relabelling of the report's pattern contains every class in ``required``."""
    if not report.equality_pattern or report.period is None:
        return False
    need = {frozenset(c) for c in required}
    p = report.period
    return any(need <= rotate_pattern(report.equality_pattern, p, s) for s in range(p))


def classify_tail(w: np.ndarray, tol: float = 1e-7, p_max: int = 256, collapse: float = 1e-10,
                  class_tol: float | None = None) -> OrbitReport:
    if not np.all(np.isfinite(w)):
        return OrbitReport("divergent")
    if np.max(np.abs(w)) < collapse:
        return OrbitReport("zero_collapse")
    class_tol = 10 * tol if class_tol is None else class_tol
    for p in range(1, min(p_max, len(w) // 2) + 1):
        if np.all(np.abs(w[p:] - w[:-p]) < tol):
            cyc = [float(v) for v in w[:p]]
            cls = _classes(cyc, class_tol)
            d = len(cls)
            pattern = tuple(tuple(c) for c in cls)
            kind = "fixed" if p == 1 else ("weird" if d < p else "periodic")
            return OrbitReport(kind, p, d, pattern, None, tuple(cyc))
    return OrbitReport("aperiodic", witness=tuple(float(v) for v in w[:8]))


def _collapse_index(u, lags, threshold: float, a: float) -> int | None:
    i = lags[0]
    if a * threshold >= 1:
        return None
    run = 0
    for n, v in enumerate(u):
        run = run + 1 if abs(v) < threshold else 0
        if run >= i:
            return n - i + 2  # 1-based index of the first term of the run
    return None


@dataclass(frozen=True)
class ClassifyParams:
    transient: int = 5000
    window: int = 4096
    tol: float = 1e-7
    p_max: int = 256
    collapse: float = 1e-10

    def __post_init__(self):
        if self.window < 2 * self.p_max:
            raise ValueError("window must be >= 2 * p_max")


def classify_orbit(m: LagMap, transient: int = 5000, window: int = 4096, tol: float = 1e-7,
                   p_max: int = 256, collapse: float = 1e-10) -> OrbitReport:
    prm = ClassifyParams(transient, window, tol, p_max, collapse)
    with np.errstate(all="ignore"):
        u = np.array(_scalar_run(float(m.a), m.lag_pair, m.init, prm.transient + prm.window))
    return _report(u, m.lag_pair, float(m.a), prm)


def _report(u: np.ndarray, lags, a: float, prm: ClassifyParams) -> OrbitReport:
    rep = classify_tail(u[prm.transient:], prm.tol, prm.p_max, prm.collapse)
    if rep.kind == "zero_collapse":
        idx = _collapse_index(u, lags, prm.collapse, a)
        rep = OrbitReport("zero_collapse", transient_length=idx)
    return rep


def classify_grid(a_values, lags=(3, 1), init=None, params: ClassifyParams = ClassifyParams(),
                  chunk: int = 256, workers: int | None = None) -> list[OrbitReport]:
    """Classify every a in ``a_values``; chunks may run on a thread pool, output stays in input order."""
    lags = tuple(lags)
    init = DEFAULT_INIT[: lags[0]] if init is None else tuple(init)
    a_values = [float(a) for a in a_values]
    blocks = [a_values[k:k + chunk] for k in range(0, len(a_values), chunk)]

    def run(block):
        u = trajectories(block, lags, init, params.transient + params.window)
        return [_report(u[:, c], lags, a, params) for c, a in enumerate(block)]

    if workers and workers > 1:
        with ThreadPoolExecutor(workers) as ex:
            parts = list(ex.map(run, blocks))
    else:
        parts = [run(b) for b in blocks]
    return [r for part in parts for r in part]


@dataclass(frozen=True)
class Transition:
    a: float
    before: tuple[str, int | None]
    after: tuple[str, int | None]

    def to_dict(self) -> dict:
        return {"a": self.a, "from_kind": self.before[0], "from_period": self.before[1],
                "to_kind": self.after[0], "to_period": self.after[1]}


def grid_values(lo: float, hi: float, grid: int) -> np.ndarray:
    if grid < 2:
        raise ValueError("grid must be >= 2")
    return np.linspace(lo, hi, grid)


def bifurcation_scan(lag_pair=(3, 1), a_lo: float = 10.0, a_hi: float = 11.0, grid: int = 101,
                     refine_tol: float = 1e-4, init=None, params: ClassifyParams = ClassifyParams(),
                     workers: int | None = None) -> tuple[list[float], list[OrbitReport], list[Transition]]:
    """Classify a parameter grid, then bisect every change of (kind, period) to width < refine_tol."""
    a_vals = grid_values(a_lo, a_hi, grid)
    reps = classify_grid(a_vals, lag_pair, init, params, workers=workers)
    init_t = DEFAULT_INIT[: lag_pair[0]] if init is None else tuple(init)
    out = []
    for k in range(len(a_vals) - 1):
        left, right = reps[k].key, reps[k + 1].key
        if left == right:
            continue
        lo, hi = float(a_vals[k]), float(a_vals[k + 1])
        while hi - lo > refine_tol:
            mid = (lo + hi) / 2
            r = classify_orbit(LagMap(mid, tuple(lag_pair), init_t), params.transient, params.window,
                               params.tol, params.p_max, params.collapse)
            if r.key == left:
                lo = mid
            else:
                hi = mid
        out.append(Transition((lo + hi) / 2, left, right))
    return [float(a) for a in a_vals], reps, out


# --- period-doubling cascade -------------------------------------------------------------


def periodic_residual(a: float, lags, init, P: int, transient: int, window: int) -> float:
    """max |u_(n+P) - u_n| over ``window`` terms after ``transient``."""
    with np.errstate(all="ignore"):
        u = _scalar_run(a, lags, init, transient + window + P)
    r = max(abs(u[n + P] - u[n]) for n in range(transient, transient + window))
    return r if math.isfinite(r) else math.inf


def period_onset(lags, P: int, lo: float, hi: float, init=None, transient: int = 200_000,
                 window: int | None = None, tol: float = 1e-7, refine: float = 1e-6) -> float:
    """Supremum of the a where the orbit is still P-periodic, by bisection on [lo, hi].

    Requires a P-periodic orbit at ``lo`` and none at ``hi``.
    """
    init = DEFAULT_INIT[: lags[0]] if init is None else tuple(init)
    window = 4 * P if window is None else window

    def is_p(a):
        return periodic_residual(a, lags, init, P, transient, window) < tol

    if not is_p(lo):
        raise ValueError(f"orbit at a={lo} is not {P}-periodic")
    if is_p(hi):
        raise ValueError(f"orbit at a={hi} is still {P}-periodic")
    while hi - lo > refine:
        mid = (lo + hi) / 2
        if is_p(mid):
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2


def cascade_points(lags=(3, 1), first_period: int = 8, count: int = 6, lo: float = 13.2, hi: float = 13.47,
                   init=None, transient: int = 200_000, tol: float = 1e-7, refine: float = 1e-6,
                   first_gap: float = 0.1) -> list[float]:
    """Successive parameters where a P-orbit doubles, for P = first_period, 2 first_period, ...

    Each search starts a tenth of the previous gap above the previous point,
    which stays left of the next point while gap ratios exceed 10/9.
    """
    pts: list[float] = []
    start, gap = lo, first_gap
    P = first_period
    for _ in range(count):
        a = period_onset(lags, P, start, hi, init, transient, tol=tol, refine=refine)
        if pts:
            gap = a - pts[-1]
        pts.append(a)
        start = a + gap / 10
        P *= 2
    return pts


def feigenbaum_estimate(points: Sequence[float]) -> list[float]:
    """delta_m = (a_m - a_(m-1)) / (a_(m+1) - a_m) for every interior m."""
    pts = [float(p) for p in points]
    if len(pts) < 4:
        raise ValueError("need at least 4 points")
    if any(b <= a for a, b in zip(pts, pts[1:])):
        raise ValueError("points must be strictly increasing")
    return [(pts[m] - pts[m - 1]) / (pts[m + 1] - pts[m]) for m in range(1, len(pts) - 1)]


def _logistic_residual(r: float, P: int, transient: int, window: int) -> float:
    x = 0.5
    for _ in range(transient):
        x = r * x * (1 - x)
    buf = [x]
    for _ in range(window + P):
        x = r * x * (1 - x)
        buf.append(x)
    return max(abs(buf[n + P] - buf[n]) for n in range(window))


def logistic_cascade_points(count: int = 7, transient: int = 400_000, tol: float = 1e-7,
                            refine: float = 1e-9) -> list[float]:
    """Period-doubling points of x -> r x(1-x), found with the same P-periodicity bisection."""
    pts = []
    lo, hi, P = 2.9, 3.5699456, 1
    gap = 0.5
    for _ in range(count):
        a, b = lo, hi
        if _logistic_residual(a, P, transient, 4 * P) >= tol:
            raise ValueError(f"logistic orbit at r={a} is not {P}-periodic")
        while b - a > refine:
            mid = (a + b) / 2
            if _logistic_residual(mid, P, transient, 4 * P) < tol:
                a = mid
            else:
                b = mid
        pt = (a + b) / 2
        if pts:
            gap = pt - pts[-1]
        pts.append(pt)
        lo = pt + gap / 10
        P *= 2
    return pts


# --- collapse to zero ------------------------------------------------------------------------


@dataclass(frozen=True)
class CollapseEntry:
    a: float
    transient_length: int | None  # None: no collapse within N_max

    def to_dict(self) -> dict:
        return {"a": self.a, "transient_length": self.transient_length if self.transient_length is not None
                else "no collapse"}


def collapse_profile(lag_pair=(3, 1), a_values: Iterable[float] = (15.7,), init=None, N_max: int = 1_000_000,
                     threshold: float = 1e-10) -> list[CollapseEntry]:
    """Index of the first term after which the trajectory stays below ``threshold``."""
    lag_pair = tuple(lag_pair)
    i, j = lag_pair
    init = DEFAULT_INIT[:i] if init is None else tuple(init)
    out = []
    for a in a_values:
        a = float(a)
        if a * threshold >= 1:
            raise ValueError("threshold too large to certify collapse")
        u = list(init)
        found = None
        run = 0
        for v in u:
            run = run + 1 if abs(v) < threshold else 0
        n = len(u)
        while n < N_max and found is None:
            x = u[n - i]
            y = u[n - j]
            v = a * x * (1 - x) * y * (1 - y)
            u.append(v)
            n += 1
            run = run + 1 if abs(v) < threshold else 0
            if run >= i:
                found = n - i + 1
        # once i consecutive terms are below t with a t < 1, every later term is below t
        out.append(CollapseEntry(a, found))
    return out


# --- serialization --------------------------------------------------------------------------------


SCAN_HEADER = ("a", "kind", "period", "distinct")


def scan_to_csv(a_values, reports: Sequence[OrbitReport]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(SCAN_HEADER)
    for a, r in zip(a_values, reports):
        w.writerow([repr(float(a)), r.kind, "" if r.period is None else r.period,
                    "" if r.distinct is None else r.distinct])
    return buf.getvalue()


def report_to_json(report: OrbitReport) -> str:
    return json.dumps(report.to_dict(), indent=1)
