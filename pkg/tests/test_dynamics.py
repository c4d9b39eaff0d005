import json

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from recurlab.dynamics import (
    ClassifyParams,
    DivergenceError,
    LagMap,
    OrbitReport,
    bifurcation_scan,
    classify_grid,
    classify_orbit,
    classify_tail,
    collapse_profile,
    feigenbaum_estimate,
    logistic_cascade_points,
    pattern_matches,
    report_to_json,
    scan_to_csv,
    trajectories,
    trajectory,
)


def test_lagmap_validation():
    with pytest.raises(ValueError):
        LagMap(1.0, (1, 2))
    with pytest.raises(ValueError):
        LagMap(1.0, (3, 1), (0.5,))
    assert LagMap(1.0, (2, 1)).init == (0.6, 0.7)


def test_one_step():
    u = trajectory(LagMap(1.0, (2, 1), (0.5, 0.5)), 3)
    assert u[2] == 0.0625


def test_divergence_reports_index():
    with pytest.raises(DivergenceError) as exc:
        trajectory(LagMap(1e6, (2, 1), (0.5, 2.0)), 50)
    assert exc.value.index > 2


def test_scalar_and_vector_paths_agree_bitwise():
    a = [10.3, 12.9, 13.45, 15.7]
    v = trajectories(a, (3, 1), (0.6, 0.7, 0.8), 3000)
    for k, x in enumerate(a):
        assert np.array_equal(trajectory(LagMap(x, (3, 1)), 3000), v[:, k])


def test_determinism():
    m = LagMap(13.3, (3, 2))
    assert np.array_equal(trajectory(m, 5000), trajectory(m, 5000))


def test_collapse_at_15_596():
    u = trajectory(LagMap(15.596, (3, 1)), 100_000)
    assert np.max(np.abs(u[-1000:])) < 1e-10


def test_five_cycle_rule_32():
    r = classify_orbit(LagMap(12.0, (3, 2)))
    assert r.kind == "periodic" and r.period == 5


@pytest.mark.parametrize("a,kind,period", [(10.0, "fixed", 1), (14.75, "periodic", 7)])
def test_classify_examples(a, kind, period):
    r = classify_orbit(LagMap(a, (3, 1)))
    assert (r.kind, r.period) == (kind, period)


def test_weird_orbit_at_13():
    r = classify_orbit(LagMap(13.0, (3, 1)))
    assert (r.kind, r.period, r.distinct) == ("weird", 8, 5)
    assert pattern_matches(r, [{1, 5}, {2, 8}, {4, 6}, {3}, {7}])
    assert sorted(q for c in r.equality_pattern for q in c) == list(range(1, 9))


def test_weird_distinct_equals_rule_32_period():
    weird = classify_orbit(LagMap(13.0, (3, 1)))
    five = classify_orbit(LagMap(11.5, (3, 2)))
    assert weird.distinct == five.period == 5


def test_classify_params_guard():
    with pytest.raises(ValueError):
        ClassifyParams(window=100, p_max=256)


def test_classify_tail_kinds():
    assert classify_tail(np.zeros(600)).kind == "zero_collapse"
    assert classify_tail(np.full(600, np.nan)).kind == "divergent"
    w = np.tile([0.1, 0.2, 0.1, 0.3], 150)
    r = classify_tail(w)
    assert (r.kind, r.period, r.distinct) == ("weird", 4, 3)
    assert classify_tail(np.random.default_rng(1).random(600)).kind == "aperiodic"


@settings(max_examples=25)
@given(st.floats(9.0, 15.0))
def test_classification_stable_under_window_doubling(a):
    base = classify_orbit(LagMap(a, (3, 1)))
    if base.kind in ("fixed", "periodic", "weird"):
        again = classify_orbit(LagMap(a, (3, 1)), window=8192)
        assert again.period == base.period


@settings(max_examples=25)
@given(st.floats(9.0, 15.5))
def test_weird_reports_are_consistent(a):
    r = classify_orbit(LagMap(a, (3, 1)))
    if r.kind == "weird":
        assert r.distinct < r.period
    if r.kind == "periodic":
        assert r.distinct == r.period
    if r.equality_pattern:
        assert sorted(q for c in r.equality_pattern for q in c) == list(range(1, r.period + 1))


def test_grid_order_independent_of_workers():
    a = np.linspace(10, 15, 60)
    prm = ClassifyParams(transient=2000, window=1024, p_max=128)
    assert classify_grid(a, (3, 1), params=prm, chunk=7) == classify_grid(a, (3, 1), params=prm, chunk=7, workers=4)


def test_first_bifurcation():
    _, _, trans = bifurcation_scan((3, 1), 10.0, 11.0, 101, 1e-4)
    assert abs(trans[0].a - 10.415) < 0.05
    assert trans[0].before == ("fixed", 1)


def test_rule_32_cascade_window():
    _, _, trans = bifurcation_scan((3, 2), 13.1, 13.2, 101, 1e-5)
    assert trans and all(13.155 < t.a < 13.17 for t in trans)
    assert trans[-1].after == ("aperiodic", None)


def test_period_seven_window_belongs_to_rule_31():
    a = np.linspace(14.6, 14.85, 26)
    hits = sum(r.key == ("periodic", 7) for r in classify_grid(a, (3, 1)))
    assert hits >= 0.8 * len(a)  # a few aperiodic pockets sit inside the window
    assert not any(r.key == ("periodic", 7) for r in classify_grid(a, (3, 2)))


def test_feigenbaum_examples():
    d = feigenbaum_estimate([13.27, 13.417, 13.4515, 13.4593, 13.46102, 13.46139])
    assert [round(x, 2) for x in d] == [4.26, 4.42, 4.53, 4.65]
    assert feigenbaum_estimate([1, 2, 3, 4, 5]) == [1.0, 1.0, 1.0]
    with pytest.raises(ValueError):
        feigenbaum_estimate([1, 2, 3])
    with pytest.raises(ValueError):
        feigenbaum_estimate([1, 3, 2, 4])


@pytest.mark.slow
def test_logistic_cascade_self_validation():
    pts = logistic_cascade_points(7)
    assert abs(pts[0] - 3) < 1e-3 and abs(pts[1] - 3.449490) < 1e-4
    assert abs(feigenbaum_estimate(pts)[4] - 4.6692) / 4.6692 < 0.05


def test_collapse_profile():
    prof = collapse_profile((3, 1), [15.7, 8.0], N_max=200_000)
    assert prof[0].transient_length is not None and prof[1].transient_length is None
    prof = collapse_profile((3, 2), [15.4])
    assert prof[0].transient_length is not None
    assert prof[1 - 1].to_dict()["a"] == 15.4


def test_serialization():
    r = classify_orbit(LagMap(13.0, (3, 1)))
    d = json.loads(report_to_json(r))
    assert d["kind"] == "weird" and d["period"] == 8
    csv = scan_to_csv([13.0], [r]).splitlines()
    assert csv == ["a,kind,period,distinct", "13.0,weird,8,5"]
    assert OrbitReport("aperiodic").key == ("aperiodic", None)
