"""Orbits of u_n = a u_(n-i) (1 - u_(n-j)): fixed point, weird orbit, cascade and collapse."""

from recurlab.dynamics import LagMap, bifurcation_scan, cascade_points, classify_orbit, collapse_profile, feigenbaum_estimate

for a in (10.0, 11.0, 13.0, 14.75, 15.2):
    r = classify_orbit(LagMap(a, (3, 1)))
    print(f"a={a}: {r.kind}, period {r.period}, {r.distinct} distinct values, classes {r.equality_pattern}")

_, _, trans = bifurcation_scan((3, 1), 10.0, 13.2, 321, 1e-4)
for t in trans[:8]:
    print(f"transition at a={t.a:.4f}: {t.before} -> {t.after}")

pts = cascade_points((3, 1), 8, 6)
print("period-doubling points:", [round(p, 6) for p in pts])
print("gap ratios:", [round(d, 3) for d in feigenbaum_estimate(pts)])

for lags, a in [((3, 1), 15.7), ((3, 2), 15.4)]:
    e = collapse_profile(lags, [a])[0]
    print(f"rule {lags}, a={a}: |u_n| < 1e-10 for good after n={e.transient_length}")
