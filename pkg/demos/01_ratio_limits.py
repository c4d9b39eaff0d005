"""Ratio limits of additive rules, the Psi chain that shares a root, and the derivative-gap ratio."""

import mpmath

from recurlab.polyalgebra import build_psi, minimal_polynomial, phi, psi_derivative_gaps, psi_real_roots
from recurlab.rulecore import RecurrenceRule, characteristic_polynomial, ratio_limit

for lags in [(1, 2), (2, 3), (1, 3), (1, 4), (1, 5), (1, 6)]:
    rule = RecurrenceRule.from_lags(lags)
    r = ratio_limit(rule, [1] * rule.order, tol=1e-18)
    print(f"lags {lags}: char poly {characteristic_polynomial(rule)}, ratio limit {mpmath.nstr(r, 16)}")

# {1,5} lands on phi_4 because its characteristic polynomial carries the factor x^2 - x + 1
print("minimal polynomial of phi_4:", minimal_polynomial(4))

for m in range(4):
    print(f"Psi_(4,{m}) = {build_psi(4, m)}")

print("gap ratios for k=3 approach phi_3 =", mpmath.nstr(phi(3), 12))
for m, (gap, r) in enumerate(psi_derivative_gaps(3, 6), 1):
    print(f"  m={m}: gap {mpmath.nstr(gap, 8)}, ratio {mpmath.nstr(r, 12)}")

for k, m in [(3, 2), (2, 1), (2, 2)]:
    rep = psi_real_roots(k, m)
    print(f"real roots of Psi_({k},{m}): {rep.found}; two-parity prediction {rep.expected}")
