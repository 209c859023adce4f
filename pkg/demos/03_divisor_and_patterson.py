"""Divisor of the zeta function and the cohomology tables, cross-checked.

Run: python3 demos/03_divisor_and_patterson.py
"""
# %%
import mpmath

from selberg.cohomology import (check_les, check_patterson, dims_discrete, dims_finite,
                                dims_hyperfunction, Regime)
from selberg.divisor import LaplaceSpectrum, format_divisor, full_divisor, volume_ratio

g = 2
# a made-up spectrum: one small eigenvalue 3/16 and two above 1/4
spec = LaplaceSpectrum(((0, 1), (0.1875, 2), (2, 3)), complete_below=10)

# %% Zeros: eigenvalues on the axes, topological zeros at -(2n+1)/2.
div = full_divisor(g, spec, 4)
print(format_divisor(div, digits=8))
print("vol(Y) / vol(S^2) =", volume_ratio(g))

# %% Cohomology of the principal series at the special points.
for lam in (0.5, -0.5, 1.5, -1.5, 2.5, -2.5):
    print(dims_hyperfunction(g, lam, spec).format_line())
for n in (0, 1, 2):
    print(dims_finite(g, n).format_line())
    print(dims_discrete(g, n).format_line())

# %% Long exact sequences: Euler characteristics add up.
print("LES:", all(check_les(g, n, r) for n in range(1, 6)
                  for r in (Regime.POS_HALF_INTEGER, Regime.NEG_HALF_INTEGER)))

# %% ord Z = -chi' at every divisor point and away from it.
for p, order in div.items():
    res = check_patterson(g, p, spec)
    print("%-28s %s" % (mpmath.nstr(p, 8), res.details))
print(check_patterson(g, 1 + 2j, spec).details)
