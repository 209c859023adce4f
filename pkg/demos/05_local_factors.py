"""Local factors: the SL(2,R) product and the general determinant form.

Run: python3 demos/05_local_factors.py
"""
# %%
from fractions import Fraction

import mpmath

from selberg.zeta import (GeneralLocalFactorInput, local_factor_general, local_factor_sl2,
                          sl2_general_input)

# %% t = 4, lambda = 3/2, three factors.
f = local_factor_sl2(4, 1, "trivial", 1.5, 2, tail_check=False)
print(f.value, float(Fraction(15, 16) * Fraction(63, 64) * Fraction(255, 256)))
print("tail bound", f.tail_bound, "(above 1e-3, so the checked call refuses)")

# %% The same factor from the determinant formula on SL(2,R) data.
with mpmath.workdps(50):
    data = sl2_general_input(mpmath.exp(3), m_sign=-1, sigma="theta")
    lam = mpmath.mpc("0.8", "2.0")
    a = local_factor_sl2(mpmath.exp(3), -1, "theta", lam, 30).value
    b = local_factor_general(data, lam, mpmath.mpf(1) / 2, 30).value
    print("relative difference:", mpmath.nstr(abs(a - b) / abs(a), 3))

# %% A rank-one example with a two-dimensional nilradical and a 2x2 sigma.
data = GeneralLocalFactorInput(sigma_matrix=[[0, 1], [1, 0]], a_rho=3.0,
                               ad_eigenvalues=[0.2 + 0.1j, 0.2 - 0.1j])
for K in (2, 5, 10, 20):
    v = local_factor_general(data, 1.5, 1.0, K, tail_check=False)
    print(K, mpmath.nstr(v.value, 20), "%.2e" % v.tail_bound)
