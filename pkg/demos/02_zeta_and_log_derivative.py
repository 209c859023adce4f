"""The zeta product and its logarithmic derivative in Re(lambda) > 1/2.

Run: python3 demos/02_zeta_and_log_derivative.py
"""
# %%
import mpmath

from selberg import bolza_group, length_spectrum, log_derivative, log_zeta, zeta
from selberg.zeta import central_difference, pgt_tail_estimate

spec10 = length_spectrum(bolza_group(), 10)
spec8 = spec10.truncated(8)

# %% Along the real axis, for both characters of M = {+-I}.
for lam in (0.75, 1.0, 1.5, 2.0, 3.0):
    a = zeta(spec10, "trivial", lam).value
    b = zeta(spec10, "theta", lam).value
    print("lambda=%.2f  Z_trivial=%.12f  Z_theta=%.12f" % (lam, mpmath.re(a), mpmath.re(b)))

# %% Truncation in L_max: the change from 8 to 10 next to the heuristic estimate.
for lam in (1.0, 1.2, 2.0, 3.0):
    d = abs(log_zeta(spec10, "trivial", lam).value - log_zeta(spec8, "trivial", lam).value)
    print("lambda=%.1f  |log Z_10 - log Z_8| = %.3e   estimate %.3e"
          % (lam, d, pgt_tail_estimate(lam, 8)))

# %% Close to the abscissa the product converges slowly; at lambda = 1 the
# omitted mass is about E1(L_max / 2), so 1e-6 accuracy would need L_max near 22.
print("E1(11) =", mpmath.nstr(mpmath.e1(11), 3))

# %% The Dirichlet series for Z'/Z against a central difference of log Z.
with mpmath.workdps(50):
    lam = mpmath.mpc("1.2", "0.5")
    ld = log_derivative(spec10, "trivial", lam).value
    fd = central_difference(lambda x: log_zeta(spec10, "trivial", x).value, lam)
    print("Z'/Z =", mpmath.nstr(ld, 15), " difference quotient error:", mpmath.nstr(abs(ld - fd), 3))
