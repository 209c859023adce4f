"""Identity and trigonometric terms of the trace formula; residues by contour integrals.

Run: python3 demos/04_trace_formula_terms.py
"""
# %%
import mpmath

from selberg import bolza_group, length_spectrum
from selberg.spectral_terms import (IdentityTermModel, calibrate, dual_trace,
                                    dual_trace_partial, epsilon_of, exp_h_alpha,
                                    identity_term, residue)

# %% exp(2 pi i H_alpha) = -I decides between tan and -cot.
print(exp_h_alpha(20))
for s in ("trivial", "theta"):
    print(s, epsilon_of(s))

# %% The regularised sphere trace: partial sums against the digamma closed form.
for N in (10, 100, 1000):
    print(N, mpmath.nstr(dual_trace_partial(0.25, N) - dual_trace(0.25), 5))

# %% Residues of the identity term: (2g-2)(2n+1) on the negative side, 0 on the positive.
model = IdentityTermModel(g=2)
for n in range(4):
    a = mpmath.mpf(2 * n + 1) / 2
    neg = residue(lambda z: identity_term(model, z), -a, precision=30)
    pos = residue(lambda z: identity_term(model, z), a, precision=30)
    print("n=%d  at -%d/2: %s   at +%d/2: %s" % (n, 2 * n + 1, mpmath.nstr(neg.real, 12),
                                                2 * n + 1, mpmath.nstr(abs(pos), 3)))

# %% Fit the affine constants against the Bolza log-derivative.
spec = length_spectrum(bolza_group(), 10)
cal = calibrate(model, spec, [2, 2.5, 3, 3.5, 4, 2 + 1j, 3 + 2j])
print("c0 = %s  c1 = %s  residual = %s" % tuple(mpmath.nstr(x, 8)
                                               for x in (cal.c0, cal.c1, cal.residual)))
