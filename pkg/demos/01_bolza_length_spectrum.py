"""Primitive closed geodesics of the Bolza surface.

Run: python3 demos/01_bolza_length_spectrum.py
"""
# %%
import math

import mpmath
import numpy as np

from selberg import bolza_group, length_spectrum, write_spectrum

G = bolza_group()
print("generators:", len(G.generators), "genus:", G.genus, "area:", G.volume)

# %% The Dirichlet domain at i certifies completeness of the search.
D = G.geometry
print("domain: %d vertices, area %.12f (4 pi = %.12f)" % (len(D.vertices), D.area, 4 * math.pi))
print("vertex angles / pi:", np.round(D.angles / math.pi, 6))
print("covering radius: %.6f" % D.covering_radius)

# %% The systole is 2 arccosh(1 + sqrt 2).
print("systole      ", mpmath.nstr(G.systole(), 30))
print("closed form  ", mpmath.nstr(2 * mpmath.acosh(1 + mpmath.sqrt(2)), 30))

# %% Length spectrum up to 8, split by the sign of the trace.
spec = length_spectrum(G, 8)
for geo in spec:
    print("%.10f  m=%+d  mult=%3d  word=%s" % (geo.length, geo.m_sign, geo.multiplicity,
                                               geo.representative_word))
print("classes:", spec.class_count())

# %% Every length is arithmetic: cosh(l/2) = a + b sqrt 2.
with mpmath.workdps(50):
    for geo in spec.geodesics[::2]:
        rel = mpmath.pslq([mpmath.cosh(geo.length / 2), 1, mpmath.sqrt(2)], maxcoeff=10**6)
        print("%.6f  cosh(l/2) = %d + %d sqrt2" % (geo.length, -rel[1], -rel[2]))

# %% Prime geodesic theorem: the count grows like e^L / L.
for L in (5, 6, 7, 8):
    n = spec.truncated(L).class_count()
    print("L=%d  classes=%5d  li(e^L)=%8.1f" % (L, n, float(mpmath.li(mpmath.exp(L)))))

# %% Save the cache file read by the zeta routines.
print(write_spectrum(spec, "bolza-L8.txt").read_text().splitlines()[:5])
