"""Selberg zeta functions of compact hyperbolic surfaces.

Geodesic side: Fuchsian group enumeration, primitive length spectra, local
factors, the zeta product and its logarithmic derivative.  Topological
side: group cohomology dimension tables, the divisor of zeros and the
identity/trig terms of the trace formula.
"""
from .config import Precision
from .hyperbolic import GroupElement, HyperbolicData, Kind, classify, translation_length
from .fuchsian import (FuchsianGroup, LengthSpectrum, PrimeGeodesic, bolza_group,
                       enumerate_ball, is_primitive, length_spectrum, read_group,
                       read_spectrum, write_spectrum)
from .zeta import (SigmaParam, local_factor_general, local_factor_sl2, log_derivative,
                   log_zeta, zeta)
from .divisor import (Divisor, LaplaceSpectrum, full_divisor, mu_of_lambda,
                      spectral_divisor, trivial_divisor, volume_ratio)
from .cohomology import (CohomologyTable, Regime, check_les, check_patterson, chi_prime,
                         dims_discrete, dims_finite, dims_hyperfunction)
from .spectral_terms import (EpsilonData, IdentityTermModel, calibrate, contour_integral,
                             dual_trace, dual_trace_partial, epsilon_of, identity_term,
                             l_model, trig_term)

__all__ = [
    "Precision", "GroupElement", "HyperbolicData", "Kind", "classify",
    "translation_length", "FuchsianGroup", "LengthSpectrum", "PrimeGeodesic",
    "bolza_group", "enumerate_ball", "is_primitive", "length_spectrum",
    "read_group", "read_spectrum", "write_spectrum",
    "SigmaParam", "local_factor_general", "local_factor_sl2", "log_derivative",
    "log_zeta", "zeta",
    "Divisor", "LaplaceSpectrum", "full_divisor", "mu_of_lambda", "spectral_divisor",
    "trivial_divisor", "volume_ratio",
    "CohomologyTable", "Regime", "check_les", "check_patterson", "chi_prime",
    "dims_discrete", "dims_finite", "dims_hyperfunction",
    "EpsilonData", "IdentityTermModel", "calibrate", "contour_integral", "dual_trace",
    "dual_trace_partial", "epsilon_of", "identity_term", "l_model", "trig_term",
]
