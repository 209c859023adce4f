"""Local factors, the Selberg zeta product and its logarithmic derivative.

Everything here lives in the half plane of absolute convergence
``Re(lambda) > 1/2``.  Sums over geodesics run in ascending length with a
fixed-shape reduction (chunks of :data:`CHUNK` terms, each summed with
:func:`mpmath.fsum`), so results do not depend on how the chunks are
scheduled.
"""
from __future__ import annotations

import enum
import itertools
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Sequence

import mpmath

from .config import Precision, resolve
from .errors import DivergentTail, OutsideConvergence, PreconditionError
from .fuchsian import LengthSpectrum

RHO = mpmath.mpf(1) / 2
CHUNK = 64
TAIL_LIMIT = 1e-3
CONVERGENCE_MARGIN = 1e-9


class SigmaParam(enum.Enum):
    """The two irreducible representations of ``M = {+-I}``."""

    TRIVIAL = "trivial"
    THETA = "theta"

    @property
    def sign_on_minus_I(self) -> int:
        return 1 if self is SigmaParam.TRIVIAL else -1

    def value_at(self, m_sign: int) -> int:
        """``sigma(m_g)`` for ``m_g = m_sign * I``."""
        return self.sign_on_minus_I if m_sign < 0 else 1


def _sigma(sigma) -> SigmaParam:
    return sigma if isinstance(sigma, SigmaParam) else SigmaParam(sigma)


@dataclass(frozen=True)
class FactorValue:
    value: mpmath.mpc
    tail_bound: float


@dataclass(frozen=True)
class ZetaValue:
    """A truncated product (or series) with a heuristic truncation estimate."""

    value: mpmath.mpc
    error_estimate: float


def local_factor_sl2(t, m_sign: int, sigma, lam, K: int,
                     precision: Precision | int | None = None,
                     tail_check: bool = True) -> FactorValue:
    """``prod_{k=0..K} (1 - sigma(m_g) t^(-lambda-k-1/2))``.

    ``Ad(-I)`` is trivial on the root space, so the class sign only enters
    through ``sigma(m_g)``.  The returned ``tail_bound`` bounds
    ``|log prod_{k>K}|`` by ``2 t^(-Re lambda - K - 3/2) / (1 - 1/t)``, valid
    when the first omitted term has modulus at most 1/2.

    Raises
    ------
    DivergentTail
        If ``tail_check`` and the bound exceeds 1e-3 (or is not valid).
    """
    prec = resolve(precision)
    sigma = _sigma(sigma)
    if K < 0:
        raise PreconditionError("K must be >= 0")
    with prec.context():
        t = mpmath.mpf(t)
        lam = mpmath.mpc(lam)
        if t <= 1:
            raise PreconditionError("t must exceed 1")
        eps = sigma.value_at(m_sign)
        factors = [1 - eps * t ** (-lam - k - RHO) for k in range(K + 1)]
        value = mpmath.fprod(factors)
        first_omitted = float(t ** (-lam.real - K - 1 - RHO))
        if first_omitted <= 0.5:
            bound = 2 * float(t ** (-lam.real - K - 3 * RHO)) / float(1 - 1 / t)
        else:
            bound = math.inf
    if tail_check and not bound <= TAIL_LIMIT:
        raise DivergentTail(f"tail bound {bound:.3g} exceeds {TAIL_LIMIT}")
    return FactorValue(value, bound)


@dataclass(frozen=True)
class GeneralLocalFactorInput:
    """Data of a hyperbolic ``m_g a_g`` in a real-rank-one group.

    ``sigma_matrix`` is ``sigma(m_g)``, ``a_rho`` the scalar ``a_g^rho > 1``
    and ``ad_eigenvalues`` the eigenvalues of ``Ad(m_g a_g)`` on the
    opposite nilpotent radical (all of modulus < 1).
    """

    sigma_matrix: Sequence[Sequence[complex]]
    a_rho: float
    ad_eigenvalues: Sequence[complex]

    def __post_init__(self):
        if not self.a_rho > 1:
            raise PreconditionError("a_rho must exceed 1")
        if any(abs(complex(e)) >= 1 for e in self.ad_eigenvalues):
            raise PreconditionError("ad eigenvalues must lie inside the unit disk")


def _symmetric_power_eigenvalues(eigs: Sequence, k: int) -> list:
    """Eigenvalues of ``S^k`` as the degree-k monomials (with repetition)."""
    out = []
    for combo in itertools.combinations_with_replacement(range(len(eigs)), k):
        out.append(mpmath.fprod(eigs[i] for i in combo))
    return out


def local_factor_general(data: GeneralLocalFactorInput, lam, rho_value, K: int,
                         precision: Precision | int | None = None,
                         tail_check: bool = True) -> FactorValue:
    """``prod_{k<=K} det(1 - a^(-lambda-rho) sigma(m) (x) S^k(Ad|n-bar))``.

    Linear forms are measured in units of the long root, so with
    ``a^rho = a_rho`` one has ``a^lambda = a_rho^(lambda / rho_value)``.  The
    exponent ``-lambda - rho`` is the one for which SL(2,R) data
    (``a_rho = t^(1/2)``, ``ad_eigenvalues = [1/t]``) reproduces
    ``prod (1 - t^(-lambda-k-1/2))``.
    """
    prec = resolve(precision)
    if K < 0:
        raise PreconditionError("K must be >= 0")
    with prec.context():
        lam = mpmath.mpc(lam)
        rho = mpmath.mpf(rho_value)
        a_rho = mpmath.mpf(data.a_rho)
        scalar = a_rho ** (-lam / rho - 1)
        sigma = mpmath.matrix([[mpmath.mpc(x) for x in row] for row in data.sigma_matrix])
        n = sigma.rows
        eigs = [mpmath.mpc(e) for e in data.ad_eigenvalues]
        value = mpmath.mpc(1)
        for k in range(K + 1):
            for mono in _symmetric_power_eigenvalues(eigs, k):
                value *= mpmath.det(mpmath.eye(n) - scalar * mono * sigma)
        # dominant omitted monomial decays like rmax^(K+1)
        rmax = max((abs(e) for e in eigs), default=mpmath.mpf(0))
        norm = mpmath.mnorm(sigma, 1)
        if eigs and rmax > 0:
            count = math.comb(K + len(eigs), len(eigs) - 1)
            x = abs(scalar) * norm * rmax ** (K + 1)
            bound = (2 * n * count * float(x) / float(1 - rmax)
                     if n * float(x) <= 0.5 else math.inf)
        else:
            bound = 0.0
    if tail_check and not bound <= TAIL_LIMIT:
        raise DivergentTail(f"tail bound {bound:.3g} exceeds {TAIL_LIMIT}")
    return FactorValue(value, bound)


def sl2_general_input(t, m_sign: int = 1, sigma=SigmaParam.TRIVIAL,
                      precision: Precision | int | None = None) -> GeneralLocalFactorInput:
    """Embed SL(2,R) data ``(t, m_sign, sigma)`` into the general local factor."""
    prec = resolve(precision)
    with prec.context():
        t = mpmath.mpf(t)
        return GeneralLocalFactorInput(
            sigma_matrix=[[_sigma(sigma).value_at(m_sign)]],
            a_rho=mpmath.sqrt(t), ad_eigenvalues=[1 / t])


# ---------------------------------------------------------------------------
# products over a length spectrum


def _tree_sum(terms: Sequence, threads: int = 1):
    """Chunked fsum whose result is independent of ``threads``."""
    chunks = [terms[i:i + CHUNK] for i in range(0, len(terms), CHUNK)]
    if threads > 1 and len(chunks) > 1:
        with ThreadPoolExecutor(threads) as pool:
            partial = list(pool.map(mpmath.fsum, chunks))
    else:
        partial = [mpmath.fsum(c) for c in chunks]
    return mpmath.fsum(partial)


def _check_region(lam) -> None:
    if not mpmath.re(lam) > RHO + CONVERGENCE_MARGIN:
        raise OutsideConvergence(f"Re(lambda) = {mpmath.nstr(mpmath.re(lam), 8)} <= 1/2")


def pgt_tail_estimate(lam, cutoff) -> float:
    """Prime-geodesic-theorem estimate of the truncation error in ``log Z``.

    With about ``e^l / l`` classes per unit length beyond the cutoff, each
    contributing roughly ``e^(-l (Re lambda + 1/2))``, the omitted mass is
    ``E1((Re lambda - 1/2) * cutoff)``.  This is an estimate, not a bound.
    """
    x = float(mpmath.re(lam)) - 0.5
    return float(mpmath.e1(x * float(cutoff)))


def _log_factor_terms(spec: LengthSpectrum, sigma: SigmaParam, lam, K: int) -> list:
    terms = []
    for geo in spec.geodesics:
        t = mpmath.exp(geo.length)
        eps = sigma.value_at(geo.m_sign)
        for k in range(K + 1):
            terms.append(geo.multiplicity * mpmath.log(1 - eps * t ** (-lam - k - RHO)))
    return terms


def log_zeta(spec: LengthSpectrum, sigma, lam, K: int = 20, threads: int = 1) -> ZetaValue:
    """``log Z`` as the sum of logarithms of the local factors."""
    sigma = _sigma(sigma)
    with spec.precision.context():
        lam = mpmath.mpc(lam)
        _check_region(lam)
        total = _tree_sum(_log_factor_terms(spec, sigma, lam, K), threads)
    return ZetaValue(total, pgt_tail_estimate(lam, spec.cutoff))


def zeta(spec: LengthSpectrum, sigma, lam, K: int = 20, threads: int = 1) -> ZetaValue:
    """Truncated Euler product ``prod_gamma Z(gamma, sigma, lambda)``.

    The error estimate is relative and heuristic (see :func:`pgt_tail_estimate`).
    """
    sigma = _sigma(sigma)
    with spec.precision.context():
        lam = mpmath.mpc(lam)
        _check_region(lam)
        value = mpmath.mpc(1)
        for geo in spec.geodesics:
            factor = local_factor_sl2(mpmath.exp(geo.length), geo.m_sign, sigma, lam, K,
                                      precision=spec.precision, tail_check=False).value
            value *= factor ** geo.multiplicity
    return ZetaValue(value, pgt_tail_estimate(lam, spec.cutoff))


def log_derivative(spec: LengthSpectrum, sigma, lam, K: int = 20,
                   threads: int = 1) -> ZetaValue:
    """``Z'/Z`` of the truncated product as a Dirichlet series.

    Differentiating ``log(1 - eps t^(-lambda-k-1/2))`` and expanding in
    powers gives, per class of length ``l`` (``t = e^l``),

        l * sum_{m>=1} eps^m t^(-m(lambda+1/2)) (1 - t^(-m(K+1))) / (1 - t^(-m))

    The inner sum stops once terms fall below the working precision.
    """
    sigma = _sigma(sigma)
    prec = spec.precision
    with prec.context():
        lam = mpmath.mpc(lam)
        _check_region(lam)
        eps_stop = mpmath.mpf(10) ** (-(prec.digits + 5))
        terms = []
        for geo in spec.geodesics:
            ell = geo.length
            eps = sigma.value_at(geo.m_sign)
            t_inv = mpmath.exp(-ell)
            base = mpmath.exp(-ell * (lam + RHO))
            power = mpmath.mpc(1)
            m = 0
            while True:
                m += 1
                power *= base * eps
                tm = t_inv ** m
                term = power * (1 - tm ** (K + 1)) / (1 - tm)
                terms.append(geo.multiplicity * ell * term)
                if abs(term) < eps_stop:
                    break
        total = _tree_sum(terms, threads)
        # d/dlambda of the log tail estimate: E1 derivative gives e^{-x L}/(Re lam - 1/2)
        x = float(mpmath.re(lam)) - 0.5
        err = math.exp(-x * float(spec.cutoff)) / x
    return ZetaValue(total, err)


def central_difference(f: Callable, lam, h=1e-5):
    """Symmetric difference quotient ``(f(lam + h) - f(lam - h)) / 2h``."""
    h = mpmath.mpf(h)
    return (f(lam + h) - f(lam - h)) / (2 * h)
