"""Dimensions of surface-group cohomology with principal-series coefficients.

All quantities are exact integers.  Three coefficient modules appear:

``V``
    hyperfunction vectors of the principal series with parameter ``lambda``;
``F``
    the finite-dimensional constituent ``F_{2n+1}``;
``D``
    the discrete-series constituent ``D_{2n+1}``.

At ``lambda = +-(n + 1/2)`` the module ``V`` is an extension of ``F`` and
``D`` (``0 -> F -> V -> D -> 0`` for positive ``lambda`` and the reverse
for negative ``lambda``), and the Euler characteristics must be additive.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .divisor import LaplaceSpectrum, full_divisor, mu_of_lambda
from .errors import PreconditionError, UnknownSpectralRegion, UnsupportedLambda

REGIME_TOL = 1e-12
IMAG_TOL = 1e-12


class Regime(enum.Enum):
    GENERIC = "generic"
    POS_HALF_INTEGER = "pos_half_integer"
    PLUS_HALF = "plus_half"
    NEG_HALF = "neg_half"
    NEG_HALF_INTEGER = "neg_half_integer"

    @property
    def special(self) -> bool:
        return self is not Regime.GENERIC


class Module(enum.Enum):
    V = "V"
    F = "F"
    D = "D"


@dataclass(frozen=True)
class ParamPoint:
    """``lambda`` together with its regime and, for special points, ``n``.

    ``n`` is the index with ``|lambda| = n + 1/2``.
    """

    lam: mpmath.mpc
    regime: Regime
    n: int | None = None

    @property
    def label(self) -> str:
        if self.regime is Regime.GENERIC:
            re, im = mpmath.re(self.lam), mpmath.im(self.lam)
            if im == 0:
                return mpmath.nstr(re, 17)
            return f"{mpmath.nstr(re, 17)}{'+' if im >= 0 else '-'}{mpmath.nstr(abs(im), 17)}i"
        sign = "-" if self.regime in (Regime.NEG_HALF, Regime.NEG_HALF_INTEGER) else ""
        return f"{sign}{2 * self.n + 1}/2"


def classify_lambda(lam, tol: float = REGIME_TOL) -> ParamPoint:
    """Sort ``lambda`` into the generic case or one of the half-integer cases."""
    if isinstance(lam, ParamPoint):
        return lam
    if isinstance(lam, Fraction):
        lam = mpmath.mpf(lam.numerator) / lam.denominator
    lam = mpmath.mpc(lam)
    if abs(mpmath.im(lam)) <= tol:
        x = mpmath.re(lam)
        k = int(mpmath.nint(abs(x) - mpmath.mpf(1) / 2))
        if k >= 0 and abs(abs(x) - (k + mpmath.mpf(1) / 2)) <= tol:
            if x > 0:
                regime = Regime.PLUS_HALF if k == 0 else Regime.POS_HALF_INTEGER
            else:
                regime = Regime.NEG_HALF if k == 0 else Regime.NEG_HALF_INTEGER
            return ParamPoint(lam, regime, k)
    return ParamPoint(lam, Regime.GENERIC)


def special_point(n: int, positive: bool) -> ParamPoint:
    """The parameter ``+-(2n+1)/2`` as a :class:`ParamPoint`."""
    if n < 0:
        raise PreconditionError("n must be >= 0")
    lam = (mpmath.mpf(2 * n + 1) / 2) * (1 if positive else -1)
    return classify_lambda(lam)


@dataclass(frozen=True)
class CohomologyTable:
    """``dim H^i`` for ``i = 0, 1, 2``; ``chi`` and ``chi_prime`` are derived."""

    module: Module
    h0: int
    h1: int
    h2: int
    g: int
    point: ParamPoint | None = None
    n: int | None = None

    def __post_init__(self):
        if min(self.h0, self.h1, self.h2) < 0:
            raise PreconditionError("dimensions must be nonnegative")

    @property
    def dims(self) -> tuple[int, int, int]:
        return (self.h0, self.h1, self.h2)

    @property
    def chi(self) -> int:
        return self.h0 - self.h1 + self.h2

    @property
    def chi_prime(self) -> int:
        return chi_prime(self)

    def format_line(self) -> str:
        if self.point is not None:
            lam = self.point.label
        else:
            lam = f"n={self.n}"
        return (f"g {self.g} lambda {lam} module {self.module.value} "
                f"h0 {self.h0} h1 {self.h1} h2 {self.h2} "
                f"chi {self.chi} chiprime {self.chi_prime}")


def chi_prime(table: CohomologyTable) -> int:
    """``sum_p (-1)^p p dim H^p = -h1 + 2 h2``."""
    return -table.h1 + 2 * table.h2


def _check_genus(g: int) -> None:
    if g < 2:
        raise PreconditionError("genus must be at least 2")


def _generic_multiplicity(lam, spec: LaplaceSpectrum | None) -> int:
    mu = mu_of_lambda(lam)
    # Delta is self-adjoint and nonnegative: nothing off [0, inf)
    if abs(mpmath.im(mu)) > IMAG_TOL:
        return 0
    mu = mpmath.re(mu)
    if mu < -IMAG_TOL:
        return 0
    if spec is None:
        raise PreconditionError("a Laplace spectrum is required for generic lambda")
    m = spec.multiplicity(mu)
    if m:
        return m
    if mu >= spec.complete_below:
        raise UnknownSpectralRegion(
            f"mu = {mpmath.nstr(mu, 12)} lies beyond the completeness cutoff "
            f"{mpmath.nstr(spec.complete_below, 12)}")
    return 0


def dims_hyperfunction(g: int, lam, spec: LaplaceSpectrum | None = None) -> CohomologyTable:
    """``dim H^i(Gamma, V^{-omega})`` in every regime.

    Generic ``lambda`` gives ``(m, m, 0)`` with ``m`` the multiplicity of
    ``mu(lambda)`` as a Laplace eigenvalue.  At ``lambda = -1/2`` the value
    ``h0 = 2g`` rests on a unitarity argument: every invariant lies in the
    discrete-series submodule.

    Raises
    ------
    UnsupportedLambda
        For ``lambda = 0``.
    UnknownSpectralRegion
        If ``mu(lambda)`` is beyond the spectrum's completeness cutoff.
    """
    _check_genus(g)
    point = classify_lambda(lam)
    if abs(point.lam) <= REGIME_TOL:
        raise UnsupportedLambda("lambda = 0 is not covered")
    n = point.n
    if point.regime is Regime.GENERIC:
        m = _generic_multiplicity(point.lam, spec)
        dims = (m, m, 0)
    elif point.regime is Regime.POS_HALF_INTEGER:
        dims = (0, 0, 0)
    elif point.regime is Regime.PLUS_HALF:
        dims = (1, 1, 0)
    elif point.regime is Regime.NEG_HALF:
        dims = (2 * g, 2 * g + 1, 1)
    else:
        k = (2 * n + 1) * (2 * g - 2)
        dims = (k, k, 0)
    return CohomologyTable(Module.V, *dims, g=g, point=point)


def dims_finite(g: int, n: int) -> CohomologyTable:
    """``dim H^i(Gamma, F_{2n+1})``; ``F_1`` is the trivial module."""
    _check_genus(g)
    if n < 0:
        raise PreconditionError("n must be >= 0")
    dims = (1, 2 * g, 1) if n == 0 else (0, (2 * g - 2) * (2 * n + 1), 0)
    return CohomologyTable(Module.F, *dims, g=g, n=n)


def dims_discrete(g: int, n: int, side: str = "pos_lambda") -> CohomologyTable:
    """``dim H^i(Gamma, D_{2n+1})``; the same for both signs of ``lambda``."""
    _check_genus(g)
    if n < 0:
        raise PreconditionError("n must be >= 0")
    if side not in ("pos_lambda", "neg_lambda"):
        raise PreconditionError(f"unknown side {side!r}")
    dims = (2 * g, 2, 0) if n == 0 else ((2 * g - 2) * (2 * n + 1), 0, 0)
    return CohomologyTable(Module.D, *dims, g=g, n=n)


def les_sequence(g: int, n: int, positive: bool) -> list[int]:
    """Dimensions around the long exact sequence, in order.

    For ``lambda = n + 1/2`` the short exact sequence is
    ``0 -> F -> V -> D -> 0``, for ``lambda = -(n + 1/2)`` it is
    ``0 -> D -> V -> F -> 0``.
    """
    point = special_point(n, positive)
    V = dims_hyperfunction(g, point)
    F = dims_finite(g, n)
    D = dims_discrete(g, n, "pos_lambda" if positive else "neg_lambda")
    first, last = (F, D) if positive else (D, F)
    seq = []
    for i in range(3):
        seq += [first.dims[i], V.dims[i], last.dims[i]]
    return seq


def les_ranks(dims: list[int]) -> list[int] | None:
    """Ranks of the maps in an exact sequence ``0 -> A_0 -> ... -> A_k -> 0``.

    Exactness forces ``dim A_j = rank(in) + rank(out)``, so the ranks are
    determined one after another.  Returns ``None`` when no exact sequence
    with these dimensions exists.
    """
    ranks, prev = [], 0
    for d in dims:
        r = d - prev
        if r < 0:
            return None
        ranks.append(r)
        prev = r
    return ranks if ranks[-1] == 0 else None


def check_les(g: int, n: int, regime) -> bool:
    """Euler-characteristic additivity along the long exact sequence.

    Also requires the dimensions to admit an exact sequence at all.
    """
    regime = Regime(regime) if not isinstance(regime, Regime) else regime
    if not regime.special:
        raise PreconditionError("check_les needs one of the half-integer regimes")
    if regime in (Regime.PLUS_HALF, Regime.NEG_HALF) and n != 0:
        raise PreconditionError("the +-1/2 regimes have n = 0")
    if regime in (Regime.POS_HALF_INTEGER, Regime.NEG_HALF_INTEGER) and n < 1:
        raise PreconditionError("this regime needs n >= 1")
    positive = regime in (Regime.PLUS_HALF, Regime.POS_HALF_INTEGER)
    seq = les_sequence(g, n, positive)
    alternating = sum((-1) ** j * d for j, d in enumerate(seq))
    return alternating == 0 and les_ranks(seq) is not None


@dataclass(frozen=True)
class PattersonResult:
    ok: bool
    order: int
    minus_chi_prime: int
    table: CohomologyTable

    @property
    def details(self) -> str:
        return (f"divisor order {self.order}, -chi' {self.minus_chi_prime}, "
                f"dims {self.table.dims}")


def check_patterson(g: int, lam, spec: LaplaceSpectrum) -> PattersonResult:
    """Compare the divisor order of the zeta function with ``-chi'``."""
    point = classify_lambda(lam)
    table = dims_hyperfunction(g, point, spec)
    bound = abs(point.lam) + 1
    order = full_divisor(g, spec, bound).order_at(point.lam)
    mcp = -chi_prime(table)
    return PattersonResult(order == mcp, order, mcp, table)
