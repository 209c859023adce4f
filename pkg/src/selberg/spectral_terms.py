"""Spectral-side terms of the trace formula for SL(2,R).

The identity contribution combines an odd trigonometric term with an even
regularised trace over the dual sphere.  Its only pinned content is the
pole structure: simple poles at ``-(2n+1)/2`` with residue
``(2g-2)(2n+1)`` and none elsewhere.  The leftover affine ambiguity of the
regularisation is carried by two constants ``c0, c1``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

import mpmath

from .config import Precision, resolve
from .errors import InsufficientSamples, PoleHit, PreconditionError
from .zeta import SigmaParam, _sigma, log_derivative

POLE_TOL = 1e-12
HALF = Fraction(1, 2)


@dataclass(frozen=True)
class EpsilonData:
    """``eps_alpha`` and ``eps_sigma``, each 0 or 1/2."""

    eps_alpha: Fraction
    eps_sigma: Fraction

    def __post_init__(self):
        for x in (self.eps_alpha, self.eps_sigma):
            if x not in (0, HALF):
                raise PreconditionError(f"epsilon must be 0 or 1/2, got {x}")
        if (self.eps_sigma - HALF - self.eps_alpha) % 1 != 0:
            raise PreconditionError("eps_sigma must equal 1/2 + eps_alpha mod 1")

    @property
    def pole_offset(self) -> Fraction:
        """Poles of the trig term sit at ``eps_sigma + Z``."""
        return self.eps_sigma


def exp_h_alpha(precision: Precision | int | None = None) -> mpmath.matrix:
    """``exp(2 pi i H_alpha)`` with ``H_alpha = diag(1/2, -1/2)``."""
    with resolve(precision).context():
        H = mpmath.matrix([[mpmath.mpf(1) / 2, 0], [0, -mpmath.mpf(1) / 2]])
        return mpmath.expm(2j * mpmath.pi * H)


def epsilon_of(sigma, precision: Precision | int | None = None) -> EpsilonData:
    """Evaluate ``sigma`` on ``exp(2 pi i H_alpha)`` and read off the epsilons."""
    sigma = _sigma(sigma)
    prec = resolve(precision)
    with prec.context():
        E = exp_h_alpha(prec)
        tol = mpmath.mpf(10) ** (-prec.digits // 2)
        if mpmath.mnorm(E + mpmath.eye(2), 1) < tol:
            value = sigma.sign_on_minus_I
        elif mpmath.mnorm(E - mpmath.eye(2), 1) < tol:
            value = 1
        else:
            raise PreconditionError("exp(2 pi i H_alpha) is not central")
    eps_alpha = Fraction(0) if value == 1 else HALF
    return EpsilonData(eps_alpha, (HALF + eps_alpha) % 1)


def _near_lattice(lam, offset) -> bool:
    """Whether ``lam`` lies within :data:`POLE_TOL` of ``offset + Z``."""
    lam = mpmath.mpc(lam)
    x = mpmath.re(lam) - offset
    return abs(mpmath.im(lam)) <= POLE_TOL and abs(x - mpmath.nint(x)) <= POLE_TOL


def trig_term(eps: EpsilonData, lam):
    """``pi tan(pi lambda)`` if ``eps_sigma = 1/2``, else ``-pi cot(pi lambda)``."""
    lam = mpmath.mpmathify(lam)
    offset = mpmath.mpf(eps.eps_sigma.numerator) / eps.eps_sigma.denominator
    if _near_lattice(lam, offset):
        raise PoleHit(f"trig term has a pole at {lam}")
    if eps.eps_sigma == HALF:
        return mpmath.pi * mpmath.tan(mpmath.pi * lam)
    return -mpmath.pi * mpmath.cot(mpmath.pi * lam)


def _check_dual_pole(lam) -> None:
    lam = mpmath.mpc(lam)
    for s in (lam, -lam):
        if mpmath.re(s) > 0 and _near_lattice(s, mpmath.mpf(1) / 2):
            raise PoleHit(f"dual trace has a pole at {lam}")


def dual_trace_partial(lam, N: int):
    """``sum_{n<=N} [(2n+1)/((n+1/2)^2 - lambda^2) - 2/(n+1)]``.

    The sphere Laplacian shifted by 1/4 has eigenvalues ``(n+1/2)^2`` with
    multiplicity ``2n+1``; the counterterm ``2/(n+1)`` makes the sum
    converge with an ``O(1/N)`` tail.
    """
    if N < 0:
        raise PreconditionError("N must be >= 0")
    _check_dual_pole(lam)
    lam2 = mpmath.mpmathify(lam) ** 2
    terms = []
    for n in range(N + 1):
        a = n + mpmath.mpf(1) / 2
        terms.append((2 * n + 1) / (a * a - lam2) - mpmath.mpf(2) / (n + 1))
    return mpmath.fsum(terms)


def dual_trace(lam):
    """The ``N -> infinity`` limit of :func:`dual_trace_partial`.

    Splitting ``(2n+1)/((n+1/2)^2 - lambda^2)`` into partial fractions gives
    ``-psi(1/2 + lambda) - psi(1/2 - lambda) - 2 gamma``.
    """
    _check_dual_pole(lam)
    lam = mpmath.mpmathify(lam)
    half = mpmath.mpf(1) / 2
    return -mpmath.digamma(half + lam) - mpmath.digamma(half - lam) - 2 * mpmath.euler


@dataclass(frozen=True)
class IdentityTermModel:
    g: int
    c0: float = 0.0
    c1: float = 0.0

    def __post_init__(self):
        if self.g < 2:
            raise PreconditionError("genus must be at least 2")

    def with_constants(self, c0, c1) -> "IdentityTermModel":
        return IdentityTermModel(self.g, c0, c1)


TAN_CASE = EpsilonData(Fraction(0), HALF)


def identity_term(model: IdentityTermModel, lam):
    """``(g-1) [2 lambda pi tan(pi lambda) - 2 lambda D(lambda)] + c0 + c1 lambda``.

    ``D`` is :func:`dual_trace`.  The odd trig part and the even dual part
    have opposite residues at ``+(n+1/2)``, where the sum is holomorphic,
    and equal residues at ``-(n+1/2)``.  At the removable points the limit
    ``4 (g-1) lambda (psi(1/2 + lambda) + gamma)`` is used.

    Raises
    ------
    PoleHit
        At ``lambda = -(2n+1)/2``.
    """
    lam = mpmath.mpmathify(lam)
    if mpmath.re(lam) < 0 and _near_lattice(-lam, mpmath.mpf(1) / 2):
        raise PoleHit(f"identity term has a pole at {lam}")
    if _near_lattice(lam, mpmath.mpf(1) / 2):
        core = 4 * lam * (mpmath.digamma(mpmath.mpf(1) / 2 + lam) + mpmath.euler)
    else:
        core = 2 * lam * trig_term(TAN_CASE, lam) - 2 * lam * dual_trace(lam)
    return (model.g - 1) * core + model.c0 + model.c1 * lam


def spectral_part(laplace, lam):
    """``sum_mu m * 2 lambda / (lambda^2 - (1/4 - mu))`` over the given eigenvalues."""
    lam = mpmath.mpmathify(lam)
    total = mpmath.mpf(0)
    for mu, m in laplace:
        s2 = mpmath.mpf(1) / 4 - mpmath.mpf(mu)
        denom = lam ** 2 - s2
        if abs(denom) <= POLE_TOL:
            raise PoleHit(f"spectral term has a pole at {lam}")
        total += m * 2 * lam / denom
    return total


DOMINANT_SPECTRUM = ((0, 1),)


def l_model(model: IdentityTermModel, laplace, lam):
    """Model logarithmic derivative: identity term plus explicit eigenvalue terms."""
    return identity_term(model, lam) + spectral_part(laplace, lam)


def contour_integral(f: Callable, center, radius, n: int = 128,
                     precision: Precision | int | None = None):
    """``(1 / 2 pi i) oint f`` over a circle, by the trapezoid rule.

    For ``f`` analytic in an annulus around the circle the error decays
    geometrically in ``n``.
    """
    with resolve(precision).context():
        center = mpmath.mpmathify(center)
        radius = mpmath.mpf(radius)
        total = mpmath.mpc(0)
        for j in range(n):
            w = mpmath.expjpi(mpmath.mpf(2 * j) / n)
            total += f(center + radius * w) * w
        return total * radius / n


def residue(f: Callable, center, radius=0.25, n: int = 128,
            precision: Precision | int | None = None):
    return contour_integral(f, center, radius, n, precision)


@dataclass(frozen=True)
class Calibration:
    c0: mpmath.mpf
    c1: mpmath.mpf
    residual: mpmath.mpf
    samples: tuple

    @property
    def model_constants(self) -> tuple[float, float]:
        return (float(self.c0), float(self.c1))


def calibrate(model: IdentityTermModel, target, sample_points: Sequence,
              laplace=DOMINANT_SPECTRUM, sigma=SigmaParam.TRIVIAL,
              precision: Precision | int | None = None) -> Calibration:
    """Least-squares fit of ``c0 + c1 lambda``.

    ``target`` is a :class:`~selberg.fuchsian.LengthSpectrum` (its zeta
    log-derivative is used) or any callable of ``lambda``.  The fit
    minimises ``target - Id_0 - spectral_part(laplace)`` over the samples,
    with ``Id_0`` the identity term at ``c0 = c1 = 0``.  Everything not
    modelled lands in the reported residual (Euclidean norm over real and
    imaginary parts).

    Raises
    ------
    InsufficientSamples
        With fewer than two distinct sample points.
    """
    with resolve(precision).context():
        return _calibrate(model, target, sample_points, laplace, sigma)


def _calibrate(model, target, sample_points, laplace, sigma) -> Calibration:
    points = [mpmath.mpmathify(p) for p in sample_points]
    if len({complex(p) for p in points}) < 2:
        raise InsufficientSamples("at least two distinct sample points are needed")
    if any(mpmath.re(p) < 2 for p in points):
        raise PreconditionError("sample points need Re(lambda) >= 2")
    if callable(target):
        f = target
    else:
        f = lambda lam: log_derivative(target, sigma, lam).value  # noqa: E731
    base = model.with_constants(0, 0)
    rows, rhs = [], []
    for p in points:
        r = mpmath.mpc(f(p)) - l_model(base, laplace, p)
        p = mpmath.mpc(p)
        rows += [[1, mpmath.re(p)], [0, mpmath.im(p)]]
        rhs += [mpmath.re(r), mpmath.im(r)]
    # normal equations of a two-column system, solved at working precision
    A, b = mpmath.matrix(rows), mpmath.matrix(rhs)
    x = mpmath.lu_solve(A.T * A, A.T * b)
    res = mpmath.norm(A * x - b)
    return Calibration(x[0], x[1], res, tuple(points))
