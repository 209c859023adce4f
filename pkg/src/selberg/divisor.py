"""The divisor of ``Z(Gamma, 1, lambda)`` from the genus and Laplace eigenvalues.

The divisor is assembled structurally rather than by continuing ``Z``:

* each Laplace eigenvalue ``mu`` of multiplicity ``m`` gives zeros of order
  ``m`` at ``lambda = +-sqrt(1/4 - mu)`` (a single zero of order ``2m`` at 0
  when ``mu = 1/4``);
* the topological zeros sit at ``-(2n+1)/2`` with order ``(2g-2)(2n+1)``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Iterator

import mpmath

from .config import Precision, resolve
from .errors import PreconditionError

QUARTER = mpmath.mpf(1) / 4
_KEY_DIGITS = 10


def mu_of_lambda(lam):
    """Casimir eigenvalue ``1/4 - lambda^2``."""
    lam = mpmath.mpmathify(lam)
    return QUARTER - lam ** 2


@dataclass(frozen=True)
class LaplaceSpectrum:
    """Finitely many eigenvalues of the Laplacian, complete below a cutoff.

    ``connected=True`` enforces the constant eigenfunction ``(0, 1)`` as the
    first entry; synthetic test spectra may switch it off.
    """

    entries: tuple[tuple[mpmath.mpf, int], ...]
    complete_below: mpmath.mpf = mpmath.inf
    connected: bool = True
    tol: float = 1e-12

    def __post_init__(self):
        entries = tuple((mpmath.mpf(mu), int(m)) for mu, m in self.entries)
        object.__setattr__(self, "entries", entries)
        object.__setattr__(self, "complete_below", mpmath.mpf(self.complete_below))
        for mu, m in entries:
            if mu < 0 or m < 1:
                raise PreconditionError(f"invalid eigenvalue entry ({mu}, {m})")
        for (mu1, _), (mu2, _) in zip(entries, entries[1:]):
            if not mu2 - mu1 > self.tol:
                raise PreconditionError("eigenvalues must be sorted and distinct")
        if self.connected and (not entries or entries[0][0] != 0 or entries[0][1] != 1):
            raise PreconditionError("a connected surface has (0, 1) as first entry")

    def multiplicity(self, mu) -> int:
        for ev, m in self.entries:
            if abs(ev - mu) <= self.tol:
                return m
        return 0

    def __iter__(self):
        return iter(self.entries)


def read_laplace_spectrum(path) -> LaplaceSpectrum:
    complete = mpmath.inf
    rows = []
    for raw in Path(path).read_text().splitlines():
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            parts = line[1:].split()
            if len(parts) == 2 and parts[0] == "complete_below":
                complete = mpmath.mpf(parts[1])
            continue
        parts = line.split()
        if len(parts) != 4 or parts[0] != "mu" or parts[2] != "mult":
            raise PreconditionError(f"malformed spectrum line: {line}")
        rows.append((mpmath.mpf(parts[1]), int(parts[3])))
    connected = bool(rows) and rows[0] == (0, 1)
    return LaplaceSpectrum(tuple(rows), complete, connected=connected)


def write_laplace_spectrum(spec: LaplaceSpectrum, path) -> Path:
    lines = [f"# complete_below {mpmath.nstr(spec.complete_below, 17)}"]
    lines += [f"mu {mpmath.nstr(mu, 17)} mult {m}" for mu, m in spec.entries]
    path = Path(path)
    path.write_text("\n".join(lines) + "\n")
    return path


def _key(z) -> tuple[float, float]:
    z = complex(z)
    # + 0.0 folds -0.0 into 0.0
    return (round(z.real, _KEY_DIGITS) + 0.0, round(z.imag, _KEY_DIGITS) + 0.0)


@dataclass
class Divisor:
    """Finite map from points of the plane to nonzero integer orders."""

    _points: dict = field(default_factory=dict)

    @classmethod
    def from_points(cls, items: Iterable[tuple[object, int]]) -> "Divisor":
        d = cls()
        for z, order in items:
            d.add(z, order)
        return d

    def add(self, z, order: int) -> None:
        key = _key(z)
        point, current = self._points.get(key, (mpmath.mpc(z), 0))
        total = current + int(order)
        if total == 0:
            self._points.pop(key, None)
        else:
            self._points[key] = (point, total)

    def order_at(self, z) -> int:
        return self._points.get(_key(z), (None, 0))[1]

    def __add__(self, other: "Divisor") -> "Divisor":
        out = Divisor(dict(self._points))
        for point, order in other._points.values():
            out.add(point, order)
        return out

    def __len__(self) -> int:
        return len(self._points)

    def __contains__(self, z) -> bool:
        return _key(z) in self._points

    def items(self) -> list[tuple[mpmath.mpc, int]]:
        """Points with orders, sorted by (real, imaginary) part."""
        return [self._points[k] for k in sorted(self._points)]

    def restricted(self, bound) -> "Divisor":
        return Divisor({k: v for k, v in self._points.items() if abs(v[0]) <= bound})

    def is_real(self) -> bool:
        return all(self.order_at(mpmath.conj(p)) == o for p, o in self.items())


def spectral_divisor(spec: LaplaceSpectrum | Iterable[tuple[object, int]],
                     precision: Precision | int | None = None) -> Divisor:
    with resolve(precision).context():
        return _spectral_divisor(spec)


def _spectral_divisor(spec) -> Divisor:
    d = Divisor()
    for mu, m in spec:
        mu = mpmath.mpf(mu)
        if abs(mu - QUARTER) <= 1e-12:
            d.add(0, 2 * m)
            continue
        root = mpmath.sqrt(mpmath.mpc(QUARTER - mu))
        d.add(root, m)
        d.add(-root, m)
    return d


def trivial_zeros(genus: int) -> Iterator[tuple[Fraction, int]]:
    """Lazily yield ``(-(2n+1)/2, (2g-2)(2n+1))`` for ``n = 0, 1, 2, ...``."""
    if genus < 2:
        raise PreconditionError("genus must be at least 2")
    n = 0
    while True:
        yield Fraction(-(2 * n + 1), 2), (2 * genus - 2) * (2 * n + 1)
        n += 1


def trivial_divisor(genus: int, bound) -> Divisor:
    """Trivial zeros with ``|lambda| <= bound``."""
    d = Divisor()
    bound = mpmath.mpf(bound)
    for lam, order in trivial_zeros(genus):
        point = mpmath.mpf(lam.numerator) / lam.denominator
        if abs(point) > bound:
            break
        d.add(point, order)
    return d


def full_divisor(genus: int, spec: LaplaceSpectrum, bound) -> Divisor:
    return (spectral_divisor(spec) + trivial_divisor(genus, bound)).restricted(bound)


def volume_ratio(genus: int) -> int:
    """``vol(Y) / vol(S^2) = 4 pi (g-1) / 4 pi``, an integer."""
    if genus < 2:
        raise PreconditionError("genus must be at least 2")
    ratio = Fraction(4 * (genus - 1), 4)  # the common factor pi cancels
    assert ratio.denominator == 1
    return int(ratio)


def format_divisor(d: Divisor, digits: int = 20) -> str:
    lines = []
    for point, order in d.items():
        re = mpmath.nstr(mpmath.re(point), digits)
        im = mpmath.nstr(mpmath.im(point), digits)
        lines.append(f"lambda_re {re} lambda_im {im} ord {order}")
    return "\n".join(lines) + ("\n" if lines else "")


def write_divisor(d: Divisor, path, digits: int = 20) -> Path:
    path = Path(path)
    path.write_text(format_divisor(d, digits))
    return path


def read_divisor(path) -> Divisor:
    d = Divisor()
    for raw in Path(path).read_text().splitlines():
        parts = raw.split()
        if not parts or parts[0].startswith("#"):
            continue
        if len(parts) != 6 or parts[0] != "lambda_re" or parts[2] != "lambda_im":
            raise PreconditionError(f"malformed divisor line: {raw}")
        d.add(mpmath.mpc(parts[1], parts[3]), int(parts[5]))
    return d
