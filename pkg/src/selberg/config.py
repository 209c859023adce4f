"""Working precision and the tolerances derived from it.

All tolerances used for classification, deduplication and merging of
lengths are read from one :class:`Precision` object so that raising the
precision tightens every comparison at once.
"""
from __future__ import annotations

from contextlib import contextmanager
from dataclasses import dataclass

import mpmath

GUARD_DIGITS = 10


@dataclass(frozen=True)
class Precision:
    digits: int = 40

    def __post_init__(self):
        if self.digits < 20:
            raise ValueError("precision must be at least 20 digits")

    @property
    def classify_tol(self) -> mpmath.mpf:
        """Width of the band around |tr| = 2 treated as undecidable."""
        return mpmath.mpf(10) ** (-self.digits + 8)

    @property
    def det_tol(self) -> mpmath.mpf:
        return mpmath.mpf(10) ** (-self.digits + 8)

    @property
    def dedup_tol(self) -> mpmath.mpf:
        """Sup-norm distance below which two matrices are the same element."""
        return mpmath.mpf(10) ** (-(self.digits // 2))

    @property
    def merge_tol(self) -> mpmath.mpf:
        """Lengths closer than this are merged into one spectrum entry."""
        return mpmath.mpf(10) ** (-(self.digits // 2))

    def escalated(self, extra: int = 20) -> "Precision":
        return Precision(self.digits + extra)

    @contextmanager
    def context(self):
        """Set mpmath's working precision (with guard digits) for a block."""
        with mpmath.workdps(self.digits + GUARD_DIGITS):
            yield


DEFAULT = Precision()


def resolve(precision: Precision | int | None = None) -> Precision:
    if precision is None:
        return DEFAULT
    if isinstance(precision, Precision):
        return precision
    return Precision(int(precision))
