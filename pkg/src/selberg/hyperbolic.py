"""High-precision SL(2,R) matrices and the conjugacy-type classification.

Entries are :class:`mpmath.mpf` values computed under the working precision
of a :class:`~selberg.config.Precision`.  The group element keeps its actual
lift to SL(2,R) (the sign of the trace carries the M-part ``m_g = +-I``);
the projective identification ``g ~ -g`` is applied when comparing elements,
see :meth:`GroupElement.close_to`.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

import mpmath
import numpy as np

from .config import GUARD_DIGITS, Precision, resolve
from .errors import IndeterminateClass, NotHyperbolic, PreconditionError

Word = tuple[int, ...]


def reduce_word(word: Sequence[int]) -> Word:
    """Freely reduce a word of signed generator indices."""
    out: list[int] = []
    for letter in word:
        if out and out[-1] == -letter:
            out.pop()
        else:
            out.append(letter)
    return tuple(out)


def invert_word(word: Sequence[int]) -> Word:
    return tuple(-x for x in reversed(word))


@dataclass(frozen=True)
class GroupElement:
    """A 2x2 real matrix of determinant one, with the word that produced it."""

    a: mpmath.mpf
    b: mpmath.mpf
    c: mpmath.mpf
    d: mpmath.mpf
    word: Word = ()
    precision: Precision = field(default_factory=resolve, compare=False)

    @classmethod
    def from_entries(cls, a, b, c, d, word: Sequence[int] = (),
                     precision: Precision | int | None = None) -> "GroupElement":
        prec = resolve(precision)
        with prec.context():
            entries = [mpmath.mpf(x) for x in (a, b, c, d)]
        return cls(*entries, word=tuple(word), precision=prec)

    @classmethod
    def identity(cls, precision: Precision | int | None = None) -> "GroupElement":
        return cls.from_entries(1, 0, 0, 1, precision=precision)

    @classmethod
    def diagonal(cls, t_half, precision: Precision | int | None = None) -> "GroupElement":
        """``diag(t_half, 1/t_half)``."""
        prec = resolve(precision)
        with prec.context():
            x = mpmath.mpf(t_half)
            return cls.from_entries(x, 0, 0, 1 / x, precision=prec)

    @classmethod
    def rotation(cls, angle, precision: Precision | int | None = None) -> "GroupElement":
        """The matrix ``[[cos, -sin], [sin, cos]]`` of the given angle.

        As an isometry of the upper half plane it rotates about ``i`` by
        twice ``angle``.
        """
        prec = resolve(precision)
        with prec.context():
            cs, sn = mpmath.cos(angle), mpmath.sin(angle)
            return cls.from_entries(cs, -sn, sn, cs, precision=prec)

    # -- arithmetic -------------------------------------------------------

    def __matmul__(self, other: "GroupElement") -> "GroupElement":
        with self.precision.context():
            a = self.a * other.a + self.b * other.c
            b = self.a * other.b + self.b * other.d
            c = self.c * other.a + self.d * other.c
            d = self.c * other.b + self.d * other.d
        return GroupElement(a, b, c, d, reduce_word(self.word + other.word), self.precision)

    # unary minus rounds to the current mpmath precision, hence the contexts

    def __neg__(self) -> "GroupElement":
        with self.precision.context():
            return GroupElement(-self.a, -self.b, -self.c, -self.d, self.word, self.precision)

    def inverse(self) -> "GroupElement":
        # determinant one: the adjugate is the inverse
        with self.precision.context():
            return GroupElement(self.d, -self.b, -self.c, self.a, invert_word(self.word),
                                self.precision)

    def conjugate(self, h: "GroupElement") -> "GroupElement":
        """``h g h^-1``."""
        return h @ self @ h.inverse()

    def __pow__(self, n: int) -> "GroupElement":
        if n < 0:
            return self.inverse() ** (-n)
        result = GroupElement.identity(self.precision)
        base = self
        while n:
            if n & 1:
                result = result @ base
            base = base @ base
            n >>= 1
        return result

    def trace(self) -> mpmath.mpf:
        with self.precision.context():
            return self.a + self.d

    def det(self) -> mpmath.mpf:
        with self.precision.context():
            return self.a * self.d - self.b * self.c

    def norm(self) -> mpmath.mpf:
        with self.precision.context():
            return max(abs(self.a), abs(self.b), abs(self.c), abs(self.d))

    def entries(self) -> tuple:
        return (self.a, self.b, self.c, self.d)

    def to_numpy(self) -> np.ndarray:
        return np.array([[float(self.a), float(self.b)], [float(self.c), float(self.d)]])

    def distance(self, other: "GroupElement", projective: bool = True) -> mpmath.mpf:
        """Sup-norm distance, minimised over ``other`` and ``-other`` if projective."""
        with self.precision.context():
            plus = max(abs(x - y) for x, y in zip(self.entries(), other.entries()))
            if not projective:
                return plus
            minus = max(abs(x + y) for x, y in zip(self.entries(), other.entries()))
            return min(plus, minus)

    def close_to(self, other: "GroupElement", tol=None, projective: bool = True) -> bool:
        tol = self.precision.dedup_tol if tol is None else tol
        return self.distance(other, projective) < tol

    def with_word(self, word: Sequence[int]) -> "GroupElement":
        return GroupElement(self.a, self.b, self.c, self.d, tuple(word), self.precision)

    def at_precision(self, precision: Precision | int) -> "GroupElement":
        return GroupElement.from_entries(*self.entries(), word=self.word, precision=precision)

    def __repr__(self) -> str:
        nums = ", ".join(mpmath.nstr(x, 12) for x in self.entries())
        return f"GroupElement([{nums}], word={self.word})"


class Kind(enum.Enum):
    HYPERBOLIC = "hyperbolic"
    ELLIPTIC = "elliptic"
    PARABOLIC = "parabolic"
    IDENTITY = "identity"


@dataclass(frozen=True)
class HyperbolicData:
    """Length ``l``, ``t = e^l`` and the sign of the trace of a hyperbolic element."""

    length: mpmath.mpf
    t: mpmath.mpf
    m_sign: int


class Classification(NamedTuple):
    kind: Kind
    data: HyperbolicData | None = None


def _check_det(g: GroupElement) -> None:
    prec = g.precision
    with prec.context():
        scale = max(mpmath.mpf(1), g.norm() ** 2)
        if abs(g.det() - 1) > prec.det_tol * scale:
            raise PreconditionError(f"determinant {mpmath.nstr(g.det(), 15)} is not 1")


def _is_identity(g: GroupElement) -> bool:
    tol = g.precision.classify_tol
    for s in (1, -1):
        if (abs(g.a - s) <= tol and abs(g.d - s) <= tol
                and abs(g.b) <= tol and abs(g.c) <= tol):
            return True
    return False


def classify(g: GroupElement) -> Classification:
    """Decide whether ``g`` is hyperbolic, elliptic, parabolic or +-I.

    Raises
    ------
    IndeterminateClass
        If ``|tr g|`` lies within the classification tolerance of 2 without
        being equal to it at working precision.
    """
    _check_det(g)
    prec = g.precision
    with prec.context():
        if _is_identity(g):
            return Classification(Kind.IDENTITY)
        tr = g.trace()
        gap = abs(tr) - 2
        noise = mpmath.mpf(10) ** (-(prec.digits + GUARD_DIGITS - 2)) * max(1, g.norm() ** 2)
        if abs(gap) <= noise:
            return Classification(Kind.PARABOLIC)
        if abs(gap) <= prec.classify_tol:
            raise IndeterminateClass(
                f"|tr| - 2 = {mpmath.nstr(gap, 5)} is below the tolerance; raise the precision")
        if gap < 0:
            return Classification(Kind.ELLIPTIC)
        length = 2 * mpmath.acosh(abs(tr) / 2)
        data = HyperbolicData(length=+length, t=mpmath.exp(length),
                              m_sign=1 if tr > 0 else -1)
    return Classification(Kind.HYPERBOLIC, data)


def translation_length(g: GroupElement) -> mpmath.mpf:
    """``2 arccosh(|tr g| / 2)`` for hyperbolic ``g``."""
    cls = classify(g)
    if cls.kind is not Kind.HYPERBOLIC:
        raise NotHyperbolic(f"element is {cls.kind.value}")
    return cls.data.length


def displacement_cosh(g: GroupElement) -> mpmath.mpf:
    """``cosh d(i, g i)`` in the upper half plane."""
    with g.precision.context():
        return (g.a ** 2 + g.b ** 2 + g.c ** 2 + g.d ** 2) / 2
