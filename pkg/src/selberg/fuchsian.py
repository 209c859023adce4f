"""Cocompact Fuchsian groups and their primitive length spectrum.

Enumeration works in two layers.  The combinatorial search over the orbit
of the base point ``i`` runs in float64 with numpy (it only has to tell
group elements apart, and distinct elements of a discrete group are far
apart); every length that ends up in a :class:`LengthSpectrum` is then
recomputed from its word at the configured mpmath precision.

Completeness is certified geometrically through the Dirichlet domain ``D``
centred at ``i``:

* ``D`` is cut out by bisectors of finitely many orbit points, so the
  polygon computed from any finite set contains the true domain; it is
  exact once its area equals ``4 pi (g - 1)``.
* a class of translation length ``l`` has a representative whose axis
  meets ``D``; such a representative moves ``i`` by at most
  ``2 asinh(cosh(r) sinh(l / 2))`` where ``r`` is the circumradius of ``D``.
* the orbit ball ``{gamma : d(i, gamma i) <= R}`` is reached from the
  identity by side-pairing steps that never leave the ball.
"""
from __future__ import annotations

import hashlib
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Sequence

import mpmath
import numpy as np
from scipy.spatial import cKDTree

from .config import Precision, resolve
from .errors import (IncompleteBall, InconclusivePrimitivity, NotHyperbolic,
                     PrecisionExhausted, PreconditionError, VerificationError)
from .hyperbolic import (GroupElement, Kind, Word, classify, invert_word,
                         reduce_word, translation_length)

log = logging.getLogger(__name__)

# float64 tolerances for the orbit search
_MATRIX_TOL = 1e-7
_KLEIN_TOL = 1e-9
_AREA_TOL = 1e-8


@dataclass(frozen=True)
class FuchsianGroup:
    """A cocompact torsion-free Fuchsian group given by generator matrices.

    Generator ``k`` (1-based) is addressed by the letter ``k`` in words and
    its inverse by ``-k``.
    """

    generators: tuple[GroupElement, ...]
    genus: int
    label: str = "custom"
    precision: Precision = field(default_factory=resolve, compare=False)

    def __post_init__(self):
        if self.genus < 2:
            raise PreconditionError("genus must be at least 2")
        object.__setattr__(self, "generators", tuple(
            g.with_word((k + 1,)) for k, g in enumerate(self.generators)))

    @property
    def volume(self) -> float:
        """Hyperbolic area of the quotient surface (Gauss-Bonnet)."""
        return 4 * math.pi * (self.genus - 1)

    @cached_property
    def letters(self) -> dict[int, GroupElement]:
        out = {}
        for k, g in enumerate(self.generators, start=1):
            out[k] = g
            out[-k] = g.inverse()
        return out

    def letter_order(self) -> list[int]:
        """Deterministic letter order: 1, -1, 2, -2, ..."""
        return [s * k for k in range(1, len(self.generators) + 1) for s in (1, -1)]

    def element(self, word: Sequence[int]) -> GroupElement:
        g = GroupElement.identity(self.precision)
        for letter in word:
            g = g @ self.letters[letter]
        return g.with_word(reduce_word(word))

    @cached_property
    def geometry(self) -> "DirichletDomain":
        return dirichlet_domain(self)

    def systole(self) -> mpmath.mpf:
        """Length of the shortest closed geodesic, at working precision."""
        return self.geometry.systole


def bolza_group(precision: Precision | int | None = None) -> FuchsianGroup:
    """The genus-2 Bolza surface group.

    ``g_k = R_k H R_k^-1`` for ``k = 0..3`` where ``H`` translates along the
    imaginary axis by ``2 arccosh(1 + sqrt 2)`` and ``R_k`` rotates the
    hyperbolic plane about ``i`` by ``k pi / 4`` (the matrix of angle
    ``k pi / 8``).  They satisfy ``g0 g1^-1 g2 g3^-1 g0^-1 g1 g2^-1 g3 = 1``.
    """
    prec = resolve(precision)
    with prec.context():
        s2 = mpmath.sqrt(2)
        x = mpmath.sqrt(2 + 2 * s2)
        H = GroupElement.from_entries(1 + s2, x, x, 1 + s2, precision=prec)
        gens = []
        for k in range(4):
            R = GroupElement.rotation(k * mpmath.pi / 8, precision=prec)
            gens.append(H.conjugate(R))
    return FuchsianGroup(tuple(gens), genus=2, label="bolza", precision=prec)


# ---------------------------------------------------------------------------
# word balls at full precision


def _word_key(word: Word) -> tuple:
    return (len(word), tuple((abs(x), x < 0) for x in word))


def _float_key(entries) -> tuple:
    vals = [float(x) for x in entries]
    for v in vals:
        if abs(v) > 1e-12:
            if v < 0:
                vals = [-x for x in vals]
            break
    return tuple(round(v, 6) for v in vals)


def _subtree(G: FuchsianGroup, first: int, radius: int) -> list[tuple[Word, tuple]]:
    prec = G.precision
    raw = {k: g.entries() for k, g in G.letters.items()}
    order = G.letter_order()
    out = []

    def mul(m, n):
        return (m[0] * n[0] + m[1] * n[2], m[0] * n[1] + m[1] * n[3],
                m[2] * n[0] + m[3] * n[2], m[2] * n[1] + m[3] * n[3])

    with prec.context():
        stack = [((first,), raw[first])]
        while stack:
            word, m = stack.pop()
            out.append((word, m))
            if len(word) < radius:
                for letter in reversed(order):
                    if letter != -word[-1]:
                        stack.append((word + (letter,), mul(m, raw[letter])))
    return out


def enumerate_ball(G: FuchsianGroup, radius: int, threads: int = 1) -> list[GroupElement]:
    """All elements given by reduced words of length ``<= radius``.

    Elements are deduplicated as matrices up to sign, keeping the first
    word in (length, lexicographic) order; the identity comes first.  The
    search is split over the first letter and merged deterministically, so
    the output does not depend on ``threads``.
    """
    if radius < 1:
        raise PreconditionError("radius must be >= 1")
    prec = G.precision
    firsts = G.letter_order()
    if threads > 1:
        with ThreadPoolExecutor(threads) as pool:
            parts = list(pool.map(lambda f: _subtree(G, f, radius), firsts))
    else:
        parts = [_subtree(G, f, radius) for f in firsts]
    items = [item for part in parts for item in part]
    items.sort(key=lambda it: _word_key(it[0]))

    identity = GroupElement.identity(prec)
    result = [identity]
    seen: dict[tuple, list[GroupElement]] = {_float_key(identity.entries()): [identity]}
    same_tol = mpmath.mpf(10) ** (-prec.digits + 8)
    for word, m in items:
        g = GroupElement(*m, word=word, precision=prec)
        key = _float_key(m)
        bucket = seen.setdefault(key, [])
        duplicate = False
        for h in bucket:
            dist = g.distance(h)
            scale = max(1, g.norm())
            if dist < same_tol * scale:
                duplicate = True
                break
            if dist < prec.dedup_tol:
                raise PrecisionExhausted(
                    f"words {word} and {h.word} agree to {mpmath.nstr(dist, 3)}; "
                    "raise the precision")
        if not duplicate:
            bucket.append(g)
            result.append(g)
    return result


# ---------------------------------------------------------------------------
# float64 orbit geometry


def _as_array(elements: Sequence[GroupElement]) -> np.ndarray:
    return np.array([[[float(g.a), float(g.b)], [float(g.c), float(g.d)]] for g in elements])


def orbit_points(mats: np.ndarray) -> np.ndarray:
    """Hyperboloid coordinates of ``gamma i`` for a stack of matrices."""
    a, b, c, d = mats[..., 0, 0], mats[..., 0, 1], mats[..., 1, 0], mats[..., 1, 1]
    x0 = (a * a + b * b + c * c + d * d) / 2
    x1 = (a * a + b * b - c * c - d * d) / 2
    x2 = a * c + b * d
    return np.stack([x0, x1, x2], axis=-1)


def _klein_to_hyperboloid(uv: np.ndarray) -> np.ndarray:
    s = 1 / np.sqrt(1 - (uv ** 2).sum(axis=-1))
    return np.stack([s, uv[..., 0] * s, uv[..., 1] * s], axis=-1)


def _minkowski(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    return x[..., 0] * y[..., 0] - x[..., 1] * y[..., 1] - x[..., 2] * y[..., 2]


def _clip(poly: list, tags: list, normal: np.ndarray, offset: float, tag: int):
    """Clip a convex polygon by ``normal . p <= offset``; edge i runs poly[i] -> poly[i+1]."""
    n = len(poly)
    vals = [float(normal @ p) - offset for p in poly]
    if all(v <= 1e-15 for v in vals):
        return poly, tags
    out, out_tags = [], []
    for i in range(n):
        p, q = poly[i], poly[(i + 1) % n]
        vp, vq = vals[i], vals[(i + 1) % n]
        if vp <= 0:
            out.append(p)
            out_tags.append(tags[i])
            if vq > 0:
                s = vp / (vp - vq)
                out.append(p + s * (q - p))
                out_tags.append(tag)
        elif vq <= 0:
            s = vp / (vp - vq)
            out.append(p + s * (q - p))
            out_tags.append(tags[i])
    return out, out_tags


@dataclass
class DirichletDomain:
    """The Dirichlet polygon of the group centred at ``i``.

    ``side_pairings`` are the elements whose bisectors carry an edge;
    ``neighbors`` every nontrivial element whose translate of the domain
    touches it (edge or vertex).
    """

    vertices: np.ndarray          # hyperboloid coordinates, counter-clockwise
    angles: np.ndarray
    area: float
    covering_radius: float
    side_pairings: list[GroupElement]
    neighbors: list[GroupElement]
    systole: mpmath.mpf
    systole_word: Word

    @cached_property
    def klein(self) -> np.ndarray:
        return self.vertices[:, 1:] / self.vertices[:, :1]

    @cached_property
    def side_array(self) -> np.ndarray:
        return _as_array(self.side_pairings)

    @cached_property
    def neighbor_array(self) -> np.ndarray:
        return _as_array(self.neighbors)

    def ball_radius(self, length: float) -> float:
        """Displacement bound for representatives of classes of length ``<= length``."""
        return 2 * math.asinh(math.cosh(self.covering_radius) * math.sinh(length / 2))


def _polygon(elements: Sequence[GroupElement]):
    mats = _as_array(elements)
    pts = orbit_points(mats)
    order = np.argsort(pts[:, 0], kind="stable")
    poly = [np.array(v, dtype=float) for v in ([-2, -2], [2, -2], [2, 2], [-2, 2])]
    tags = [-1] * 4
    for idx in order:
        q = pts[idx]
        if q[0] < 1 + 1e-9:
            continue  # the identity
        poly, tags = _clip(poly, tags, q[1:], q[0] - 1, int(idx))
    return np.array(poly), tags


def _vertex_angles(hyp: np.ndarray) -> np.ndarray:
    k = len(hyp)
    angles = np.empty(k)
    for i in range(k):
        v, prev, nxt = hyp[i], hyp[i - 1], hyp[(i + 1) % k]
        ta = prev - _minkowski(prev, v) * v
        tb = nxt - _minkowski(nxt, v) * v
        cosang = -_minkowski(ta, tb) / math.sqrt(_minkowski(ta, ta) * _minkowski(tb, tb))
        angles[i] = math.acos(max(-1.0, min(1.0, cosang)))
    return angles


def _merge_vertices(poly: np.ndarray, tags: list):
    keep_p, keep_t = [], []
    for p, t in zip(poly, tags):
        if keep_p and np.linalg.norm(p - keep_p[-1]) < 1e-12:
            keep_t[-1] = t
            continue
        keep_p.append(p)
        keep_t.append(t)
    if len(keep_p) > 1 and np.linalg.norm(keep_p[0] - keep_p[-1]) < 1e-12:
        keep_p.pop()
        keep_t.pop()
    return np.array(keep_p), keep_t


def dirichlet_domain(G: FuchsianGroup, max_word_radius: int = 4) -> DirichletDomain:
    """Compute and certify the Dirichlet domain of ``G`` centred at ``i``.

    Raises
    ------
    IncompleteBall
        If no word radius up to ``max_word_radius`` yields a compact polygon
        of area ``4 pi (g - 1)``.
    """
    target = G.volume
    for w in range(1, max_word_radius + 1):
        elements = enumerate_ball(G, w)
        poly, tags = _polygon(elements)
        poly, tags = _merge_vertices(poly, tags)
        if len(poly) < 3 or np.max((poly ** 2).sum(axis=1)) >= 1 - 1e-12:
            continue
        hyp = _klein_to_hyperboloid(poly)
        angles = _vertex_angles(hyp)
        area = (len(poly) - 2) * math.pi - angles.sum()
        log.debug("word radius %d: %d-gon of area %.12f", w, len(poly), area)
        if abs(area - target) < _AREA_TOL * target:
            break
    else:
        raise IncompleteBall(
            f"Dirichlet domain not certified up to word radius {max_word_radius}")

    # tags[i] is the constraint carrying the edge poly[i] -> poly[i+1]
    side_idx = sorted(set(tags), key=lambda i: _word_key(elements[i].word))
    side_pairings = [elements[i] for i in side_idx]
    covering = float(np.max(np.arccosh(hyp[:, 0])))
    domain = DirichletDomain(vertices=hyp, angles=angles, area=area,
                             covering_radius=covering, side_pairings=side_pairings,
                             neighbors=[], systole=mpmath.mpf(0), systole_word=())

    # neighbours: all translates touching a vertex, found in the ball of radius 2r
    ball = orbit_ball(G, domain, 2 * covering + 1e-6)
    pts = orbit_points(ball.mats)
    dist_o = hyp[:, 0]
    close = np.abs(_minkowski(hyp[None, :, :], pts[:, None, :]) - dist_o[None, :])
    touching = np.where((close < 1e-8 * dist_o[None, :]).any(axis=1))[0]
    touching = [i for i in touching if i != 0]
    domain.neighbors = [ball.element(G, i) for i in touching]

    # systole: the shortest side-pairing length bounds it from above
    upper = min(float(translation_length(s)) for s in side_pairings)
    ball = orbit_ball(G, domain, domain.ball_radius(upper) + 1e-6)
    tr = np.abs(ball.mats[:, 0, 0] + ball.mats[:, 1, 1])
    tr[0] = np.inf
    best = int(np.argmin(tr))
    g = ball.element(G, best)
    domain.systole = translation_length(g)
    domain.systole_word = g.word
    return domain


# ---------------------------------------------------------------------------
# orbit balls


@dataclass
class OrbitBall:
    """All group elements moving ``i`` by at most ``radius``, in BFS order.

    Element 0 is the identity.  ``parent[i]`` and ``step[i]`` record that
    element ``i`` equals ``element(parent[i]) @ side_pairings[step[i]]``.
    """

    radius: float
    mats: np.ndarray
    parent: np.ndarray
    step: np.ndarray
    side_words: list[Word]

    @cached_property
    def tree(self) -> cKDTree:
        return cKDTree(self.mats.reshape(-1, 4))

    def __len__(self) -> int:
        return len(self.mats)

    def word(self, i: int) -> Word:
        parts = []
        while i != 0:
            parts.append(self.side_words[self.step[i]])
            i = int(self.parent[i])
        word: list[int] = []
        for p in reversed(parts):
            word.extend(p)
        return reduce_word(word)

    def element(self, G: FuchsianGroup, i: int) -> GroupElement:
        return G.element(self.word(i))

    def lookup(self, mats: np.ndarray) -> np.ndarray:
        """Index of each matrix in the ball, or -1 if absent."""
        if len(mats) == 0:
            return np.zeros(0, dtype=int)
        dist, idx = self.tree.query(mats.reshape(-1, 4), p=np.inf,
                                    distance_upper_bound=_MATRIX_TOL)
        return np.where(np.isfinite(dist), idx, -1)


def _unique_rows(cand: np.ndarray) -> np.ndarray:
    """Indices of first occurrences of distinct matrices (sup-norm tolerance)."""
    flat = cand.reshape(-1, 4)
    keys = np.ascontiguousarray(np.round(flat * 1e4).astype(np.int64))
    view = keys.view(np.dtype((np.void, keys.dtype.itemsize * 4))).ravel()
    _, first = np.unique(view, return_index=True)
    first.sort()
    # rounding can split one element across a grid line: merge stragglers
    pairs = cKDTree(flat[first]).query_pairs(_MATRIX_TOL, p=np.inf, output_type="ndarray")
    if len(pairs):
        drop = np.unique(pairs.max(axis=1))
        first = np.delete(first, drop)
    return first


def orbit_ball(G: FuchsianGroup, domain: DirichletDomain, radius: float) -> OrbitBall:
    """Breadth-first search of the orbit ball with side-pairing steps."""
    steps = domain.side_array
    side_words = [s.word for s in domain.side_pairings]
    limit = math.cosh(radius) * (1 + 1e-12) + 1e-9
    mats = [np.eye(2)[None]]
    parents = [np.array([0])]
    stepl = [np.array([0])]
    prev = np.zeros((0, 2, 2))
    frontier = mats[0]
    frontier_ids = np.array([0])
    total = 1
    while len(frontier):
        cand = np.einsum("fij,sjk->fsik", frontier, steps).reshape(-1, 2, 2)
        par = np.repeat(frontier_ids, len(steps))
        stp = np.tile(np.arange(len(steps)), len(frontier))
        keep = (cand ** 2).sum(axis=(1, 2)) / 2 <= limit
        cand, par, stp = cand[keep], par[keep], stp[keep]
        if len(cand) == 0:
            break
        first = _unique_rows(cand)
        cand, par, stp = cand[first], par[first], stp[first]
        # a neighbour of layer k lies in layer k-1, k or k+1
        recent = np.concatenate([prev, frontier])
        dist, _ = cKDTree(recent.reshape(-1, 4)).query(
            cand.reshape(-1, 4), p=np.inf, distance_upper_bound=_MATRIX_TOL)
        new = ~np.isfinite(dist)
        cand, par, stp = cand[new], par[new], stp[new]
        ids = np.arange(total, total + len(cand))
        total += len(cand)
        mats.append(cand)
        parents.append(par)
        stepl.append(stp)
        prev, frontier, frontier_ids = frontier, cand, ids
    return OrbitBall(radius=radius, mats=np.concatenate(mats),
                     parent=np.concatenate(parents), step=np.concatenate(stepl),
                     side_words=side_words)


def axis_meets_domain(mats: np.ndarray, domain: DirichletDomain,
                      tol: float = _KLEIN_TOL) -> np.ndarray:
    """Whether the axis of each hyperbolic matrix meets the closed domain."""
    a, b, c, d = mats[:, 0, 0], mats[:, 0, 1], mats[:, 1, 0], mats[:, 1, 1]
    tr = a + d
    root = np.sqrt(np.maximum(tr * tr - 4, 0))
    ends = []
    for lam in ((tr + root) / 2, (tr - root) / 2):
        # eigenvector (p, q): take the better conditioned of two formulas
        p1, q1 = b, lam - a
        p2, q2 = lam - d, c
        use1 = (p1 * p1 + q1 * q1) >= (p2 * p2 + q2 * q2)
        p = np.where(use1, p1, p2)
        q = np.where(use1, q1, q2)
        n = p * p + q * q
        ends.append(np.stack([(p * p - q * q) / n, 2 * p * q / n], axis=-1))
    e1, e2 = ends
    direction = e2 - e1
    direction /= np.linalg.norm(direction, axis=1, keepdims=True)
    rel = domain.klein[None, :, :] - e1[:, None, :]
    side = direction[:, None, 0] * rel[..., 1] - direction[:, None, 1] * rel[..., 0]
    return (side.min(axis=1) <= tol) & (side.max(axis=1) >= -tol)


# ---------------------------------------------------------------------------
# primitivity


def _roots(g: np.ndarray, n: int) -> list[np.ndarray]:
    """Real n-th roots of a hyperbolic matrix in SL(2,R)."""
    tr = g[0, 0] + g[1, 1]
    sign = 1.0 if tr > 0 else -1.0
    ell = 2 * math.acosh(abs(tr) / 2)
    J = (sign * g - math.cosh(ell / 2) * np.eye(2)) / math.sinh(ell / 2)
    base = math.cosh(ell / 2 / n) * np.eye(2) + math.sinh(ell / 2 / n) * J
    return [eps * base for eps in (1.0, -1.0) if eps ** n == sign]


def reduce_to_identity(G: FuchsianGroup, m: np.ndarray, max_steps: int = 10_000):
    """Greedy descent of ``m`` towards the identity through domain neighbours.

    Returns the word of ``m`` if it lies in ``G`` and ``None`` otherwise.
    Each step multiplies by the neighbour that brings the orbit point
    closest to ``i``; for group elements that distance strictly decreases.
    """
    domain = G.geometry
    nb = domain.neighbor_array
    h = m.copy()
    word: list[int] = []
    for _ in range(max_steps):
        cur = (h ** 2).sum() / 2
        cand = h @ nb
        disp = (cand ** 2).sum(axis=(1, 2)) / 2
        j = int(np.argmin(disp))
        if disp[j] >= cur - 1e-12 * cur:
            break
        h = cand[j]
        word.extend(domain.neighbors[j].word)
    if np.max(np.abs(np.abs(h) - np.eye(2))) > 1e-6:
        return None
    return invert_word(reduce_word(word))


def is_primitive(gamma: GroupElement, G: FuchsianGroup,
                 search_radius: float | None = None) -> bool:
    """Whether ``gamma`` is not a proper power of another element of ``G``.

    Candidate roots of order ``n`` (with ``n * systole <= length``) are
    computed in closed form and tested for membership in ``G``.

    Parameters
    ----------
    search_radius
        Optional cap on the displacement ``d(i, delta i)`` of the candidate
        roots that may be searched; exceeding it raises
        :class:`InconclusivePrimitivity`.
    """
    ell = float(translation_length(gamma))
    sys = float(G.systole())
    m = gamma.to_numpy()
    for n in range(2, int(ell / sys + 1e-9) + 1):
        for root in _roots(m, n):
            disp = math.acosh(max(1.0, (root ** 2).sum() / 2))
            if search_radius is not None and disp > search_radius:
                raise InconclusivePrimitivity(
                    f"root of order {n} needs search radius {disp:.6f}")
            word = reduce_to_identity(G, root)
            if word is None:
                continue
            delta = G.element(word)
            if (delta ** n).close_to(gamma, tol=mpmath.mpf(10) ** -8 * max(1, gamma.norm())):
                return False
    return True


# ---------------------------------------------------------------------------
# length spectrum


@dataclass(frozen=True)
class PrimeGeodesic:
    length: mpmath.mpf
    m_sign: int
    multiplicity: int
    representative_word: Word = ()


@dataclass(frozen=True)
class LengthSpectrum:
    """Primitive classes with length ``<= cutoff``, merged by ``(length, m_sign)``."""

    geodesics: tuple[PrimeGeodesic, ...]
    cutoff: mpmath.mpf
    group_label: str
    precision: Precision = field(default_factory=resolve)
    warnings: tuple[str, ...] = ()

    def __len__(self) -> int:
        return len(self.geodesics)

    def __iter__(self):
        return iter(self.geodesics)

    def class_count(self) -> int:
        return sum(g.multiplicity for g in self.geodesics)

    def truncated(self, cutoff) -> "LengthSpectrum":
        cutoff = mpmath.mpf(cutoff)
        if cutoff > self.cutoff:
            raise PreconditionError("cannot extend a spectrum beyond its cutoff")
        kept = tuple(g for g in self.geodesics if g.length <= cutoff)
        return LengthSpectrum(kept, cutoff, self.group_label, self.precision, self.warnings)

    def same_multiset(self, other: "LengthSpectrum", tol=None) -> bool:
        tol = self.precision.merge_tol if tol is None else tol
        if len(self) != len(other):
            return False
        return all(a.m_sign == b.m_sign and a.multiplicity == b.multiplicity
                   and abs(a.length - b.length) < tol
                   for a, b in zip(self, other))


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, i: int) -> int:
        while self.parent[i] != i:
            self.parent[i] = self.parent[self.parent[i]]
            i = self.parent[i]
        return i

    def union(self, i: int, j: int) -> None:
        ri, rj = self.find(i), self.find(j)
        if ri != rj:
            self.parent[max(ri, rj)] = min(ri, rj)


@dataclass
class ClassRecord:
    """One conjugacy class found in an orbit ball (internal bookkeeping)."""

    members: list[int]
    representative: int
    word: Word
    length: float
    m_sign: int
    primitive: bool


def conjugacy_classes(G: FuchsianGroup, ball: OrbitBall, L_max: float) -> list[ClassRecord]:
    """Partition the representatives with axis meeting the domain into classes.

    Representatives of one class are the elements ``h^-1 gamma h`` for the
    translates ``h D`` crossed by the axis of ``gamma``; consecutive
    translates are edge-adjacent, so conjugation by side pairings links
    every representative of a class.
    """
    domain = G.geometry
    mats = ball.mats
    tr = mats[:, 0, 0] + mats[:, 1, 1]
    hyper = np.abs(tr) > 2 + 1e-9
    hyper[0] = False
    ell = np.zeros(len(mats))
    ell[hyper] = 2 * np.arccosh(np.abs(tr[hyper]) / 2)
    cand = np.where(hyper & (ell <= L_max + 1e-7))[0]
    cand = cand[axis_meets_domain(mats[cand], domain)]
    if len(cand) == 0:
        return []
    rep_tree = cKDTree(mats[cand].reshape(-1, 4))
    uf = _UnionFind(len(cand))
    for s in domain.side_array:
        s_inv = np.array([[s[1, 1], -s[0, 1]], [-s[1, 0], s[0, 0]]])
        conj = np.einsum("ij,njk,kl->nil", s_inv, mats[cand], s)
        dist, idx = rep_tree.query(conj.reshape(-1, 4), p=np.inf,
                                   distance_upper_bound=_MATRIX_TOL)
        for i in np.where(np.isfinite(dist))[0]:
            uf.union(int(i), int(idx[i]))
    groups: dict[int, list[int]] = {}
    for i in range(len(cand)):
        groups.setdefault(uf.find(i), []).append(int(cand[i]))

    sys = float(G.systole())
    records = []
    for members in groups.values():
        lengths = ell[members]
        signs = np.sign(tr[members])
        if np.ptp(lengths) > 1e-6 or np.ptp(signs) != 0:
            raise VerificationError("conjugacy class with inconsistent length or sign")
        words = sorted((ball.word(i), i) for i in members)
        words.sort(key=lambda wi: _word_key(wi[0]))
        word, rep = words[0]
        length = float(lengths[0])
        primitive = True
        for n in range(2, int(length / sys + 1e-6) + 1):
            roots = _roots(mats[rep], n)
            if len(roots) and (ball.lookup(np.array(roots)) >= 0).any():
                primitive = False
                break
        records.append(ClassRecord(members=sorted(members), representative=rep, word=word,
                                   length=length, m_sign=int(signs[0]), primitive=primitive))
    records.sort(key=lambda r: (r.length, r.m_sign, _word_key(r.word)))
    return records


def length_spectrum(G: FuchsianGroup, L_max, radius: float | None = None) -> LengthSpectrum:
    """Primitive length spectrum of ``G`` up to ``L_max``.

    Parameters
    ----------
    radius
        Displacement radius of the orbit ball to search.  Defaults to the
        smallest radius that certifies completeness; a smaller value raises
        :class:`IncompleteBall`.
    """
    prec = G.precision
    L = mpmath.mpf(L_max)
    if L <= 0:
        raise PreconditionError("L_max must be positive")
    domain = G.geometry
    required = domain.ball_radius(float(L) + 1e-7)
    if radius is None:
        radius = required + 1e-6
    elif radius < required:
        raise IncompleteBall(
            f"radius {radius:.6f} < certified bound {required:.6f} "
            f"(covering radius {domain.covering_radius:.6f}, L_max {float(L)})")
    ball = orbit_ball(G, domain, radius)
    log.info("orbit ball of radius %.4f: %d elements", radius, len(ball))
    records = [r for r in conjugacy_classes(G, ball, float(L)) if r.primitive]

    entries: list[tuple[mpmath.mpf, int, Word]] = []
    for r in records:
        cls = classify(G.element(r.word))
        if cls.kind is not Kind.HYPERBOLIC:
            raise NotHyperbolic(f"class {r.word} is {cls.kind.value}")
        if abs(float(cls.data.length) - r.length) > 1e-6 or cls.data.m_sign != r.m_sign:
            raise VerificationError(f"float and mp evaluation disagree for {r.word}")
        if cls.data.length <= L:
            entries.append((cls.data.length, cls.data.m_sign, r.word))

    entries.sort(key=lambda e: (e[0], _word_key(e[2])))
    merged: list[PrimeGeodesic] = []
    for sign in (-1, 1):
        run: list[PrimeGeodesic] = []
        for length, s, word in entries:
            if s != sign:
                continue
            if run and length - run[-1].length < prec.merge_tol:
                prev = run[-1]
                run[-1] = PrimeGeodesic(prev.length, sign, prev.multiplicity + 1,
                                        prev.representative_word)
            else:
                run.append(PrimeGeodesic(length, sign, 1, word))
        merged.extend(run)
    merged.sort(key=lambda g: (g.length, g.m_sign))
    return LengthSpectrum(tuple(merged), L, G.label, prec)


# ---------------------------------------------------------------------------
# cache file


def format_spectrum(spec: LengthSpectrum) -> str:
    digits = spec.precision.digits
    lines = [f"# group {spec.group_label}",
             f"# Lmax {mpmath.nstr(spec.cutoff, 17)}",
             f"# precision {digits}"]
    for g in spec.geodesics:
        lines.append(f"ell {mpmath.nstr(g.length, digits, min_fixed=-1, max_fixed=10**6)} "
                     f"m {'+1' if g.m_sign > 0 else '-1'} mult {g.multiplicity}")
    return "\n".join(lines) + "\n"


def write_spectrum(spec: LengthSpectrum, path) -> Path:
    path = Path(path)
    path.write_text(format_spectrum(spec))
    return path


def read_spectrum(path) -> LengthSpectrum:
    header: dict[str, str] = {}
    rows = []
    for raw in Path(path).read_text().splitlines():
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            parts = line[1:].split(None, 1)
            if len(parts) == 2:
                header[parts[0]] = parts[1].strip()
            continue
        rows.append(line.split())
    prec = resolve(int(header.get("precision", 40)))
    geodesics = []
    with prec.context():
        for row in rows:
            if len(row) != 6 or row[0] != "ell" or row[2] != "m" or row[4] != "mult":
                raise PreconditionError(f"malformed spectrum line: {' '.join(row)}")
            geodesics.append(PrimeGeodesic(mpmath.mpf(row[1]), int(row[3]), int(row[5])))
        cutoff = mpmath.mpf(header["Lmax"]) if "Lmax" in header else max(
            (g.length for g in geodesics), default=mpmath.mpf(0))
    return LengthSpectrum(tuple(geodesics), cutoff, header.get("group", "unknown"), prec)


# ---------------------------------------------------------------------------
# generator file


def read_group(path, precision: Precision | int | None = None) -> FuchsianGroup:
    """Load generators from lines ``gen <a> <b> <c> <d>`` with ``# genus <int>``.

    Entries are parsed by mpmath, so expressions are not allowed but long
    decimals keep their precision.  The label carries a hash of the file.
    """
    prec = resolve(precision)
    raw = Path(path).read_bytes()
    genus, gens = None, []
    with prec.context():
        for line in raw.decode().splitlines():
            parts = line.split()
            if not parts:
                continue
            if parts[0] == "#":
                if len(parts) == 3 and parts[1] == "genus":
                    genus = int(parts[2])
                continue
            if parts[0].startswith("#"):
                continue
            if len(parts) != 5 or parts[0] != "gen":
                raise PreconditionError(f"malformed generator line: {line}")
            g = GroupElement.from_entries(*parts[1:], precision=prec)
            _check_generator(g)
            gens.append(g)
    if genus is None:
        genus = len(gens) // 2
    if len(gens) != 2 * genus:
        raise PreconditionError(f"expected {2 * genus} generators, got {len(gens)}")
    digest = hashlib.sha256(raw).hexdigest()[:12]
    return FuchsianGroup(tuple(gens), genus=genus, label=f"file-{digest}", precision=prec)


def _check_generator(g: GroupElement) -> None:
    cls = classify(g)
    if cls.kind is not Kind.HYPERBOLIC:
        raise PreconditionError(f"generator is {cls.kind.value}, expected hyperbolic")
