"""Self-intersection numbers of closed geodesics on the pair of pants.

Let ``w`` be primitive and cyclically reduced of length ``n``.  The lifts of
the closed geodesic that pass through the base tile of the Cayley-tree
tiling are exactly the axes of the ``n`` cyclic shifts of ``w``.  A
self-intersection point corresponds to a pair of crossing lifts up to the
group action, and such a pair shows up among the shift axes once for every
vertex of the tree segment the two axes share.  We keep one of those
occurrences: the one where the base vertex is the end of the common segment
from which the segment reads lexicographically smaller (or the only vertex,
when the axes meet in a single vertex).  The number of anchored, linked shift
pairs is then ``i(w)``.

Whether two axes are linked is decided either numerically, from fixed points
of the shift matrices at a reference metric, or combinatorially, from the
cyclic order of the four edge directions at a vertex of the planar tree.
"""

from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import List, Optional, Sequence, Tuple

import mpmath

from .rep import (
    DOUBLE_BITS,
    AxisEndpoints,
    PantsMetric,
    build_representation,
    fixed_points,
    word_matrix,
)
from .words import (
    CyclicWord,
    FreeWord,
    Letter,
    UnorientedClass,
    is_peripheral,
    primitive_root,
)

DEFAULT_REF = PantsMetric(-3.0, -3.0, -3.0)
SEPARATION_TOL = 1e-6
MAX_BITS = 2048


class NonPrimitiveError(ValueError):
    pass


class EndpointCollisionError(ArithmeticError):
    pass


class Method(enum.Enum):
    AXIS_LINKING = "AxisLinking"
    BOUNDARY_ORDER = "BoundaryOrder"


# Counterclockwise order of the edge directions at every vertex of the tree,
# as positions of the attracting points of a, a^-1, b, b^-1 on the real line
# at the reference metric (see calibrate_direction_order).
DIRECTION_ORDER: Tuple[Letter, ...] = (Letter.a, Letter.A, Letter.b, Letter.B)
_DIR_INDEX = {x: i for i, x in enumerate(DIRECTION_ORDER)}


def calibrate_direction_order(ref: PantsMetric = DEFAULT_REF) -> Tuple[Letter, ...]:
    """Order the four letters by the position of the attracting point of ``x^inf``."""
    rep = build_representation(ref)
    pts = []
    for x in Letter:
        e = fixed_points(rep.images[x]).attracting
        pts.append((math.inf if e == math.inf else e, x))
    return tuple(x for _, x in sorted(pts))


@dataclass(frozen=True)
class ShiftAxis:
    shift_index: int
    endpoints: AxisEndpoints


@dataclass(frozen=True)
class SelfIntReport:
    word: CyclicWord
    count: int
    linked_pairs: Tuple[Tuple[int, int], ...]
    method: Method
    raw_linked: int = 0
    direction_order: Tuple[str, ...] = tuple(x.name for x in DIRECTION_ORDER)

    def to_dict(self) -> dict:
        return {
            "word": str(self.word),
            "count": self.count,
            "method": self.method.value,
            "pairs": [list(p) for p in self.linked_pairs],
            "raw_linked": self.raw_linked,
            "direction_order": list(self.direction_order),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


# Rays --------------------------------------------------------------------

@dataclass(frozen=True)
class Ray:
    """Eventually periodic ray ``prefix period period ...`` in the Cayley tree."""

    prefix: Tuple[int, ...]
    period: Tuple[int, ...]

    def __post_init__(self):
        if not self.period:
            raise ValueError("ray needs a nonempty period")

    def letter(self, i: int) -> int:
        p = len(self.prefix)
        if i < p:
            return self.prefix[i]
        return self.period[(i - p) % len(self.period)]

    @classmethod
    def forward(cls, letters: Sequence[int]) -> "Ray":
        return cls((), tuple(int(x) for x in letters))

    @classmethod
    def backward(cls, letters: Sequence[int]) -> "Ray":
        return cls((), tuple(int(x) ^ 1 for x in reversed(letters)))


def _ray_bound(p: Ray, q: Ray) -> int:
    return len(p.prefix) + len(q.prefix) + 2 * (len(p.period) + len(q.period))


def common_prefix(p: Ray, q: Ray) -> int:
    """Length of the common prefix; raises if the rays coincide."""
    bound = _ray_bound(p, q)
    i = 0
    while p.letter(i) == q.letter(i):
        i += 1
        if i > bound:
            raise ValueError("rays are equal")
    return i


def boundary_compare(p: Ray, q: Ray) -> int:
    """-1 if the end of ``p`` precedes the end of ``q`` in the linear order of ends.

    Ends are ordered by the first letter (in :data:`DIRECTION_ORDER`) and below
    the first common vertex by counterclockwise position relative to the
    incoming edge.  This is the circular order at infinity cut at one point.
    """
    i = common_prefix(p, q)
    x, y = p.letter(i), q.letter(i)
    if i == 0:
        return -1 if _DIR_INDEX[x] < _DIR_INDEX[y] else 1
    back = _DIR_INDEX[p.letter(i - 1) ^ 1]
    dx = (_DIR_INDEX[x] - back) % 4
    dy = (_DIR_INDEX[y] - back) % 4
    return -1 if dx < dy else 1


# Linking -----------------------------------------------------------------

def _inside(t, lo, hi) -> bool:
    return lo < t < hi


def linked_on_line(p: Tuple, q: Tuple) -> bool:
    """Do the pairs ``p`` and ``q`` of points of R u {inf} separate each other?"""
    lo, hi = sorted(p)
    return _inside(q[0], lo, hi) != _inside(q[1], lo, hi)


def _linked_by_order(p: Tuple[Ray, Ray], q: Tuple[Ray, Ray]) -> bool:
    import functools

    ends = [(p[0], 0), (p[1], 0), (q[0], 1), (q[1], 1)]
    ends.sort(key=functools.cmp_to_key(lambda s, t: boundary_compare(s[0], t[0])))
    tags = [t for _, t in ends]
    return tags in ([0, 1, 0, 1], [1, 0, 1, 0])


# Anchoring ---------------------------------------------------------------

def _shifts(letters: Tuple[int, ...]) -> List[Tuple[int, ...]]:
    return [letters[k:] + letters[:k] for k in range(len(letters))]


def common_segment(sj: Tuple[int, ...], sk: Tuple[int, ...]) -> Tuple[int, int, Tuple[int, ...]]:
    """Shared tree segment of the axes of two shifts, both passing through 1.

    Returns ``(forward_extent, backward_extent, word)`` where the extents are
    measured along the forward and backward rays of ``sj`` and ``word`` is
    the segment read from 1 (only meaningful when one extent is zero).
    """
    fj, bj = Ray.forward(sj), Ray.backward(sj)
    fk, bk = Ray.forward(sk), Ray.backward(sk)
    ef = max(common_prefix(fj, fk), common_prefix(fj, bk))
    eb = max(common_prefix(bj, fk), common_prefix(bj, bk))
    if ef:
        word = tuple(fj.letter(i) for i in range(ef))
    else:
        word = tuple(bj.letter(i) for i in range(eb))
    return ef, eb, word


def is_anchor(sj, sk) -> bool:
    """Whether the base vertex is the chosen representative of this crossing orbit."""
    ef, eb, word = common_segment(sj, sk)
    if ef and eb:
        return False
    if not word:
        return True
    inv = tuple(x ^ 1 for x in reversed(word))
    return word < inv


# Numeric endpoints -------------------------------------------------------

def _chordal(s, t) -> float:
    inf = (math.inf, mpmath.inf)
    if s in inf and t in inf:
        return 0.0
    if s in inf:
        return float(1 / mpmath.sqrt(1 + mpmath.mpf(t) ** 2))
    if t in inf:
        return float(1 / mpmath.sqrt(1 + mpmath.mpf(s) ** 2))
    s, t = mpmath.mpf(s), mpmath.mpf(t)
    return float(abs(s - t) / mpmath.sqrt((1 + s * s) * (1 + t * t)))


def _separation_tol(bits: int) -> float:
    return SEPARATION_TOL if bits <= DOUBLE_BITS else 2.0 ** (-bits / 2)


def shift_axes(w: CyclicWord, ref: PantsMetric = DEFAULT_REF, bits: int = DOUBLE_BITS) -> List[ShiftAxis]:
    """Endpoints of the axes of all cyclic shifts, escalating precision on near-collisions."""
    letters = w.letters
    shifts = _shifts(letters)
    while True:
        rep = build_representation(ref, bits)
        axes = []
        ok = True
        ctx = mpmath.workprec(bits) if bits > DOUBLE_BITS else None
        if ctx:
            ctx.__enter__()
        try:
            for k, s in enumerate(shifts):
                M = word_matrix(rep, FreeWord._raw(s))
                if bits <= DOUBLE_BITS and not all(math.isfinite(v) for v in M):
                    ok = False
                    break
                axes.append(ShiftAxis(k, fixed_points(M)))
            if ok:
                # inside workprec: converting to mpf at 53 bits would merge close endpoints
                pts = [p for a in axes for p in (a.endpoints.attracting, a.endpoints.repelling)]
                tol = _separation_tol(bits)
                ok = all(_chordal(pts[i], pts[j]) > tol for i in range(len(pts)) for j in range(i))
        finally:
            if ctx:
                ctx.__exit__(None, None, None)
        if ok:
            return axes
        if bits >= MAX_BITS:
            raise EndpointCollisionError(f"endpoints of {w!r} not separated at {bits} bits")
        bits = max(2 * bits, 128)


def _prepare(w) -> Optional[CyclicWord]:
    c = CyclicWord.of(w)
    root, m = primitive_root(c)
    if m > 1:
        if is_peripheral(c) is not None:
            return None
        raise NonPrimitiveError(f"{c} is a proper power")
    return c


def selfint_axis(w, ref: PantsMetric = DEFAULT_REF) -> SelfIntReport:
    """Self-intersection number from linking of numerically computed axis endpoints."""
    c = _prepare(w)
    if c is None:
        return SelfIntReport(CyclicWord.of(w), 0, (), Method.AXIS_LINKING)
    if not ref.is_interior():
        raise ValueError("reference metric must be strictly inside the domain")
    shifts = _shifts(c.letters)
    axes = shift_axes(c, ref)
    pairs = []
    raw = 0
    n = len(shifts)
    for j in range(n):
        ej = (axes[j].endpoints.attracting, axes[j].endpoints.repelling)
        for k in range(j + 1, n):
            ek = (axes[k].endpoints.attracting, axes[k].endpoints.repelling)
            if linked_on_line(ej, ek):
                raw += 1
                if is_anchor(shifts[j], shifts[k]):
                    pairs.append((j, k))
    return SelfIntReport(c, len(pairs), tuple(pairs), Method.AXIS_LINKING, raw)


def selfint_boundary(w) -> SelfIntReport:
    """Self-intersection number from the combinatorial order of ends."""
    c = _prepare(w)
    if c is None:
        return SelfIntReport(CyclicWord.of(w), 0, (), Method.BOUNDARY_ORDER)
    shifts = _shifts(c.letters)
    ends = [(Ray.forward(s), Ray.backward(s)) for s in shifts]
    pairs = []
    raw = 0
    n = len(shifts)
    for j in range(n):
        for k in range(j + 1, n):
            if _linked_by_order(ends[j], ends[k]):
                raw += 1
                if is_anchor(shifts[j], shifts[k]):
                    pairs.append((j, k))
    return SelfIntReport(c, len(pairs), tuple(pairs), Method.BOUNDARY_ORDER, raw)


@lru_cache(maxsize=65536)
def _selfint_cached(cls: UnorientedClass) -> int:
    rep = selfint_axis(cls.cyclic)
    if len(cls) <= 8:
        assert rep.count == selfint_boundary(cls.cyclic).count, f"method disagreement on {cls}"
    return rep.count


def selfint(w) -> int:
    """Self-intersection number of a primitive (or peripheral) class."""
    c = CyclicWord.of(w)
    if primitive_root(c)[1] > 1 and is_peripheral(c) is None:
        raise NonPrimitiveError(f"{c} is a proper power")
    return _selfint_cached(UnorientedClass.of(c))
