"""Candidates for k-systoles and length minimization over them.

A closed geodesic with at least ``k`` self-intersections is either no
shorter than ``a^k b^-1`` or crosses the seams at most ``2k`` times.  The
candidate set for ``k`` is therefore ``a^k b^-1`` together with all primitive,
non-peripheral classes of seam-crossing length (xi-length) at most ``2k``
having at least ``k`` self-intersections.

The domination of ``a^n b^-1`` over long words holds when the first boundary
is the shortest of the two carrying ``a`` and ``b``.  Metric-dependent
operations here first relabel the boundaries so that ``L1 <= L2 <= L3`` and
report results in the caller's labels.
"""

from __future__ import annotations

import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from .rep import PantsMetric, length_of_word
from .selfint import selfint
from .theta import THETA, _cancels, xi_length
from .words import (
    CyclicWord,
    FreeWord,
    Letter,
    UnorientedClass,
    as_word,
    is_peripheral,
    is_primitive,
    relabel,
)

MAX_K = 8
TIE_TOL = 1e-12
DEDUP_CONVENTION = "cyc-inv"


class KOutOfRange(ValueError):
    pass


def champion(k: int) -> UnorientedClass:
    """The class of ``a^k b^-1``."""
    return UnorientedClass.of(FreeWord([Letter.a] * k + [Letter.B]))


@dataclass(frozen=True)
class Candidate:
    word: UnorientedClass
    selfint: int
    xi_length: int
    champion: bool = False

    def to_dict(self) -> dict:
        return {
            "word": str(self.word),
            "selfint": self.selfint,
            "xi_length": self.xi_length,
            "champion": self.champion,
        }


@dataclass(frozen=True)
class CandidateSet:
    k: int
    members: Tuple[Candidate, ...]
    dedup_convention: str = DEDUP_CONVENTION

    @property
    def champions(self) -> Tuple[Candidate, ...]:
        return tuple(c for c in self.members if c.champion)

    @property
    def others(self) -> Tuple[Candidate, ...]:
        return tuple(c for c in self.members if not c.champion)

    @property
    def classes(self) -> frozenset:
        return frozenset(c.word for c in self.members)

    @property
    def max_selfint(self) -> int:
        return max(c.selfint for c in self.members)

    def __len__(self) -> int:
        return len(self.members)

    def selfint_histogram(self) -> Dict[int, int]:
        h: Dict[int, int] = {}
        for c in self.members:
            h[c.selfint] = h.get(c.selfint, 0) + 1
        return dict(sorted(h.items()))

    def summary(self) -> dict:
        return {
            "k": self.k,
            "count": len(self),
            "max_selfint": self.max_selfint,
            "dedup": self.dedup_convention,
        }

    def to_json(self) -> str:
        return json.dumps(
            {**self.summary(), "members": [c.to_dict() for c in self.members]},
            sort_keys=True,
        )


def _sort_key(c: UnorientedClass):
    return (len(c), c.letters)


def bounded_classes(max_xi: int) -> List[UnorientedClass]:
    """All unoriented classes of cyclically reduced words with xi-length <= max_xi.

    Depth-first over reduced words.  Appending a letter never shortens the
    linear theta-word and the cyclic core is at most two letters shorter, so
    prefixes whose linear theta-word exceeds ``max_xi + 2`` are cut.
    """
    out = set()
    word: List[int] = []
    stack: List[Tuple[int, int]] = []

    def push(x: int) -> List[Tuple[int, int]]:
        popped = []
        for t in THETA[Letter(x)]:
            if stack and _cancels(stack[-1], t):
                popped.append(stack.pop())
            else:
                stack.append(t)
                popped.append(None)
        return popped

    def pop(popped) -> None:
        for p in reversed(popped):
            if p is None:
                stack.pop()
            else:
                stack.append(p)

    def visit() -> None:
        n = len(word)
        if n and word[-1] != word[0] ^ 1:
            c = UnorientedClass.of(CyclicWord(word))
            if c.letters == tuple(word) and xi_length(c.cyclic) <= max_xi:
                out.add(c)
        for x in range(4):
            if n and x == word[-1] ^ 1:
                continue
            popped = push(x)
            word.append(x)
            if len(stack) <= max_xi + 2:
                visit()
            word.pop()
            pop(popped)

    visit()
    return sorted(out, key=_sort_key)


def _check_k(k: int) -> None:
    if not (isinstance(k, int) and 1 <= k <= MAX_K):
        raise KOutOfRange(f"k must be an integer in [1, {MAX_K}], got {k!r}")


def _admissible(c: UnorientedClass) -> bool:
    return is_primitive(c.cyclic) and is_peripheral(c.cyclic) is None


def _selfint_many(classes: Sequence[UnorientedClass], workers: int) -> List[int]:
    if workers <= 1 or len(classes) < 64:
        return [selfint(c.cyclic) for c in classes]
    with ProcessPoolExecutor(max_workers=workers) as ex:
        return list(ex.map(_selfint_one, classes, chunksize=32))


def _selfint_one(c: UnorientedClass) -> int:
    return selfint(c.cyclic)


def enumerate_candidates(k: int, workers: int = 1) -> CandidateSet:
    """The candidate set for the k-systole, in (length, canonical form) order."""
    _check_k(k)
    pool = [c for c in bounded_classes(2 * k) if _admissible(c)]
    counts = _selfint_many(pool, workers)
    champ = champion(k)
    members = {
        c: Candidate(c, i, xi_length(c.cyclic), c == champ)
        for c, i in zip(pool, counts)
        if i >= k
    }
    if champ not in members:
        members[champ] = Candidate(champ, selfint(champ.cyclic), xi_length(champ.cyclic), True)
    ordered = tuple(members[c] for c in sorted(members, key=_sort_key))
    return CandidateSet(k, ordered)


# Metric-dependent parts -----------------------------------------------------

def sorting_frame(m: PantsMetric) -> Tuple[Tuple[int, int, int], PantsMetric]:
    """Relabeling ``perm`` with ``m.permuted(perm)`` having ``L1 <= L2 <= L3``.

    A class ``w`` in the sorted frame is the class ``relabel(w, perm)`` in the
    original labels.  Ties keep the original order.
    """
    t = m.traces
    perm = tuple(sorted(range(3), key=lambda i: (-t[i], i)))
    return perm, m.permuted(perm)


def baribaud_floor(m: PantsMetric, n: int) -> float:
    """Length of ``a^n b^-1`` in the sorted frame: a lower bound for long curves."""
    if n < 1:
        raise ValueError("n must be positive")
    perm, _ = sorting_frame(m)
    return float(length_of_word(m, relabel(FreeWord([Letter.a] * n + [Letter.B]), perm)))


@dataclass(frozen=True)
class SystoleRow:
    candidate: UnorientedClass
    word: UnorientedClass  # the same curve in the caller's labels
    length: float
    selfint: int


@dataclass(frozen=True)
class SystoleReport:
    metric: PantsMetric
    k: int
    argmin_word: UnorientedClass
    min_length: float
    table: Tuple[SystoleRow, ...]
    argmin_selfint: int
    frame: Tuple[int, int, int]
    ties: Tuple[UnorientedClass, ...] = ()

    @property
    def argmin_candidate(self) -> UnorientedClass:
        """The minimizer as listed in the candidate set (sorted-boundary labels)."""
        return self.table[0].candidate

    def to_dict(self) -> dict:
        return {
            "metric": list(self.metric.traces),
            "k": self.k,
            "frame": list(self.frame),
            "argmin_word": str(self.argmin_word),
            "argmin_selfint": self.argmin_selfint,
            "min_length": self.min_length,
            "ties": [str(w) for w in self.ties],
            "table": [
                {"word": str(r.word), "candidate": str(r.candidate), "length": r.length, "selfint": r.selfint}
                for r in self.table
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def ksystole(m: PantsMetric, k: int, candidates: Optional[CandidateSet] = None) -> SystoleReport:
    """Shortest candidate for the k-systole at ``m``."""
    _check_k(k)
    cands = candidates if candidates is not None else enumerate_candidates(k)
    perm, _ = sorting_frame(m)
    rows = []
    for c in cands.members:
        w = UnorientedClass.of(relabel(c.word.word(), perm))
        rows.append(SystoleRow(c.word, w, float(length_of_word(m, w.word())), c.selfint))
    rows.sort(key=lambda r: (r.length, _sort_key(r.candidate)))
    best = rows[0]
    ties = tuple(
        r.word for r in rows[1:] if r.length - best.length <= TIE_TOL * max(1.0, best.length)
    )
    return SystoleReport(m, k, best.word, best.length, tuple(rows), best.selfint, perm, ties)


SMOOTHING_PAIRS: Tuple[Tuple[str, str], ...] = (
    ("aaba^-1b", "aaba^-1b^-1"),
    ("abbab^-1", "aaba^-1b^-1"),
    ("abab^-1a^-1b^-1", "abab^-1a^-1b"),
)


@dataclass(frozen=True)
class SmoothingCheck:
    longer: str
    shorter: str
    length_longer: float
    length_shorter: float

    @property
    def satisfied(self) -> bool:
        return self.length_longer > self.length_shorter


def smoothing_regressions(m: PantsMetric) -> List[SmoothingCheck]:
    """The three strict inequalities ``l(first) > l(second)``, checked in the sorted frame."""
    perm, _ = sorting_frame(m)
    out = []
    for u, v in SMOOTHING_PAIRS:
        lu = float(length_of_word(m, relabel(as_word(u), perm)))
        lv = float(length_of_word(m, relabel(as_word(v), perm)))
        out.append(SmoothingCheck(u, v, lu, lv))
    return out
