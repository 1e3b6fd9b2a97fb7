"""Length coordinates on the Teichmuller space of the pants and order flips.

Four lengths determine a metric up to scale (``phi4``).  Given two metrics
whose length ratios of two curves ``g1, g2`` differ, the curves
``beta g1^j`` and ``beta g2^k`` change length order between the metrics for
suitable ``j, k``: their lengths grow like ``j l(g1)`` and ``k l(g2)``, so it
suffices that ``k/j`` lies strictly between the two ratios, with some room
``eps`` for the error in that asymptotic.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import mpmath
from scipy.optimize import bisect

from .rep import EXTENDED_BITS, PantsMetric, length_of_word, power_traces, trace_of_word
from .words import CyclicWord, FreeWord, UnorientedClass, as_word, is_peripheral, primitive_root

DEFAULT_QUADRUPLE: Tuple[str, ...] = ("ab^-1", "ab^-2", "ab^-1ab^-2", "b^-1a^-1b^-1a^-1ab^-2")
DEFAULT_BETA = "ab"
DEFAULT_JMAX = 500
PROJ_TOL = 1e-9
RATIO_TOL = 1e-12


class PreconditionError(ValueError):
    pass


class SearchExhausted(RuntimeError):
    pass


@dataclass(frozen=True)
class Phi4Vector:
    lengths: Tuple[float, float, float, float]
    metric: PantsMetric
    words: Tuple[str, ...] = DEFAULT_QUADRUPLE


def _quadruple(quadruple: Optional[Sequence]) -> Tuple[FreeWord, ...]:
    words = tuple(as_word(w) for w in (quadruple or DEFAULT_QUADRUPLE))
    if len(words) != 4:
        raise ValueError("need exactly four words")
    for w in words:
        if not w or is_peripheral(CyclicWord.of(w)) is not None:
            raise PreconditionError(f"{w} is peripheral")
    return words


def phi4(m: PantsMetric, quadruple: Optional[Sequence] = None) -> Phi4Vector:
    words = _quadruple(quadruple)
    return Phi4Vector(
        tuple(float(length_of_word(m, w)) for w in words), m, tuple(str(w) for w in words)
    )


def proportionality_defect(v: Sequence[float], w: Sequence[float]) -> float:
    """``max |v_i w_j - v_j w_i| / (|v| |w|)``; zero iff ``v`` and ``w`` are parallel."""
    nv, nw = math.hypot(*v), math.hypot(*w)
    return max(
        abs(v[i] * w[j] - v[j] * w[i]) for i, j in itertools.combinations(range(len(v)), 2)
    ) / (nv * nw)


def projectively_distinct(mA: PantsMetric, mB: PantsMetric, quadruple=None, tol: float = PROJ_TOL) -> bool:
    return proportionality_defect(phi4(mA, quadruple).lengths, phi4(mB, quadruple).lengths) > tol


# Flip pairs -----------------------------------------------------------------

@dataclass(frozen=True)
class FlipWitness:
    gamma1: CyclicWord
    gamma2: CyclicWord
    beta: FreeWord
    j: int
    k: int
    # l_X(beta g1^j), l_X(beta g2^k), l_X'(beta g1^j), l_X'(beta g2^k)
    lengths: Tuple[float, float, float, float]
    epsilon: float
    swapped: bool = False
    in_window: bool = True

    def holds(self) -> bool:
        lx1, lx2, lp1, lp2 = self.lengths
        return lx1 > lx2 and lp1 < lp2

    def words(self) -> Tuple[FreeWord, FreeWord]:
        return (self.beta * self.gamma1.word() ** self.j, self.beta * self.gamma2.word() ** self.k)

    def to_dict(self) -> dict:
        return {
            "gamma1": str(self.gamma1),
            "gamma2": str(self.gamma2),
            "beta": str(self.beta),
            "j": self.j,
            "k": self.k,
            "lengths": list(self.lengths),
            "epsilon": self.epsilon,
            "swapped": self.swapped,
            "in_window": self.in_window,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def _ratio(m: PantsMetric, g1, g2) -> Tuple[float, float]:
    return float(length_of_word(m, g1.word())), float(length_of_word(m, g2.word()))


def choose_epsilon(l1: float, l2: float, p1: float, p2: float) -> float:
    """Half the ``eps`` at which ``(l1-e)/(l2+e) = (p1+e)/(p2-e)``; requires ``l1/l2 > p1/p2``."""
    gap = lambda e: (l1 - e) / (l2 + e) - (p1 + e) / (p2 - e)
    hi = min(l1, p2)
    # gap -> -inf as e -> p2, and gap(l1) < 0; step just inside the domain
    hi = hi * (1 - 1e-12)
    return 0.5 * bisect(gap, 0.0, hi, xtol=1e-15 * hi, maxiter=200)


def _root_class(w) -> UnorientedClass:
    return UnorientedClass.of(primitive_root(CyclicWord.of(w))[0])


def _lengths(m, beta, gamma, jmax):
    with mpmath.workprec(EXTENDED_BITS):
        return [
            2 * mpmath.acosh(abs(t) / 2) if abs(t) > 2 else None
            for t in power_traces(m, beta, gamma, jmax, EXTENDED_BITS)
        ]


def _direct_length(m, w):
    with mpmath.workprec(EXTENDED_BITS):
        return 2 * mpmath.acosh(abs(trace_of_word(m, w, EXTENDED_BITS)) / 2)


def find_flip_pair(mX: PantsMetric, mXp: PantsMetric, gamma1, gamma2, beta=DEFAULT_BETA, j_max: int = DEFAULT_JMAX) -> FlipWitness:
    """First ``(j, k)`` (smallest j, then k) with the length order of
    ``beta g1^j`` and ``beta g2^k`` reversed between ``mX`` and ``mXp``."""
    g1, g2, beta = CyclicWord.of(gamma1), CyclicWord.of(gamma2), as_word(beta)
    if not beta:
        raise PreconditionError("beta must be nontrivial")
    for g in (g1, g2):
        if _root_class(beta) == _root_class(g):
            raise PreconditionError(f"beta {beta} is a power of {g}")
    l1, l2 = _ratio(mX, g1, g2)
    p1, p2 = _ratio(mXp, g1, g2)
    rX, rXp = l1 / l2, p1 / p2
    if abs(rX - rXp) <= RATIO_TOL * max(rX, rXp):
        raise PreconditionError("length ratios agree; the pair cannot distinguish the metrics")
    swapped = rX < rXp
    if swapped:
        g1, g2, l1, l2, p1, p2 = g2, g1, l2, l1, p2, p1
    eps = choose_epsilon(l1, l2, p1, p2)
    lo, hi = (p1 + eps) / (p2 - eps), (l1 - eps) / (l2 + eps)

    LX1, LX2 = _lengths(mX, beta, g1.word(), j_max), _lengths(mX, beta, g2.word(), j_max)
    LP1, LP2 = _lengths(mXp, beta, g1.word(), j_max), _lengths(mXp, beta, g2.word(), j_max)

    def window(j):
        return range(max(1, math.floor(j * lo) + 1), min(j_max, math.ceil(j * hi) - 1) + 1)

    # The window is where the asymptotics guarantee a flip for large j.  When
    # the ratios are very close that needs j far beyond j_max, while the
    # offsets coming from beta can still produce flips outside the window.
    scans = (window, lambda j: range(1, j_max + 1))
    for in_window, scan in zip((True, False), scans):
        for j in range(1, j_max + 1):
            for k in scan(j):
                vals = (LX1[j], LX2[k], LP1[j], LP2[k])
                if None in vals or not (vals[0] > vals[1] and vals[2] < vals[3]):
                    continue
                wit = _verify(mX, mXp, g1, g2, beta, j, k, eps, swapped, in_window)
                if wit is not None:
                    return wit
    raise SearchExhausted(f"no flip pair with j, k <= {j_max}; try a larger j_max")


def _verify(mX, mXp, g1, g2, beta, j, k, eps, swapped, in_window) -> Optional[FlipWitness]:
    w1 = beta * g1.word() ** j
    w2 = beta * g2.word() ** k
    direct = tuple(
        float(_direct_length(m, w)) for m in (mX, mXp) for w in (w1, w2)
    )
    wit = FlipWitness(g1, g2, beta, j, k, direct, eps, swapped, in_window)
    return wit if wit.holds() else None


def choose_flip_curves(mX: PantsMetric, mXp: PantsMetric, quadruple=None) -> Tuple[FreeWord, FreeWord]:
    """Pair from the quadruple whose length ratios differ most between the metrics."""
    words = _quadruple(quadruple)
    vX, vXp = phi4(mX, words).lengths, phi4(mXp, words).lengths
    best = max(
        itertools.combinations(range(4), 2),
        key=lambda ij: abs(math.log(vX[ij[0]] / vX[ij[1]]) - math.log(vXp[ij[0]] / vXp[ij[1]])),
    )
    return words[best[0]], words[best[1]]
