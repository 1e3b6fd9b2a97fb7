"""Seeded property suites run by ``pantsorder verify``."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional

from .rep import length_of_word, trace_identity_residual
from .sampling import random_metric, random_order_pair, random_word_upto
from .systoles import enumerate_candidates, ksystole
from .teich import choose_flip_curves, find_flip_pair, projectively_distinct
from .theta import certify_order
from .words import FreeWord, UnorientedClass

RESIDUAL_TOL = 1e-9
MARGIN_TOL = 1e-9

# Published k-systole candidate lists, k = 1..4.
REFERENCE_LISTS: Dict[int, Dict[str, int]] = {
    1: {"ab^-1": 1},
    2: {"aab^-1": 2},
    3: {"aaab^-1": 3, "aba^-1b^-1": 3},
    4: {
        "aaaab^-1": 4,
        "aaba^-1b^-1": 4,
        "aab^-1a^-1b": 4,
        "aba^-1b^-1b^-1": 4,
        "abbab^-1": 5,
        "abba^-1b^-1": 4,
        "ababa^-1b^-1": 4,
        "abab^-1a^-1b": 4,
        "abab^-1a^-1b^-1": 5,
        "aaba^-1b": 5,
    },
}
REFERENCE_COUNTS: Dict[int, tuple] = {5: (66, 7), 6: (299, 11)}


def reference_classes(k: int) -> Dict[UnorientedClass, int]:
    return {UnorientedClass.of(w): i for w, i in REFERENCE_LISTS[k].items()}


@dataclass
class SuiteResult:
    name: str
    checks: int = 0
    failures: int = 0
    worst: Optional[float] = None
    notes: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.checks > 0 and self.failures == 0

    def to_dict(self) -> dict:
        return {
            "suite": self.name,
            "passed": self.passed,
            "checks": self.checks,
            "failures": self.failures,
            "worst": self.worst,
            "notes": self.notes,
        }


def identities(seed: int, n: int = 10_000, max_len: int = 30) -> SuiteResult:
    """``tr u tr v = tr uv + tr u^-1 v`` on random words and metrics; worst relative residual."""
    rng = random.Random(seed)
    res = SuiteResult("identities")
    worst = 0.0
    for _ in range(n):
        m = random_metric(rng)
        u, v = random_word_upto(rng, max_len), random_word_upto(rng, max_len)
        _, rel = trace_identity_residual(m, u, v)
        worst = max(worst, rel)
        res.checks += 1
        res.failures += not rel < RESIDUAL_TOL
    res.worst = worst
    return res


def length_order(seed: int, pairs: int = 1000, metrics: int = 20, max_len: int = 12) -> SuiteResult:
    """Certified pairs satisfy ``l(u) < l(uv)`` with relative margin; worst margin reported."""
    rng = random.Random(seed)
    ms = [random_metric(rng) for _ in range(metrics)]
    res = SuiteResult("length_order")
    worst = float("inf")
    uncertified = 0
    for _ in range(pairs):
        u, v = random_order_pair(rng, max_len)
        if not certify_order(u, v).certified:
            uncertified += 1
        uv = FreeWord(u.concat(v))
        for m in ms:
            lu, luv = float(length_of_word(m, u)), float(length_of_word(m, uv))
            margin = (luv - lu) / luv
            worst = min(worst, margin)
            res.checks += 1
            res.failures += not margin > MARGIN_TOL
    res.failures += uncertified
    res.worst = worst
    res.notes.append(f"uncertified pairs: {uncertified}")
    return res


def systoles(seed: int, metrics: int = 20) -> SuiteResult:
    """Candidate lists for k <= 4 and the self-intersection of the minimizer."""
    rng = random.Random(seed)
    res = SuiteResult("systoles")
    cands = {}
    for k in range(1, 5):
        cands[k] = enumerate_candidates(k)
        got = {c.word: c.selfint for c in cands[k].members}
        res.checks += 1
        if got != reference_classes(k):
            res.failures += 1
            res.notes.append(f"k={k}: list mismatch")
    for _ in range(metrics):
        m = random_metric(rng)
        for k in range(1, 5):
            r = ksystole(m, k, cands[k])
            res.checks += 1
            if r.argmin_selfint != k:
                res.failures += 1
                res.notes.append(f"k={k} at {m}: argmin {r.argmin_word} has selfint {r.argmin_selfint}")
    return res


def injectivity(seed: int, pairs: int = 1000, flips: int = 10, j_max: int = 500) -> SuiteResult:
    """Projective distinctness of random pairs, identical pairs, and flip witnesses."""
    rng = random.Random(seed)
    res = SuiteResult("injectivity")
    for _ in range(pairs):
        a, b = random_metric(rng), random_metric(rng)
        res.checks += 2
        res.failures += not projectively_distinct(a, b)
        res.failures += projectively_distinct(a, a)
    for _ in range(flips):
        a, b = random_metric(rng), random_metric(rng)
        g1, g2 = choose_flip_curves(a, b)
        res.checks += 1
        try:
            w = find_flip_pair(a, b, g1, g2, j_max=j_max)
            res.failures += not w.holds()
        except Exception as e:  # exhaustion or precondition
            res.failures += 1
            res.notes.append(f"flip search failed: {e}")
    return res


SUITES: Dict[str, Callable[..., SuiteResult]] = {
    "identities": identities,
    "length_order": length_order,
    "systoles": systoles,
    "injectivity": injectivity,
}
