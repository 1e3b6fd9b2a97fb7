"""Seeded random metrics and words."""

from __future__ import annotations

import math
import random
from typing import Tuple

from .rep import PantsMetric, metric_from_lengths
from .words import CyclicWord, FreeWord, is_peripheral, is_primitive, order_hypothesis

LENGTH_RANGE = (0.05, 8.0)


def random_metric(rng: random.Random) -> PantsMetric:
    """Boundary lengths drawn independently, log-uniform in ``LENGTH_RANGE``."""
    lo, hi = math.log(LENGTH_RANGE[0]), math.log(LENGTH_RANGE[1])
    return metric_from_lengths(*(math.exp(rng.uniform(lo, hi)) for _ in range(3)))


def random_reduced_word(rng: random.Random, n: int) -> FreeWord:
    """Uniform reduced word of length exactly ``n``."""
    out = []
    for _ in range(n):
        x = rng.randrange(4)
        while out and x == out[-1] ^ 1:
            x = rng.randrange(4)
        out.append(x)
    return FreeWord._raw(out)


def random_cyclic_word(rng: random.Random, n: int) -> FreeWord:
    """Cyclically reduced word of length ``n`` (rejection sampling)."""
    while True:
        w = random_reduced_word(rng, n)
        if w.is_cyclically_reduced():
            return w


def random_primitive_word(rng: random.Random, max_len: int, min_len: int = 2) -> FreeWord:
    """Primitive, non-peripheral, cyclically reduced word."""
    while True:
        w = random_cyclic_word(rng, rng.randint(min_len, max_len))
        c = CyclicWord(w.letters)
        if is_primitive(c) and is_peripheral(c) is None:
            return w


def random_order_pair(rng: random.Random, max_len: int = 12) -> Tuple[FreeWord, FreeWord]:
    while True:
        u = random_cyclic_word(rng, rng.randint(2, max_len))
        v = random_cyclic_word(rng, rng.randint(1, max_len))
        if order_hypothesis(u, v):
            return u, v


def random_word_upto(rng: random.Random, max_len: int) -> FreeWord:
    return random_reduced_word(rng, rng.randint(1, max_len))
