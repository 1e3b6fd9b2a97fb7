"""Coding of curves by their crossings with the three seams of the pants.

Cutting the pants along the seams ``x1`` (joining boundaries 1 and 3),
``x2`` (1 and 2) and ``x3`` (2 and 3) leaves two hexagons H+ and H-.  A curve
is recorded as the cyclic sequence of seams it crosses together with the
hexagon it enters.  A letter is a pair ``(arc, side)`` with ``side = +1`` for
H+ and ``-1`` for H-, written ``x1+``, ``x2-``, ...

The translation ``theta`` sends a word in ``a, b`` to such a sequence:

    a -> x1+ x2-      a^-1 -> x2+ x1-
    b -> x2+ x3-      b^-1 -> x3+ x2-

followed by cancelling adjacent pairs ``xi+ xi-`` / ``xi- xi+``.
"""

from __future__ import annotations

import enum
import json
import re
from dataclasses import dataclass, field
from typing import Iterable, List, Optional, Sequence, Tuple

from .words import CyclicWord, FreeWord, Letter, as_word, format_letters, order_hypothesis

XiLetter = Tuple[int, int]  # (arc index 1..3, side +1/-1)

THETA = {
    Letter.a: ((1, 1), (2, -1)),
    Letter.A: ((2, 1), (1, -1)),
    Letter.b: ((2, 1), (3, -1)),
    Letter.B: ((3, 1), (2, -1)),
}


def xi_str(t: XiLetter) -> str:
    return f"x{t[0]}{'+' if t[1] > 0 else '-'}"


def _cancels(s: XiLetter, t: XiLetter) -> bool:
    return s[0] == t[0] and s[1] == -t[1]


_XI_TOKEN = re.compile(r"\s*x([123])([+-])")


@dataclass(frozen=True)
class XiWord:
    letters: Tuple[XiLetter, ...]

    @classmethod
    def parse(cls, text: str) -> "XiWord":
        out = []
        pos = 0
        text = text.strip()
        while pos < len(text):
            m = _XI_TOKEN.match(text, pos)
            if m is None:
                raise ValueError(f"bad xi-word token at offset {pos}: {text[pos:]!r}")
            out.append((int(m.group(1)), 1 if m.group(2) == "+" else -1))
            pos = m.end()
        return cls(tuple(out))

    @property
    def admissible(self) -> bool:
        return is_admissible(self.letters)

    @property
    def cyclically_reduced(self) -> bool:
        w = self.letters
        return self.admissible and not _cancels(w[-1], w[0])

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        return " ".join(xi_str(t) for t in self.letters)


def is_admissible(w: Sequence[XiLetter]) -> bool:
    """Even length, alternating sides, no adjacent cancelling pair."""
    if len(w) % 2:
        return False
    for s, t in zip(w, w[1:]):
        if s[1] == t[1] or _cancels(s, t):
            return False
    return True


def _theta_tagged(word: Sequence[int]) -> List[Tuple[XiLetter, int]]:
    """Linear theta output, each surviving letter tagged by its source position."""
    stack: List[Tuple[XiLetter, int]] = []
    for pos, x in enumerate(word):
        for t in THETA[Letter(x)]:
            if stack and _cancels(stack[-1][0], t):
                stack.pop()
            else:
                stack.append((t, pos))
    return stack


def theta(w) -> XiWord:
    """Linear theta-translation of a cyclically reduced word (no wrap-around cancellation)."""
    if isinstance(w, CyclicWord):
        letters = w.letters
    else:
        letters = as_word(w).letters
    return XiWord(tuple(t for t, _ in _theta_tagged(letters)))


def cyclic_core(w: Sequence[XiLetter]) -> Tuple[XiLetter, ...]:
    """Strip cancelling first/last pairs."""
    w = tuple(w)
    i, j = 0, len(w)
    while j - i >= 2 and _cancels(w[i], w[j - 1]):
        i += 1
        j -= 1
    return w[i:j]


class Shape(enum.Enum):
    CYCLICALLY_REDUCED = "CyclicallyReduced"
    SANDWICH = "Sandwich"


@dataclass(frozen=True)
class CoreShape:
    tag: Shape
    sandwich_arc: Optional[int] = None


def core_shape(w) -> CoreShape:
    """Either theta(w) is cyclically reduced, or it is ``t core t'`` with ``{t, t'} = {xi+, xi-}``."""
    xi = theta(CyclicWord.of(w)).letters
    if _cancels(xi[-1], xi[0]):
        return CoreShape(Shape.SANDWICH, xi[0][0])
    return CoreShape(Shape.CYCLICALLY_REDUCED)


def xi_length(w) -> int:
    """Length of the cyclically reduced theta-word, i.e. the number of seam crossings."""
    return len(cyclic_core(theta(CyclicWord.of(w)).letters))


def xi_cyclic(w) -> Tuple[XiLetter, ...]:
    return cyclic_core(theta(CyclicWord.of(w)).letters)


# Order certificates --------------------------------------------------------

class Case(enum.Enum):
    NO_CANCELLATION = "NoCancellation"
    ONE_CANCELLATION = "OneCancellation"
    NOT_CERTIFIED = "NotCertified"


@dataclass(frozen=True)
class OrderCertificate:
    u: FreeWord
    v: FreeWord
    case: Case
    xi_u: Tuple[XiLetter, ...] = ()
    xi_uv: Tuple[XiLetter, ...] = ()
    # rotation of xi(u) and the complementary word used in the matching proposition
    w: Tuple[XiLetter, ...] = ()
    w_prime: Tuple[XiLetter, ...] = ()

    @property
    def certified(self) -> bool:
        return self.case is not Case.NOT_CERTIFIED

    def to_dict(self) -> dict:
        return {
            "u": str(self.u),
            "v": str(self.v),
            "case": self.case.value,
            "xi_u": " ".join(map(xi_str, self.xi_u)),
            "xi_uv": " ".join(map(xi_str, self.xi_uv)),
            "w": " ".join(map(xi_str, self.w)),
            "w_prime": " ".join(map(xi_str, self.w_prime)),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def _rotations(w: Tuple[XiLetter, ...]):
    for k in range(len(w)):
        yield w[k:] + w[:k]


def _no_cancellation_witness(W, V):
    """A rotation ``w`` of W with ``w w'`` a rotation of V (w' nonempty)."""
    if len(V) <= len(W):
        return None
    for w in _rotations(W):
        for r in _rotations(V):
            if r[: len(w)] == w:
                return w, r[len(w):]
    return None


def _one_cancellation_witness(W, V):
    """A rotation ``w = t1..tm`` of W and admissible ``w' = t1'..tn'`` with
    ``{tm, t1'}`` cancelling, ``t1 != t(m-1)`` and ``t1..t(m-1) t2'..tn'`` a
    cyclically reduced rotation of V."""
    m = len(W)
    if m < 2:
        return None
    for w in _rotations(W):
        if w[0] == w[m - 2]:
            continue
        head = w[: m - 1]
        tm = w[-1]
        partner = (tm[0], -tm[1])
        for r in _rotations(V):
            if r[: m - 1] != head:
                continue
            rest = r[m - 1:]
            wp = (partner,) + rest
            if is_admissible(wp):
                return w, wp
    return None


def certify_order(u, v) -> OrderCertificate:
    """Certificate that l(u) < l(uv) for every hyperbolic metric.

    Only pairs satisfying :func:`order_hypothesis` are certified.  The
    certificate exhibits the seam words realizing either the no-cancellation
    or the one-cancellation comparison.
    """
    u, v = as_word(u), as_word(v)
    if not order_hypothesis(u, v):
        return OrderCertificate(u, v, Case.NOT_CERTIFIED)
    uv = FreeWord(u.concat(v))
    W = xi_cyclic(u)
    V = xi_cyclic(uv)
    wit = _no_cancellation_witness(W, V)
    if wit is not None:
        return OrderCertificate(u, v, Case.NO_CANCELLATION, W, V, *wit)
    wit = _one_cancellation_witness(W, V)
    if wit is not None:
        return OrderCertificate(u, v, Case.ONE_CANCELLATION, W, V, *wit)
    return OrderCertificate(u, v, Case.NOT_CERTIFIED, W, V)
