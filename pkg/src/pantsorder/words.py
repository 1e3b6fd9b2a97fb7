"""Reduced words in the free group on ``a`` and ``b``.

Letters are encoded as small integers so that inversion is ``x ^ 1`` and the
fixed total order ``a < a^-1 < b < b^-1`` is the integer order.  That order is
used for canonical rotations of cyclic words.

Curves on the pair of pants correspond to conjugacy classes; since geodesic
length and self-intersection ignore orientation, most of the search code works
with :class:`UnorientedClass`.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Optional, Sequence, Tuple


class Letter(enum.IntEnum):
    a = 0
    A = 1  # a^-1
    b = 2
    B = 3  # b^-1

    @property
    def generator(self) -> str:
        return "ab"[self >> 1]

    @property
    def sign(self) -> int:
        return -1 if self & 1 else 1

    def inverse(self) -> "Letter":
        return Letter(self ^ 1)

    def __str__(self) -> str:
        return self.generator if self.sign > 0 else self.generator + "^-1"


class WordSyntaxError(ValueError):
    """Raised on malformed word input; ``offset`` is the byte offset of the problem."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at offset {offset})")
        self.offset = offset


class EmptyWordError(ValueError):
    pass


def reduce(letters: Iterable[int]) -> "FreeWord":
    """Freely reduce a letter sequence (stack based, so the result is unique)."""
    stack = []
    for x in letters:
        x = int(x)
        if stack and stack[-1] == x ^ 1:
            stack.pop()
        else:
            stack.append(x)
    return FreeWord._raw(stack)


class FreeWord:
    """A freely reduced word.  Immutable; the identity is the empty word."""

    __slots__ = ("_letters",)

    def __init__(self, letters: Iterable[int] = ()):
        self._letters = reduce(letters)._letters

    @classmethod
    def _raw(cls, letters) -> "FreeWord":
        w = object.__new__(cls)
        w._letters = tuple(Letter(x) for x in letters)
        return w

    @classmethod
    def parse(cls, text: str) -> "FreeWord":
        return parse_word(text)

    @property
    def letters(self) -> Tuple[Letter, ...]:
        return self._letters

    def __len__(self) -> int:
        return len(self._letters)

    def __iter__(self) -> Iterator[Letter]:
        return iter(self._letters)

    def __getitem__(self, i):
        return self._letters[i]

    def __bool__(self) -> bool:
        return bool(self._letters)

    def __eq__(self, other) -> bool:
        return isinstance(other, FreeWord) and self._letters == other._letters

    def __hash__(self) -> int:
        return hash(("FreeWord", self._letters))

    def __mul__(self, other: "FreeWord") -> "FreeWord":
        return reduce(self._letters + tuple(other))

    def __pow__(self, n: int) -> "FreeWord":
        if n < 0:
            return self.inverse() ** (-n)
        return reduce(self._letters * n)

    def inverse(self) -> "FreeWord":
        return FreeWord._raw(x ^ 1 for x in reversed(self._letters))

    def concat(self, other: "FreeWord") -> Tuple[Letter, ...]:
        """Literal (unreduced) concatenation."""
        return self._letters + tuple(other)

    def is_cyclically_reduced(self) -> bool:
        w = self._letters
        return bool(w) and w[0] != w[-1] ^ 1

    def __str__(self) -> str:
        return format_letters(self._letters)

    def __repr__(self) -> str:
        return f"FreeWord({compact(self._letters)!r})"


def format_letters(letters: Sequence[int]) -> str:
    """Spaced serialization with runs written as powers, e.g. ``a^2 b^-1``."""
    if not letters:
        return "1"
    out = []
    i = 0
    while i < len(letters):
        j = i
        while j < len(letters) and letters[j] == letters[i]:
            j += 1
        x = Letter(letters[i])
        e = (j - i) * x.sign
        out.append(x.generator if e == 1 else f"{x.generator}^{e}")
        i = j
    return " ".join(out)


def compact(letters: Sequence[int]) -> str:
    """One character per letter, uppercase for inverses (``aaB``)."""
    return "".join(Letter(x).name for x in letters)


_TOKEN = re.compile(r"([abAB])(?:\^(-?)(\d+))?")


def parse_word(text: str) -> FreeWord:
    """Parse ``term+`` with ``term := (a|b|A|B) ("^" "-"? digits)?``.

    Whitespace is ignored, ``A``/``B`` abbreviate the inverses, and ``1`` alone
    denotes the identity.
    """
    letters = []
    pos = 0
    n = len(text)
    seen = False
    while pos < n:
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if m is None:
            if text[pos] == "1" and not seen and not text[pos + 1:].strip():
                return FreeWord()
            raise WordSyntaxError(f"unexpected symbol {text[pos]!r}", len(text[:pos].encode()))
        x = Letter[m.group(1)]
        e = 1
        if m.group(3) is not None:
            e = int(m.group(3))
            if m.group(2):
                e = -e
        if e < 0:
            x, e = x.inverse(), -e
        letters.extend([x] * e)
        seen = True
        pos = m.end()
    if not seen:
        raise WordSyntaxError("empty word", len(text.encode()))
    return reduce(letters)


def as_word(w) -> FreeWord:
    if isinstance(w, FreeWord):
        return w
    if isinstance(w, CyclicWord):
        return FreeWord._raw(w.letters)
    if isinstance(w, str):
        return parse_word(w)
    return reduce(w)


def min_rotation(letters: Sequence[int]) -> Tuple[int, int]:
    """Index and value of the lexicographically least rotation (Booth's algorithm)."""
    s = list(letters) * 2
    n = len(letters)
    f = [-1] * len(s)
    k = 0
    for j in range(1, len(s)):
        sj = s[j]
        i = f[j - k - 1]
        while i != -1 and sj != s[k + i + 1]:
            if sj < s[k + i + 1]:
                k = j - i - 1
            i = f[i]
        if sj != s[k + i + 1]:
            if sj < s[k]:
                k = j
            f[j - k] = -1
        else:
            f[j - k] = i + 1
    return k % n if n else 0, n


def cyclic_reduce(w) -> Tuple["CyclicWord", FreeWord]:
    """Split ``w = conjugator * core * conjugator^-1`` with ``core`` cyclically reduced."""
    w = as_word(w)
    if not w:
        raise EmptyWordError("the identity has no cyclic reduction")
    letters = w.letters
    i, j = 0, len(letters) - 1
    while i < j and letters[i] == letters[j] ^ 1:
        i += 1
        j -= 1
    return CyclicWord(letters[i:j + 1]), FreeWord._raw(letters[:i])


class CyclicWord:
    """A cyclically reduced word regarded up to rotation (a conjugacy class)."""

    __slots__ = ("_letters", "__dict__")

    def __init__(self, letters: Iterable[int]):
        letters = tuple(Letter(x) for x in letters)
        if not letters:
            raise EmptyWordError("cyclic words are nonempty")
        n = len(letters)
        for i in range(n):
            if letters[i] == letters[(i + 1) % n] ^ 1:
                raise ValueError(f"{compact(letters)} is not cyclically reduced")
        self._letters = letters

    @classmethod
    def of(cls, w) -> "CyclicWord":
        """Cyclic class of an arbitrary nontrivial word or string."""
        if isinstance(w, CyclicWord):
            return w
        return cyclic_reduce(w)[0]

    @property
    def letters(self) -> Tuple[Letter, ...]:
        return self._letters

    @cached_property
    def canonical_rotation(self) -> int:
        return min_rotation(self._letters)[0]

    @cached_property
    def canonical(self) -> Tuple[Letter, ...]:
        k = self.canonical_rotation
        return self._letters[k:] + self._letters[:k]

    def rotations(self) -> Iterator[Tuple[Letter, ...]]:
        w = self._letters
        for k in range(len(w)):
            yield w[k:] + w[:k]

    def inverse(self) -> "CyclicWord":
        return CyclicWord(x ^ 1 for x in reversed(self._letters))

    def word(self) -> FreeWord:
        return FreeWord._raw(self._letters)

    def canonical_word(self) -> FreeWord:
        return FreeWord._raw(self.canonical)

    def __len__(self) -> int:
        return len(self._letters)

    def __iter__(self):
        return iter(self._letters)

    def __eq__(self, other) -> bool:
        return isinstance(other, CyclicWord) and self.canonical == other.canonical

    def __hash__(self) -> int:
        return hash(("CyclicWord", self.canonical))

    def __str__(self) -> str:
        return format_letters(self.canonical)

    def __repr__(self) -> str:
        return f"CyclicWord({compact(self.canonical)!r})"


@dataclass(frozen=True, order=True)
class UnorientedClass:
    """Conjugacy class up to inversion; ``letters`` is the least canonical form."""

    letters: Tuple[Letter, ...]

    @classmethod
    def of(cls, w) -> "UnorientedClass":
        c = CyclicWord.of(w)
        return cls(min(c.canonical, c.inverse().canonical))

    @property
    def cyclic(self) -> CyclicWord:
        return CyclicWord(self.letters)

    def word(self) -> FreeWord:
        return FreeWord._raw(self.letters)

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        return format_letters(self.letters)

    @property
    def compact(self) -> str:
        return compact(self.letters)


def primitive_root(w: CyclicWord) -> Tuple[CyclicWord, int]:
    """Return ``(root, m)`` with ``w`` conjugate to ``root^m`` and ``root`` not a proper power."""
    letters = CyclicWord.of(w).letters
    n = len(letters)
    for p in range(1, n + 1):
        if n % p == 0 and letters[p:] + letters[:p] == letters:
            return CyclicWord(letters[:p]), n // p
    raise AssertionError("unreachable")


def is_primitive(w) -> bool:
    """True iff the class is not a proper power."""
    return primitive_root(CyclicWord.of(w))[1] == 1


_PERIPHERAL = {
    (Letter.a,): 1,
    (Letter.A,): 1,
    (Letter.b,): 2,
    (Letter.B,): 2,
    (Letter.a, Letter.b): 3,
    (Letter.A, Letter.B): 3,  # canonical form of b^-1 a^-1
}


def is_peripheral(w) -> Optional[int]:
    """Boundary index 1, 2 or 3 if ``w`` is a power of a conjugate of a, b or ab."""
    root, _ = primitive_root(CyclicWord.of(w))
    return _PERIPHERAL.get(root.canonical)


def order_hypothesis(u, v) -> bool:
    """The hypothesis of the metric-independent inequality l(u) < l(uv).

    ``u`` and ``v`` cyclically reduced, the literal concatenation ``uv``
    cyclically reduced (no cancellation at either junction) and ``u`` starting
    and ending with different letters.
    """
    u, v = as_word(u), as_word(v)
    if not (u.is_cyclically_reduced() and v.is_cyclically_reduced()):
        return False
    if u[-1] == v[0] ^ 1 or v[-1] == u[0] ^ 1:
        return False
    return u[0] != u[-1]


# Boundary relabelings.  Each substitution phi satisfies
#   trace_{(x,y,z)}(phi(w)) = trace_{(t[p0], t[p1], t[p2])}(w),  t = (x, y, z),
# i.e. it realizes a homeomorphism of the pants permuting the boundary curves.
_A, _AI, _B, _BI = Letter.a, Letter.A, Letter.b, Letter.B
RELABELINGS = {
    (0, 1, 2): ((_A,), (_B,)),
    (1, 0, 2): ((_B,), (_A,)),
    (2, 1, 0): ((_A, _B), (_BI,)),
    (0, 2, 1): ((_AI,), (_A, _B)),
    (1, 2, 0): ((_B,), (_BI, _AI)),
    (2, 0, 1): ((_B, _A), (_AI,)),
}


def substitute(w, images: Tuple[Sequence[int], Sequence[int]]) -> FreeWord:
    """Apply the endomorphism ``a -> images[0], b -> images[1]``."""
    ia, ib = tuple(images[0]), tuple(images[1])
    table = {
        Letter.a: ia,
        Letter.A: tuple(x ^ 1 for x in reversed(ia)),
        Letter.b: ib,
        Letter.B: tuple(x ^ 1 for x in reversed(ib)),
    }
    out = []
    for x in as_word(w):
        out.extend(table[x])
    return reduce(out)


def relabel(w, perm: Tuple[int, int, int]) -> FreeWord:
    return substitute(w, RELABELINGS[tuple(perm)])
