"""Fricke trace coordinates and the SL(2,R) representation of the pants group.

A hyperbolic structure on the pair of pants is the point ``(x, y, z)`` of
``(-inf, -2]^3`` given by the traces of ``a``, ``b`` and ``ab``; boundary
length ``L`` and trace ``t`` are related by ``t = -2 cosh(L/2)``.

Matrices are plain 4-tuples ``(m11, m12, m21, m22)``.  At the default 53 bits
they hold Python floats; at higher precision they hold ``mpmath.mpf`` values
computed inside a local ``workprec`` context, so nothing global is mutated.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence, Tuple

import mpmath

from .words import FreeWord, Letter, as_word, cyclic_reduce, is_peripheral

DOUBLE_BITS = 53
EXTENDED_BITS = 128
MAX_WORD_LENGTH = 10_000
REL_TOL = 1e-9

Mat2 = Tuple  # (m11, m12, m21, m22)


class MetricError(ValueError):
    pass


class NonHyperbolicError(ValueError):
    """Raised when a hyperbolic element was required."""


class WordTooLongError(ValueError):
    pass


@dataclass(frozen=True)
class PantsMetric:
    """Point of Teichmuller space of the pants in trace coordinates."""

    x: float
    y: float
    z: float

    def __post_init__(self):
        for name in "xyz":
            t = getattr(self, name)
            if not (t <= -2.0):
                raise MetricError(f"trace {name}={t!r} is not <= -2")

    @classmethod
    def from_lengths(cls, L1: float, L2: float, L3: float) -> "PantsMetric":
        return metric_from_lengths(L1, L2, L3)

    @property
    def traces(self) -> Tuple[float, float, float]:
        return (self.x, self.y, self.z)

    @property
    def lengths(self) -> Tuple[float, float, float]:
        return tuple(2.0 * math.acosh(-t / 2.0) for t in self.traces)

    @property
    def kappa(self) -> float:
        x, y, z = self.traces
        return x * x + y * y + z * z - x * y * z

    def is_interior(self) -> bool:
        return max(self.traces) < -2.0

    def permuted(self, perm: Sequence[int]) -> "PantsMetric":
        t = self.traces
        return PantsMetric(*(t[p] for p in perm))

    def __str__(self) -> str:
        return ",".join(repr(t) for t in self.traces)


def metric_from_lengths(L1: float, L2: float, L3: float) -> PantsMetric:
    """Boundary lengths (0 for a cusp) to trace coordinates."""
    for L in (L1, L2, L3):
        if not L >= 0:
            raise MetricError(f"boundary length {L!r} is negative")
    return PantsMetric(*(-2.0 * math.cosh(L / 2.0) for L in (L1, L2, L3)))


# 2x2 arithmetic ----------------------------------------------------------

def mat_mul(M, N):
    a, b, c, d = M
    e, f, g, h = N
    return (a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)


def mat_inv(M):
    a, b, c, d = M
    return (d, -b, -c, a)


def mat_trace(M):
    return M[0] + M[3]


def mat_det(M):
    return M[0] * M[3] - M[1] * M[2]


def _finite(M) -> bool:
    return all(math.isfinite(v) for v in M)


@dataclass(frozen=True)
class Representation:
    """Images ``A = rho(a)``, ``B = rho(b)`` at a fixed working precision.

    ``A = [[x, -1], [1, 0]]`` and ``B = [[0, beta], [-1/beta, y]]`` with
    ``beta = (z - sqrt(z^2 - 4)) / 2``, so ``tr AB = beta + 1/beta = z``.
    """

    metric: PantsMetric
    A: Mat2
    B: Mat2
    bits: int = DOUBLE_BITS

    @property
    def images(self):
        """Matrices indexed by :class:`Letter` value."""
        # negating an mpf rounds to the ambient precision
        if self.bits <= DOUBLE_BITS:
            return (self.A, mat_inv(self.A), self.B, mat_inv(self.B))
        with mpmath.workprec(self.bits):
            return (self.A, mat_inv(self.A), self.B, mat_inv(self.B))

    def element(self, w) -> Mat2:
        return word_matrix(self, as_word(w))


@lru_cache(maxsize=256)
def build_representation(m: PantsMetric, bits: int = DOUBLE_BITS) -> Representation:
    if not isinstance(m, PantsMetric):
        raise MetricError("expected a PantsMetric")
    if bits <= DOUBLE_BITS:
        x, y, z = m.traces
        beta = (z - math.sqrt(max(z * z - 4.0, 0.0))) / 2.0
        A = (x, -1.0, 1.0, 0.0)
        B = (0.0, beta, -1.0 / beta, y)
        return Representation(m, A, B, DOUBLE_BITS)
    with mpmath.workprec(bits):
        x, y, z = (mpmath.mpf(t) for t in m.traces)
        beta = (z - mpmath.sqrt(max(z * z - 4, mpmath.mpf(0)))) / 2
        one, zero = mpmath.mpf(1), mpmath.mpf(0)
        A = (x, -one, one, zero)
        B = (zero, beta, -1 / beta, y)
    return Representation(m, A, B, bits)


def _check_length(w: FreeWord):
    if len(w) > MAX_WORD_LENGTH:
        raise WordTooLongError(f"word of length {len(w)} exceeds {MAX_WORD_LENGTH}")


def word_matrix(rep: Representation, w: FreeWord) -> Mat2:
    """Left-to-right product of the letter images."""
    imgs = rep.images
    if rep.bits <= DOUBLE_BITS:
        M = (1.0, 0.0, 0.0, 1.0)
        for x in w:
            M = mat_mul(M, imgs[x])
        return M
    with mpmath.workprec(rep.bits):
        M = (mpmath.mpf(1), mpmath.mpf(0), mpmath.mpf(0), mpmath.mpf(1))
        for x in w:
            M = mat_mul(M, imgs[x])
        return M


def trace_of_word(r, w, bits: int = DOUBLE_BITS):
    """Trace of the image of ``w``.

    ``r`` may be a :class:`Representation` or a :class:`PantsMetric`.  At
    double precision an overflow is retried at extended precision, in which
    case an ``mpf`` is returned.
    """
    w = as_word(w)
    _check_length(w)
    if w:
        # conjugation leaves the trace unchanged but inflates rounding error
        w = cyclic_reduce(w)[0].word()
    m = r.metric if isinstance(r, Representation) else r
    if isinstance(r, Representation) and r.bits == max(bits, r.bits):
        rep = r
    else:
        rep = build_representation(m, bits)
    M = word_matrix(rep, w)
    if rep.bits <= DOUBLE_BITS:
        if _finite(M):
            return mat_trace(M)
        rep = build_representation(m, EXTENDED_BITS)
        M = word_matrix(rep, w)
    with mpmath.workprec(rep.bits):
        return mat_trace(M)


def _arccosh_half(t, bits: int):
    """2 arccosh(t/2) for t >= 2, as float when representable."""
    if isinstance(t, float):
        return 2.0 * math.acosh(t / 2.0)
    with mpmath.workprec(max(bits, EXTENDED_BITS)):
        v = 2 * mpmath.acosh(t / 2)
    return v if bits > DOUBLE_BITS else float(v)


def length_of_word(m, w, bits: int = DOUBLE_BITS):
    """Length of the closed geodesic in the class of ``w``.

    Peripheral classes at a cusp have length 0 (parabolic); any other class
    with ``|tr| <= 2`` raises :class:`NonHyperbolicError`.
    """
    if isinstance(m, Representation):
        m = m.metric
    w = as_word(w)
    if not w:
        raise NonHyperbolicError("identity word has no geodesic")
    t = abs(trace_of_word(m, w, bits))
    tol = 2.0 * REL_TOL * len(w)
    if t <= 2.0 + tol:
        if is_peripheral(w) is not None:
            return 0.0 if bits <= DOUBLE_BITS else mpmath.mpf(0)
        raise NonHyperbolicError(f"{w} has |trace| {t} <= 2 (elliptic or parabolic)")
    return _arccosh_half(t, bits)


def classify(m: PantsMetric, w) -> str:
    """'hyperbolic', 'parabolic' or 'identity'."""
    w = as_word(w)
    if not w:
        return "identity"
    t = abs(trace_of_word(m, w))
    if t > 2.0 + 2.0 * REL_TOL * len(w):
        return "hyperbolic"
    return "parabolic" if is_peripheral(w) is not None else "elliptic"


@dataclass(frozen=True)
class AxisEndpoints:
    """Fixed points on R u {inf}; ``inf`` is ``math.inf`` or ``mpmath.inf``."""

    attracting: object
    repelling: object


def fixed_points(M: Mat2) -> AxisEndpoints:
    """Attracting and repelling fixed points of a hyperbolic matrix.

    Fixed points solve ``m21 t^2 + (m22 - m11) t - m12 = 0``; the eigenvalue at
    a finite fixed point ``t`` is ``m21 t + m22`` and at infinity is ``m11``.
    """
    a, b, c, d = M
    mp = not isinstance(a, float) and not isinstance(a, int)
    sqrt = mpmath.sqrt if mp else math.sqrt
    inf = mpmath.inf if mp else math.inf
    tr = a + d
    disc = tr * tr - 4
    if not disc > 0:
        raise NonHyperbolicError(f"matrix with trace {tr} is not hyperbolic")
    s = sqrt(disc)
    if c == 0:
        # fixed points infinity and b / (d - a)
        finite = b / (d - a)
        if abs(a) > abs(d):
            return AxisEndpoints(inf, finite)
        return AxisEndpoints(finite, inf)
    # roots of c t^2 + (d - a) t - b = 0, computed without cancellation
    p = d - a
    q = -(p + (s if p >= 0 else -s)) / 2
    r1 = q / c
    r2 = -b / q if q != 0 else -p / c - r1
    if abs(c * r1 + d) > abs(c * r2 + d):
        return AxisEndpoints(r1, r2)
    return AxisEndpoints(r2, r1)


def trace_identity_residual(r, u, v, bits: int = DOUBLE_BITS):
    """Relative residual of ``tr(u) tr(v) = tr(uv) + tr(u^-1 v)``.

    Returns ``(absolute, relative)``; relative is scaled by the sum of the
    magnitudes of the terms.
    """
    u, v = as_word(u), as_word(v)
    tu = trace_of_word(r, u, bits)
    tv = trace_of_word(r, v, bits)
    tuv = trace_of_word(r, u * v, bits)
    tiv = trace_of_word(r, u.inverse() * v, bits)
    with mpmath.workprec(max(bits, EXTENDED_BITS)):
        vals = [mpmath.mpf(t) for t in (tu, tv, tuv, tiv)]
        res = abs(vals[0] * vals[1] - vals[2] - vals[3])
        scale = abs(vals[0] * vals[1]) + abs(vals[2]) + abs(vals[3])
        rel = res / scale if scale else res
    return float(res) if math.isfinite(float(res)) else res, float(rel)


def power_traces(r, beta, gamma, jmax: int, bits: int = EXTENDED_BITS):
    """``tr(beta gamma^j)`` for ``j = 0..jmax`` via the two-term recurrence.

    ``gamma^2 = tr(gamma) gamma - I`` gives
    ``tr(beta gamma^(j+1)) = tr(gamma) tr(beta gamma^j) - tr(beta gamma^(j-1))``.
    """
    beta, gamma = as_word(beta), as_word(gamma)
    t0 = trace_of_word(r, beta, bits)
    t1 = trace_of_word(r, beta * gamma, bits)
    tg = trace_of_word(r, gamma, bits)
    out = [t0, t1]
    with mpmath.workprec(bits):
        t0, t1, tg = mpmath.mpf(t0), mpmath.mpf(t1), mpmath.mpf(tg)
        out = [t0, t1]
        for _ in range(jmax - 1):
            out.append(tg * out[-1] - out[-2])
    return out[: jmax + 1]


def lengths_from_traces(traces: Iterable, bits: int = EXTENDED_BITS):
    """Map traces (|t| > 2) to geodesic lengths at the given precision."""
    with mpmath.workprec(bits):
        return [2 * mpmath.acosh(abs(mpmath.mpf(t)) / 2) for t in traces]
