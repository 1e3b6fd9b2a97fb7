import math
import random

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pantsorder.rep import (
    EXTENDED_BITS,
    MetricError,
    NonHyperbolicError,
    PantsMetric,
    WordTooLongError,
    build_representation,
    classify,
    fixed_points,
    length_of_word,
    mat_det,
    mat_mul,
    mat_trace,
    metric_from_lengths,
    power_traces,
    trace_identity_residual,
    trace_of_word,
)
from pantsorder.sampling import random_metric, random_reduced_word
from pantsorder.words import FreeWord

M3 = PantsMetric(-3.0, -3.0, -3.0)

traces = st.floats(min_value=-60.0, max_value=-2.0)
metrics = st.builds(PantsMetric, traces, traces, traces)


def test_metric_from_lengths():
    assert metric_from_lengths(0, 0, 0).traces == (-2.0, -2.0, -2.0)
    L = 2 * math.acosh(1.5)
    assert metric_from_lengths(L, L, L).traces == pytest.approx((-3.0, -3.0, -3.0), rel=1e-15)
    with pytest.raises(MetricError):
        metric_from_lengths(-1, 0, 0)
    with pytest.raises(MetricError):
        PantsMetric(-1.0, -3.0, -3.0)


@given(st.tuples(*[st.floats(0, 20)] * 3))
def test_lengths_round_trip(Ls):
    assert metric_from_lengths(*Ls).lengths == pytest.approx(Ls, abs=1e-7)


def test_representation_at_reference():
    r = build_representation(M3)
    beta = (-3 - math.sqrt(5)) / 2
    assert r.B[1] == pytest.approx(beta)
    assert M3.kappa == 54
    assert mat_trace(r.A) == -3 and mat_trace(r.B) == -3
    assert mat_trace(mat_mul(r.A, r.B)) == pytest.approx(-3)


def test_representation_at_cusps():
    r = build_representation(PantsMetric(-2.0, -2.0, -2.0))
    assert r.B == (0.0, -1.0, 1.0, -2.0)
    for w in ("a", "b", "ab"):
        assert classify(r.metric, w) == "parabolic"
        assert length_of_word(r.metric, w) == 0.0


@settings(max_examples=200)
@given(metrics)
def test_representation_traces_and_determinants(m):
    r = build_representation(m)
    x, y, z = m.traces
    assert mat_det(r.A) == pytest.approx(1, abs=1e-9)
    assert mat_det(r.B) == pytest.approx(1, rel=1e-9, abs=1e-9)
    assert mat_trace(r.A) == pytest.approx(x, rel=1e-12)
    assert mat_trace(r.B) == pytest.approx(y, rel=1e-12)
    assert mat_trace(mat_mul(r.A, r.B)) == pytest.approx(z, rel=1e-9)
    tA, tB, tAB = mat_trace(r.A), mat_trace(r.B), mat_trace(mat_mul(r.A, r.B))
    assert tA**2 + tB**2 + tAB**2 - tA * tB * tAB == pytest.approx(m.kappa, rel=1e-9)
    assert m.kappa != 4


def test_trace_examples():
    assert trace_of_word(M3, "ab^-1") == pytest.approx(12)
    assert trace_of_word(M3, "ab^-2") == pytest.approx(-33)
    assert trace_of_word(M3, "1") == 2
    m = PantsMetric(-2.5, -4.0, -7.25)
    assert trace_of_word(m, "a") == -2.5
    assert trace_of_word(m, "ab") == pytest.approx(-7.25)


def test_length_examples():
    assert length_of_word(M3, "ab^-1") == pytest.approx(2 * math.acosh(6))
    assert length_of_word(M3, "ab^-1") == pytest.approx(4.9557, abs=1e-4)
    assert length_of_word(M3, "ab^-2") == pytest.approx(2 * math.acosh(16.5))
    assert length_of_word(M3, "ab^-2") == pytest.approx(6.991176, abs=1e-6)
    assert length_of_word(metric_from_lengths(1, 2, 3), "a") == pytest.approx(1)


def test_boundary_dictionary():
    rng = random.Random(3)
    for _ in range(50):
        m = random_metric(rng)
        L = m.lengths
        assert [length_of_word(m, w) for w in ("a", "b", "ab")] == pytest.approx(L, rel=1e-9)


def test_fixed_points():
    e = fixed_points((2.0, 0.0, 0.0, 0.5))
    assert e.attracting == math.inf and e.repelling == 0
    e = fixed_points(build_representation(M3).A)
    assert e.attracting == pytest.approx(-2.6180, abs=1e-4)
    assert e.repelling == pytest.approx(-0.3820, abs=1e-4)
    with pytest.raises(NonHyperbolicError):
        fixed_points((1.0, 1.0, 0.0, 1.0))


@given(metrics, st.lists(st.integers(0, 3), min_size=1, max_size=8))
def test_fixed_points_are_fixed(m, t):
    w = FreeWord(t)
    if not w or abs(trace_of_word(m, w)) <= 2.0001:
        return
    r = build_representation(m, EXTENDED_BITS)
    M = r.element(w)
    with mpmath.workprec(EXTENDED_BITS):
        e = fixed_points(M)
        Minv = (M[3], -M[1], -M[2], M[0])
        # each point is checked under the map that contracts near it
        for p, N in ((e.attracting, M), (e.repelling, Minv)):
            if p == mpmath.inf:
                assert abs(N[2]) < 1e-20 * max(abs(v) for v in N)
                continue
            image = (N[0] * p + N[1]) / (N[2] * p + N[3])
            assert abs(image - p) <= 1e-20 * (1 + abs(p))
        if e.attracting != mpmath.inf:
            assert abs(M[2] * e.attracting + M[3]) > 1


def test_non_hyperbolic_rejected():
    with pytest.raises(NonHyperbolicError):
        length_of_word(M3, "1")
    with pytest.raises(WordTooLongError):
        trace_of_word(M3, FreeWord([0] * 10_001))


def test_conjugation_and_inversion_invariance():
    rng = random.Random(5)
    for _ in range(300):
        m = random_metric(rng)
        w = random_reduced_word(rng, rng.randint(1, 15))
        g = random_reduced_word(rng, rng.randint(0, 15))
        t = trace_of_word(m, w)
        assert trace_of_word(m, g * w * g.inverse()) == pytest.approx(t, rel=1e-9)
        assert trace_of_word(m, w.inverse()) == pytest.approx(t, rel=1e-9)


def test_trace_identity_examples():
    assert trace_identity_residual(M3, "a", "b")[0] < 1e-12
    assert trace_identity_residual(M3, "a", "a")[0] < 1e-12


def test_overflow_escalates_to_extended_precision():
    m = metric_from_lengths(8, 8, 8)
    w = FreeWord([0, 3] * 200)
    t = trace_of_word(m, w)
    assert isinstance(t, mpmath.mpf) and mpmath.isfinite(t)
    u, v = FreeWord([0, 3] * 100), FreeWord([0, 3] * 100)
    assert trace_identity_residual(m, u, v)[1] < 1e-9


def test_extended_precision_is_exact_on_integers():
    with mpmath.workprec(200):
        assert trace_of_word(M3, "ab^-1", 200) == 12


def test_power_traces_match_products():
    m = PantsMetric(-2.2, -3.1, -4.7)
    ts = power_traces(m, "ab", "ab^-2", 12)
    for j, t in enumerate(ts):
        w = FreeWord([0, 2]) * FreeWord([0, 3, 3]) ** j
        direct = trace_of_word(m, w, EXTENDED_BITS)
        with mpmath.workprec(EXTENDED_BITS):
            assert abs(t - direct) <= 1e-25 * abs(direct)


def test_monotone_family():
    rng = random.Random(12)
    for _ in range(20):
        m = random_metric(rng)
        Ls = [length_of_word(m, FreeWord([0] + [3] * n)) for n in range(1, 12)]
        assert all(x < y for x, y in zip(Ls, Ls[1:]))
