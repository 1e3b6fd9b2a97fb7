import itertools
import random

import mpmath
import pytest

from pantsorder.rep import PantsMetric, build_representation, fixed_points, mat_mul
from pantsorder.sampling import random_metric, random_primitive_word
from pantsorder.selfint import (
    DEFAULT_REF,
    DIRECTION_ORDER,
    Method,
    NonPrimitiveError,
    Ray,
    boundary_compare,
    calibrate_direction_order,
    linked_on_line,
    selfint,
    selfint_axis,
    selfint_boundary,
    shift_axes,
)
from pantsorder.words import CyclicWord, FreeWord, UnorientedClass, is_primitive, relabel

GOLDEN = {
    "ab^-1": 1,
    "aab^-1": 2,
    "aaab^-1": 3,
    "aba^-1b^-1": 3,
    "aaaab^-1": 4,
    "aaba^-1b^-1": 4,
    "aab^-1a^-1b": 4,
    "abba^-1b^-1": 4,
    "aba^-1b^-1b^-1": 4,
    "ababa^-1b^-1": 4,
    "abab^-1a^-1b": 4,
    "aaba^-1b": 5,
    "abbab^-1": 5,
    "abab^-1a^-1b^-1": 5,
}


def geometric_selfint(w, bits=300):
    """Oracle: count crossings of one lift L0 with translates, modulo the stabilizer of L0.

    L0 is moved to the imaginary axis; each other lift meeting it is recorded by
    its endpoints after rescaling the crossing height into one period.
    """
    c = CyclicWord.of(w)
    L = c.letters
    n = len(L)
    rep = build_representation(DEFAULT_REF, bits)
    with mpmath.workprec(bits):
        W = rep.element(FreeWord._raw(L))
        e = fixed_points(W)
        att, rp = e.attracting, e.repelling

        def mob(M, t):
            p, q, r, s = M
            if t == mpmath.inf:
                return p / r if r != 0 else mpmath.inf
            den = r * t + s
            return (p * t + q) / den if den != 0 else mpmath.inf

        T = (mpmath.mpf(1), -rp, mpmath.mpf(1), -att)
        lam2 = abs(W[2] * att + W[3]) ** 2
        period = mpmath.log(lam2)
        g = (mpmath.mpf(1), mpmath.mpf(0), mpmath.mpf(0), mpmath.mpf(1))
        prefixes = [g]
        for x in L * 3:
            g = mat_mul(g, rep.images[x])
            prefixes.append(g)
        ends = []
        for k in range(n):
            f = fixed_points(rep.element(FreeWord._raw(L[k:] + L[:k])))
            ends.append((f.attracting, f.repelling))
        seen = set()
        for g in prefixes:
            for p, q in ends:
                P, Q = mob(T, mob(g, p)), mob(T, mob(g, q))
                if P == mpmath.inf or Q == mpmath.inf or P * Q >= 0:
                    continue
                if min(abs(P), abs(Q)) / max(abs(P), abs(Q)) < mpmath.mpf(10) ** -60:
                    continue  # L0 itself
                s = lam2 ** mpmath.floor(mpmath.log(-P * Q) / 2 / period)
                seen.add(tuple(sorted((mpmath.nstr(P / s, 30), mpmath.nstr(Q / s, 30)))))
    assert len(seen) % 2 == 0
    return len(seen) // 2


def primitive_classes(max_len):
    out = set()
    for n in range(1, max_len + 1):
        for t in itertools.product(range(4), repeat=n):
            if all(t[i] != t[(i + 1) % n] ^ 1 for i in range(n)):
                c = UnorientedClass.of(CyclicWord(t))
                if is_primitive(c.cyclic):
                    out.add(c)
    return sorted(out)


@pytest.mark.parametrize("word,count", sorted(GOLDEN.items()))
def test_golden_values(word, count):
    assert selfint(word) == count


def test_simple_and_figure_eight():
    assert selfint("a") == 0
    assert selfint("ab") == 0
    assert selfint("ab^-1") == 1


@pytest.mark.parametrize("n", range(1, 7))
def test_ab_power_family(n):
    assert selfint(FreeWord([0] + [3] * n)) == n


def test_report_fields():
    r = selfint_axis("aaba^-1b")
    assert r.count == len(r.linked_pairs) == 5
    assert r.method is Method.AXIS_LINKING
    assert r.raw_linked >= r.count
    assert all(j < k for j, k in r.linked_pairs)
    d = r.to_dict()
    assert set(d) >= {"word", "count", "method", "pairs"}


def test_non_primitive_rejected():
    with pytest.raises(NonPrimitiveError):
        selfint("ab^-1ab^-1")
    assert selfint("a^3") == 0


def test_direction_order_calibration():
    assert calibrate_direction_order(DEFAULT_REF) == DIRECTION_ORDER
    # the planar order is a property of the group, not of the metric
    for m in (PantsMetric(-2.1, -9.0, -40.0), PantsMetric(-5.0, -2.5, -3.3)):
        order = calibrate_direction_order(m)
        k = order.index(DIRECTION_ORDER[0])
        assert order[k:] + order[:k] == DIRECTION_ORDER


def test_linking_on_the_extended_line():
    inf = float("inf")
    assert linked_on_line((0.0, 2.0), (1.0, 3.0))
    assert not linked_on_line((0.0, 2.0), (0.5, 1.0))
    assert linked_on_line((0.0, inf), (-1.0, 1.0))
    assert not linked_on_line((0.0, inf), (1.0, 2.0))
    assert linked_on_line((-1.0, 1.0), (0.0, inf))


def test_boundary_compare_basics():
    fa, fA = Ray.forward([0]), Ray.forward([1])
    assert boundary_compare(fa, fA) == -boundary_compare(fA, fa)
    with pytest.raises(ValueError):
        boundary_compare(fa, Ray.forward([0, 0]))


def _numeric_key(t):
    return (1, 0) if t == float("inf") else (0, t)


def _check_orders_agree(w):
    c = CyclicWord.of(w)
    L = c.letters
    n = len(L)
    axes = shift_axes(c, DEFAULT_REF)
    rays, nums = [], []
    for k in range(n):
        s = L[k:] + L[:k]
        rays += [Ray.forward(s), Ray.backward(s)]
        nums += [axes[k].endpoints.attracting, axes[k].endpoints.repelling]
    for i, j in itertools.combinations(range(2 * n), 2):
        num = -1 if _numeric_key(nums[i]) < _numeric_key(nums[j]) else 1
        assert boundary_compare(rays[i], rays[j]) == num


def test_boundary_order_matches_numeric_for_ab_inverse():
    _check_orders_agree("ab^-1")


def test_boundary_order_matches_numeric_random():
    rng = random.Random(8)
    for _ in range(200):
        _check_orders_agree(random_primitive_word(rng, 8))


def test_methods_agree_exhaustively_to_length_7():
    for c in primitive_classes(7):
        assert selfint_axis(c.cyclic).count == selfint_boundary(c.cyclic).count


def test_metric_independence():
    rng = random.Random(21)
    ms = [m for m in (random_metric(rng) for _ in range(10)) if m.is_interior()][:3]
    for _ in range(40):
        w = random_primitive_word(rng, 12)
        base = selfint_axis(w).count
        for m in ms:
            assert selfint_axis(w, m).count == base


def test_symmetries():
    rng = random.Random(22)
    for _ in range(60):
        w = random_primitive_word(rng, 12)
        s = selfint(w)
        assert selfint(w.inverse()) == s
        L = w.letters
        k = rng.randrange(len(L))
        assert selfint(FreeWord(L[k:] + L[:k])) == s
        assert selfint(relabel(w, (1, 0, 2))) == s


def test_precision_escalation_on_close_endpoints(monkeypatch):
    import importlib

    mod = importlib.import_module("pantsorder.selfint")
    seen = []
    orig = mod.build_representation

    def spy(m, bits=53):
        seen.append(bits)
        return orig(m, bits)

    monkeypatch.setattr(mod, "build_representation", spy)
    w = FreeWord([0] * 12 + [3] + [0] * 11 + [2, 2])
    count = selfint_axis(w).count
    assert max(seen) > 53
    assert count == selfint_boundary(w).count == geometric_selfint(w, bits=1200)


def test_geometric_oracle_on_golden_and_random_words():
    for w, count in GOLDEN.items():
        assert geometric_selfint(w) == count
    rng = random.Random(9)
    for _ in range(25):
        w = random_primitive_word(rng, 10)
        assert geometric_selfint(w) == selfint(w)


def test_close_endpoints_at_large_boundary():
    # shifts agree on eight letters; at these traces their endpoints are ~1e-20 apart
    w = "a^-2ba^-2ba^-2ba^-2b^-1"
    m = PantsMetric(-20.0, -20.0, -20.0)
    assert selfint_axis(w, m).count == selfint_boundary(w).count == 28
    rng = random.Random(23)
    for _ in range(100):
        w = random_primitive_word(rng, 14)
        assert selfint_axis(w, m).count == selfint(w)
