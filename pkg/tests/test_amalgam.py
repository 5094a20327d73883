"""Amalgamation intervals, space merging, and Katetov realization."""

import random
from fractions import Fraction as F

import pytest

from urylab import (FiniteMetricSpace, PreconditionError, amalgamate,
                    katetov_extend, one_point_interval, realize_point,
                    validate_space)
from urylab.amalgam import KatetovFunction, katetov_violations
from urylab.core import Ball
from urylab.gen import random_point_in_ball, random_space


def test_interval_single_shared_point():
    iv = one_point_interval([3], [1])
    assert (iv.lo, iv.hi) == (2, 4)


def test_interval_two_shared_points():
    iv = one_point_interval([1, 5], [2, 2])
    assert (iv.lo, iv.hi) == (3, 3)


def test_interval_identification_case():
    iv = one_point_interval([1], [1])
    assert (iv.lo, iv.hi) == (0, 2)


def test_interval_lo_le_hi_on_random_consistent_data():
    rng = random.Random(11)
    for _ in range(50):
        space = random_space(rng, 5)
        p0, p1 = 3, 4
        z = [0, 1, 2]
        iv = one_point_interval([space.d(p0, i) for i in z],
                                [space.d(i, p1) for i in z])
        assert 0 <= iv.lo <= iv.hi
        assert iv.contains(space.d(p0, p1))


def test_interval_empty_z_rejected():
    with pytest.raises(PreconditionError):
        one_point_interval([], [])


def _pair(label_a, label_b, d):
    return FiniteMetricSpace.from_rows((label_a, label_b), ((0, d), (d, 0)))


def test_amalgamate_subset_is_noop():
    x0 = random_space(random.Random(0), 4)
    sub = FiniteMetricSpace.from_rows(
        x0.labels[:2], tuple(tuple(row[:2]) for row in x0.dist[:2]))
    assert amalgamate(x0, sub) == x0


def test_amalgamate_midpoint_worked_instance():
    x0 = _pair("p0", "z", 3)
    x1 = _pair("z", "p1", 1)
    merged = amalgamate(x0, x1, policy="midpoint")
    assert merged.d(merged.index("p0"), merged.index("p1")) == 3
    assert validate_space(merged).ok


def test_amalgamate_minimal_identifies():
    x0 = _pair("p0", "z", 1)
    x1 = _pair("z", "p1", 1)
    merged = amalgamate(x0, x1, policy="minimal")
    # |X0| + |X1| - |Z| - 1: p1 merged into p0
    assert merged.n == 2 + 2 - 1 - 1


def test_amalgamate_explicit_policy():
    x0 = _pair("p0", "z", 3)
    x1 = _pair("z", "p1", 1)
    merged = amalgamate(x0, x1, policy="explicit",
                        explicit={("p1", "p0"): F(7, 2)})
    assert merged.d(merged.index("p0"), merged.index("p1")) == F(7, 2)
    with pytest.raises(PreconditionError):
        amalgamate(x0, x1, policy="explicit", explicit={("p1", "p0"): 5})


def test_amalgamate_disagreement_on_z_rejected():
    x0 = _pair("a", "z", 3)
    x1 = FiniteMetricSpace.from_rows(("a", "z"), ((0, 2), (2, 0)))
    with pytest.raises(PreconditionError):
        amalgamate(x0, x1)


def test_amalgamate_restriction_and_idempotence():
    rng = random.Random(5)
    for policy in ("minimal", "midpoint", "maximal"):
        for _ in range(10):
            x0 = random_space(rng, rng.randint(3, 5))
            x1 = random_space(rng, rng.randint(2, 4))
            # rename to force a single shared point with consistent metric
            x1 = FiniteMetricSpace(
                (x0.labels[0],) + tuple(f"n{i}" for i in range(1, x1.n)),
                x1.dist)
            merged = amalgamate(x0, x1, policy=policy)
            assert validate_space(merged).ok
            for la in x0.labels:
                for lb in x0.labels:
                    assert merged.d(merged.index(la), merged.index(lb)) \
                        == x0.d(x0.index(la), x0.index(lb))
            for la in x1.labels:
                for lb in x1.labels:
                    assert merged.d(merged.index(la), merged.index(lb)) \
                        == x1.d(x1.index(la), x1.index(lb))
            again = amalgamate(merged, x1, policy="minimal")
            assert again == merged


def test_katetov_extend_shortest_path():
    w = _pair("a", "b", 2)
    g = katetov_extend(w, [0], {0: 1})
    assert g.values == (F(1), F(3))


def test_katetov_extend_full_support_is_identity():
    w = _pair("a", "b", 2)
    g = katetov_extend(w, [0, 1], {0: 1, 1: 3})
    assert g.values == (F(1), F(3))


def test_katetov_extend_doubling_identity():
    rng = random.Random(8)
    for _ in range(20):
        space = random_space(rng, 5)
        w0 = 4
        vals = {a: space.d(a, w0) for a in range(3)}
        g = katetov_extend(space, range(3), vals)
        assert g.values[w0] == min(2 * space.d(a, w0) for a in range(3))
        assert not katetov_violations(space, dict(enumerate(g.values)))


def test_katetov_violation_reported():
    w = _pair("a", "b", 2)
    with pytest.raises(PreconditionError):
        katetov_extend(w, [0, 1], {0: 1, 1: 10})


def test_realize_zero_returns_existing_point():
    w = _pair("a", "b", 2)
    g = KatetovFunction(w, (F(0), F(2)))
    space, idx = realize_point(w, g)
    assert space is w and idx == 0


def test_realize_two_zeros_rejected():
    w = _pair("a", "b", 2)
    with pytest.raises(PreconditionError):
        realize_point(w, KatetovFunction(w, (F(0), F(0))))


def test_realize_worked_extension():
    w = _pair("a", "b", 2)
    g = katetov_extend(w, [0], {0: 1})
    grown, q = realize_point(w, g)
    assert grown.labels == ("a", "b", "q1")
    assert grown.d(q, 0) == 1 and grown.d(q, 1) == 3
    assert validate_space(grown).ok


def test_realize_chain_construction():
    space = FiniteMetricSpace.from_rows(("p0",), ((0,),))
    step = F(3, 2)
    for k in range(1, 6):
        g = katetov_extend(space, [space.n - 1], {space.n - 1: step})
        space, _ = realize_point(space, g)
        assert validate_space(space).ok
    assert space.d(0, space.n - 1) == 5 * step


def test_realize_after_extend_fuzz():
    rng = random.Random(13)
    for _ in range(30):
        space = random_space(rng, rng.randint(2, 6))
        ball = Ball(0, space.diameter() + 2)
        space, _ = random_point_in_ball(rng, space, ball)
        assert validate_space(space).ok
