from math import cos, pi, sin, sqrt, tan

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from barrier_cover.geometry import (
    GoodInstance,
    Interval,
    Point,
    apex,
    check_alpha,
    closest_point_on_cone,
    covers,
    covers_interval,
    distance,
    drop_redundant,
    normalize,
)

alphas = st.floats(0.05, pi / 2 - 0.05)
coords = st.floats(-5.0, 5.0)


def test_covers_boundary_and_ground():
    assert covers((0, 1), 1.0, pi / 4)
    assert not covers((0, 0), 0.1, pi / 4)
    assert covers((0, 1 / tan(pi / 8)), -1.0, pi / 8)
    with pytest.raises(ValueError):
        covers((0, -1), 0.0, pi / 4)


def test_check_alpha_rejects_endpoints():
    for bad in (0.0, pi / 2, -0.1, 2.0):
        with pytest.raises(ValueError):
            check_alpha(bad)


def test_apex_examples():
    t = apex(Interval(-1, 1), pi / 4)
    assert t.x == pytest.approx(0.0) and t.y == pytest.approx(1.0)
    # both endpoints sit exactly on the view boundary
    assert abs(abs(-1 - t.x) - t.y * tan(pi / 4)) < 1e-15
    assert apex(Interval(-1, -1), 0.7) == Point(-1.0, 0.0)
    with pytest.raises(ValueError):
        apex(Interval(1, -1), 0.5)


def _boundary_samples(iv, alpha, n=20001, height=20.0):
    # dense oracle: points on both cone rays up to `height` above the apex
    t = apex(iv, alpha)
    u = np.linspace(0.0, height, n)
    left = np.c_[t.x - u * sin(alpha), t.y + u * cos(alpha)]
    right = np.c_[t.x + u * sin(alpha), t.y + u * cos(alpha)]
    return np.vstack([left, right])


def test_closest_point_examples():
    p = closest_point_on_cone((0, 0), Interval(-1, 0), pi / 4)
    assert p.x == pytest.approx(-0.5) and p.y == pytest.approx(0.5)

    p = closest_point_on_cone((0, 0), Interval(-1, 0), pi / 3)
    assert distance((0, 0), p) == pytest.approx(cos(pi / 3))
    assert p.x > apex(Interval(-1, 0), pi / 3).x  # right edge, not the apex

    inside = Point(0.1, 3.0)
    assert closest_point_on_cone(inside, Interval(-1, 1), pi / 4) == inside


@settings(max_examples=200, deadline=None)
@given(alphas, coords, st.floats(0.0, 5.0), st.floats(0.0, 4.0), st.floats(0.0, 4.0))
def test_closest_point_beats_boundary_samples(alpha, px, py, a, b):
    iv = Interval(-a, b)
    p = (px, py)
    q = closest_point_on_cone(p, iv, alpha)
    assert covers_interval(q, iv, alpha, eps=1e-9)
    pts = _boundary_samples(iv, alpha, n=4001, height=40.0)
    best = np.min(np.hypot(pts[:, 0] - px, pts[:, 1] - py))
    assert distance(p, q) <= best + 1e-9


@settings(max_examples=200, deadline=None)
@given(alphas, st.floats(0.01, 5.0), st.floats(0.0, 5.0))
def test_apex_sees_both_ends_exactly(alpha, a, b):
    t = apex(Interval(-a, b), alpha)
    assert covers_interval(t, (-a, b), alpha, eps=1e-12)
    # any lower point misses an endpoint
    assert not covers_interval((t.x, t.y * (1 - 1e-6)), (-a, b), alpha, eps=0.0)


def test_normalize_examples():
    inst, factor = normalize([2, -1])
    assert inst.xs == (-1.0, 0.5) and inst.r == 0.5 and factor == -0.5

    inst, _ = normalize([-1, 0.5, 0.2])
    assert inst.xs == (-1.0, 0.5)

    s = 1 + sqrt(2)
    raw = [2.0, -2 * s, 2 * s**2]
    inst, factor = normalize(raw)
    assert len(inst) == 3
    assert inst.leftmost == -1.0 and 0 <= inst.r <= 1


def test_normalize_trivial_and_ties():
    inst, factor = normalize([0.0, 0.0])
    assert inst.is_trivial and factor == 0.0
    inst, factor = normalize([1.0, -1.0])
    assert factor == 1.0 and inst.xs == (1.0, -1.0)


@settings(max_examples=300, deadline=None)
@given(st.lists(st.floats(-100, 100).filter(lambda x: abs(x) > 1e-6), min_size=1, max_size=12))
def test_normalize_makes_good_instances(raw):
    inst, factor = normalize(raw)
    kept = drop_redundant(raw)
    assert len(inst) == len(kept)
    assert inst.leftmost == -1.0
    assert 0.0 <= inst.r <= 1.0 + 1e-12
    np.testing.assert_allclose(inst.xs, [factor * x for x in kept], rtol=1e-12, atol=1e-15)


def test_good_instance_rejects_bad_input():
    with pytest.raises(ValueError):
        GoodInstance((-1.0, -0.5))  # redundant
    with pytest.raises(ValueError):
        GoodInstance((-0.5, 0.2))  # leftmost is not -1
    with pytest.raises(ValueError):
        GoodInstance((0.5, -1.0, 2.0))  # r > 1


def test_interval_spanning():
    assert Interval.spanning([3, -2]) == Interval(-2.0, 3.0)
    assert Interval.spanning([3, 4]) == Interval(0.0, 4.0)
    assert Interval.spanning([3, 4], origin=False) == Interval(3.0, 4.0)
    with pytest.raises(ValueError):
        Interval.spanning([], origin=False)
