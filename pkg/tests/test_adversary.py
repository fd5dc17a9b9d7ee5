from math import pi, sqrt

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from barrier_cover import closed_form as cf
from barrier_cover.adversary import (
    Status,
    adversary_requests,
    apex_T,
    classify_rounds,
    dead_zone_fixed_point,
    dead_zone_step,
    max_hedge_run,
    min_success_rho,
    opt_o,
    self_similarity_gap,
    succeeds,
    z_points_feasible,
)
from barrier_cover.geometry import Interval, apex
from barrier_cover.offline import opt_cost_geometric

S = 1 + sqrt(2)
RHO = (1 + sqrt(2)) / 2
Q = pi / 4


def test_requests_alternate_and_grow():
    xs = adversary_requests(2.0, 5)
    assert xs == [2.0, -4.0, 8.0, -16.0, 32.0]


@settings(max_examples=100, deadline=None)
@given(st.floats(0.05, pi / 4), st.floats(1.01, 4.0), st.integers(1, 12))
def test_apex_and_opt_match_geometry(alpha, s, i):
    span = Interval.spanning(adversary_requests(s, i))
    t, want = apex_T(s, alpha, i), apex(span, alpha)
    assert t.x == pytest.approx(want.x, rel=1e-12, abs=1e-12)
    assert t.y == pytest.approx(want.y, rel=1e-12)
    assert opt_o(s, alpha, i) == pytest.approx(opt_cost_geometric(span, alpha), rel=1e-12)


def test_apex_reference_values():
    t2 = apex_T(S, Q, 2)
    assert t2.x == pytest.approx(-sqrt(2)) and t2.y == pytest.approx(2 + sqrt(2))
    t3 = apex_T(S, Q, 3)
    assert t3.x == pytest.approx(-S * (1 - S)) and t3.y == pytest.approx(S * (1 + S))
    assert opt_o(S, Q, 3) / opt_o(S, Q, 2) == pytest.approx(S)
    assert opt_o(S, Q, 0) == 0.0


def test_max_hedge_at_the_bound():
    out = max_hedge_run(Q, S, RHO, 50)
    assert out.status is Status.SUCCEEDED
    (_, _, z1), (_, _, z2) = out.z_trace[:2]
    assert z1.x == pytest.approx(0.3239, abs=1e-4) and z1.y == pytest.approx(1.6760, abs=1e-4)
    assert z2.x == pytest.approx(-0.5364, abs=1e-4) and z2.y == pytest.approx(4.2921, abs=1e-4)
    assert z_points_feasible(out, Q, S)
    # each round spends exactly its budget
    steps = np.diff([0.0] + out.cost_trace)
    np.testing.assert_allclose(steps, out.budgets, rtol=1e-12)


def test_max_hedge_outcomes():
    low = max_hedge_run(Q, S, 1.19, 50)
    assert low.status is Status.FAILED and low.round == 7
    big = max_hedge_run(Q, 1.1, 10.0, 50)
    assert big.status is Status.INVALID and big.round == 1
    with pytest.raises(ValueError):
        max_hedge_run(pi / 3, S, RHO, 10)
    with pytest.raises(ValueError):
        max_hedge_run(Q, 0.9, RHO, 10)


def test_dead_zone_limit_and_monotonicity():
    dz = dead_zone_fixed_point(Q, S, RHO)
    assert dz.converged
    assert dz.limit == pytest.approx((2 - sqrt(2)) / 4, abs=1e-9)
    assert dz.limit == pytest.approx(0.14644661, abs=1e-6)
    assert all(a <= b + 1e-15 for a, b in zip(dz.sequence, dz.sequence[1:]))
    # the limit is a fixed point of the step map
    assert dead_zone_step(Q, S, RHO, dz.limit) == pytest.approx(dz.limit, abs=1e-9)


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_dead_zone_diverges_below_threshold(k):
    a = k * pi / 16
    s, rho = cf.s_star(a), cf.rho_star(a)
    assert not dead_zone_fixed_point(a, s, rho - 1e-3).converged
    assert dead_zone_fixed_point(a, s, rho + 1e-3).converged


def test_bisection_matches_rho_of_s():
    assert min_success_rho(Q, S) == pytest.approx(RHO, abs=1e-6)
    assert min_success_rho(Q, 2.0) == pytest.approx(cf.rho_bound(2.0, Q), abs=1e-6)
    a = pi / 8
    assert min_success_rho(a, cf.s_star(a)) == pytest.approx(cf.rho_star(a), abs=1e-6)


def test_seeded_run_settles():
    dz = dead_zone_fixed_point(Q, S, RHO + 1e-3)
    out = max_hedge_run(Q, S, RHO + 1e-3, 200, z2=dz.limit + 1e-9)
    assert out.succeeded
    # z_i creeps up toward the attracting root of the fixed-point quadratic
    zs = [z for i, z, _ in out.z_trace if i >= 3]
    assert all(a <= b for a, b in zip(zs, zs[1:]))
    assert self_similarity_gap(out) < 1e-4
    assert succeeds(Q, S, RHO + 1e-3)
    assert not succeeds(Q, S, RHO - 1e-3)


def test_classify_rounds():
    out = max_hedge_run(Q, S, RHO, 5)
    zs = [(0.0, 0.0)] + [p for _, _, p in out.z_trace]
    assert classify_rounds(zs, out) == ["cautious"] * 5
    far = [(0.0, 0.0), (50.0, 50.0)]
    assert classify_rounds(far, out) == ["aggressive"]


def test_long_runs_stay_finite():
    import warnings

    with warnings.catch_warnings():
        warnings.simplefilter("error")
        out = max_hedge_run(Q, 3.0, 1.3, 400)
    assert np.all(np.isfinite(out.cost_trace))
