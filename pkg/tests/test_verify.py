from math import pi, sqrt

import pytest

from barrier_cover import closed_form as cf
from barrier_cover.online import Policy
from barrier_cover.verify import (
    GridSpec,
    best_beta,
    certify_convexity,
    certify_r0_is_argmax,
    certify_sim_equals_formula,
    default_seed,
    greedy_worst_r,
    run_suite,
    worst_r,
)


def test_gridspec_validation():
    with pytest.raises(ValueError):
        GridSpec(0.0, 1.0, points=2)
    with pytest.raises(ValueError):
        GridSpec(1.0, 1.0)


def test_worst_r_examples():
    r, v = worst_r(pi / 4, cf.beta0(pi / 4))
    assert r == pytest.approx(0.5, abs=1e-6) and v == pytest.approx(1.25, abs=1e-10)
    r, v = worst_r(pi / 3, 0.0)
    assert r == pytest.approx(0.5, abs=1e-6) and v == pytest.approx(2 * sqrt(3) / 3, abs=1e-10)
    r, _ = worst_r(pi / 8, pi / 8)
    assert r == pytest.approx(1.0, abs=1e-7)
    with pytest.raises(ValueError):
        worst_r(pi / 4, 1.0)


def test_best_beta_examples():
    b, v = best_beta(pi / 4)
    assert b == pytest.approx(0.3218, abs=1e-4) and v == pytest.approx(1.25, abs=1e-6)
    _, v = best_beta(pi / 3.5)
    assert v == pytest.approx(1.231, abs=1e-3)
    b, v = best_beta(pi / 8)
    assert b == pytest.approx(pi / 8, abs=1e-9) and v == pytest.approx(1.0824, abs=1e-4)


@pytest.mark.parametrize("alpha", [0.2, pi / 6, 0.6, pi / 4, 0.9, pi / 3, 1.2, 1.45])
def test_best_beta_matches_closed_form(alpha):
    b, v = best_beta(alpha)
    rep = cf.beta_hedge_ratio(alpha)
    assert abs(b - rep.beta) < 1e-4
    assert abs(v - rep.ratio) < 1e-6


def test_r0_argmax_certificates():
    assert certify_r0_is_argmax(pi / 4, cf.beta0(pi / 4))
    assert certify_r0_is_argmax(pi / 6, pi / 6)
    assert certify_r0_is_argmax(3 * pi / 8, 0.2)
    with pytest.raises(ValueError):
        certify_r0_is_argmax(pi / 8, 0.0)  # beta below t(alpha)


@pytest.mark.parametrize("alpha", [pi / 16, pi / 4, pi / 3])
def test_convexity_certificate(alpha):
    assert certify_convexity(alpha) >= 0.7


def test_sim_equals_formula_examples():
    assert certify_sim_equals_formula(Policy.straight_up(), pi / 4, 200, seed=1) < 1e-12
    assert certify_sim_equals_formula(Policy.greedy(), pi / 8, 200, seed=2) < 1e-9
    assert certify_sim_equals_formula(Policy.beta_hedge(0.3), 0.9, 200, seed=3) < 1e-9
    with pytest.raises(ValueError):
        certify_sim_equals_formula(Policy.greedy(), pi / 3, 10)


def test_greedy_oracle_beats_closed_form_above_quarter_pi():
    r, v = greedy_worst_r(pi / 4)
    assert r == pytest.approx(1.0) and v == pytest.approx(sqrt(2), abs=1e-12)
    r, v = greedy_worst_r(pi / 3)
    assert r == pytest.approx(0.8, abs=1e-5)
    assert v == pytest.approx(sqrt(7) / 2, abs=1e-9)
    assert v > cf.greedy_ratio(pi / 3) + 0.02


def test_seed_env_override(monkeypatch):
    monkeypatch.delenv("BARRIER_COVER_SEED", raising=False)
    assert default_seed() == 0xC0FFEE
    monkeypatch.setenv("BARRIER_COVER_SEED", "0x10")
    assert default_seed() == 16


def test_suites_are_deterministic():
    a, _ = run_suite("seam", seed=5)
    b, _ = run_suite("seam", seed=5)
    assert [r.line() for r in a] == [r.line() for r in b]
    with pytest.raises(ValueError):
        run_suite("nope")
