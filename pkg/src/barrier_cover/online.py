"""Round-by-round simulation of the online coverage policies.

Each policy reacts to a new request that falls outside the drone's view:

* Straight-Up climbs the y-axis to the lowest point of the current cone.
* Greedy jumps to the nearest point of the current cone.
* Beta-Hedge flies along a ray tilted by +/-beta from vertical, toward the
  new request, until it meets the cone edge raised by that request.

Requests inside the current span are redundant and cost nothing.
"""

import itertools
from dataclasses import dataclass, field
from enum import Enum
from math import cos, sin, tan

import numpy as np

from .geometry import (
    EPS_GEO,
    Interval,
    Point,
    apex,
    check_alpha,
    closest_point_on_cone,
    covers,
    covers_interval,
)


class PolicyKind(Enum):
    STRAIGHT_UP = "straight-up"
    GREEDY = "greedy"
    BETA_HEDGE = "beta-hedge"


@dataclass(frozen=True)
class Policy:
    kind: PolicyKind
    beta: float = None

    @classmethod
    def straight_up(cls):
        return cls(PolicyKind.STRAIGHT_UP)

    @classmethod
    def greedy(cls):
        return cls(PolicyKind.GREEDY)

    @classmethod
    def beta_hedge(cls, beta):
        return cls(PolicyKind.BETA_HEDGE, float(beta))

    @classmethod
    def parse(cls, name, beta=None):
        kind = PolicyKind(name)
        if kind is PolicyKind.BETA_HEDGE:
            if beta is None:
                raise ValueError("beta-hedge needs a beta")
            return cls.beta_hedge(beta)
        return cls(kind)

    def check(self, alpha):
        if self.kind is PolicyKind.BETA_HEDGE:
            if self.beta is None or not (0.0 <= self.beta <= alpha):
                raise ValueError(f"beta-hedge needs 0 <= beta <= alpha, got beta={self.beta!r}, alpha={alpha!r}")

    @property
    def name(self):
        return self.kind.value


@dataclass(frozen=True)
class Trajectory:
    """Drone positions P_0 = (0, 0), P_1, ... one per request."""

    positions: tuple
    requests: tuple = field(default=())

    @property
    def step_costs(self):
        p = np.asarray(self.positions, dtype=float)
        return np.hypot(np.diff(p[:, 0]), np.diff(p[:, 1]))

    @property
    def cost(self):
        return float(np.sum(self.step_costs))

    @property
    def final(self):
        return self.positions[-1]


class InvariantViolation(RuntimeError):
    pass


def _straight_up_step(pos, span, alpha):
    need = max(-span.l, span.r) / tan(alpha)
    return Point(0.0, max(pos.y, need))


def _beta_hedge_step(pos, x_new, span, alpha, beta):
    rightward = x_new > pos.x
    sign = 1.0 if rightward else -1.0
    ta = tan(alpha)
    # rate at which the ray closes on the new edge
    speed = sin(beta) + cos(beta) * ta
    if rightward:
        gap = x_new - pos.x - pos.y * ta
    else:
        gap = pos.x - pos.y * ta - x_new
    t = gap / speed
    nxt = Point(pos.x + sign * t * sin(beta), pos.y + t * cos(beta))
    if not covers_interval(nxt, span, alpha):
        raise InvariantViolation(
            f"beta-hedge ray from {pos} at beta={beta} left the cone of {span}"
        )
    return nxt


def simulate(policy, requests, alpha):
    """Run `policy` on the raw request list and return its trajectory."""
    alpha = check_alpha(alpha)
    policy.check(alpha)
    pos = Point(0.0, 0.0)
    l = r = 0.0
    positions = [pos]
    for x in requests:
        x = float(x)
        if l <= x <= r or covers(pos, x, alpha, eps=0.0):
            l, r = min(l, x), max(r, x)
            positions.append(pos)
            continue
        l, r = min(l, x), max(r, x)
        span = Interval(l, r)
        if policy.kind is PolicyKind.STRAIGHT_UP:
            pos = _straight_up_step(pos, span, alpha)
        elif policy.kind is PolicyKind.GREEDY:
            pos = closest_point_on_cone(pos, span, alpha)
        else:
            pos = _beta_hedge_step(pos, x, span, alpha, policy.beta)
        positions.append(pos)
    return Trajectory(tuple(positions), tuple(float(x) for x in requests))


def greedy_telescoped_length(requests, alpha):
    """Length of the apex-to-apex path T_0, T_1, ..., T_n.

    The path folds onto a single segment from the last extreme request to
    the final apex, which equals Greedy's cost when alpha <= pi/4.
    """
    span = Interval.spanning(requests)
    if span.l == span.r:
        return 0.0
    last = next(float(x) for x in reversed(requests) if float(x) in (span.l, span.r))
    t = apex(span, alpha)
    return float(np.hypot(t.x - last, t.y))


def good_sequences(r, depth, interior=5):
    """Every good request order over {-1, r} plus an interior grid.

    Sequences end with span exactly ``[-1, r]`` and each request widens the
    span.  The interior grid holds `interior` evenly spaced points strictly
    between -1 and r (points numerically at the origin are dropped).
    """
    values = {-1.0, float(r)} if r > 0 else {-1.0}
    values.update(float(v) for v in np.linspace(-1.0, r, interior + 2)[1:-1] if abs(v) > 1e-12)
    neg = sorted((v for v in values if v < 0), reverse=True)
    pos = sorted(v for v in values if v > 0)

    def extend(seq, l, rr):
        if l == -1.0 and rr == (r if r > 0 else 0.0):
            yield tuple(seq)
        if len(seq) == depth:
            return
        for v in itertools.chain((v for v in neg if v < l), (v for v in pos if v > rr)):
            seq.append(v)
            yield from extend(seq, min(l, v), max(rr, v))
            seq.pop()

    yield from extend([], 0.0, 0.0)


def worst_case(policy, alpha, r, depth=4):
    """Costliest good sequence for `policy` with parameter r (brute force)."""
    if not (0.0 <= r <= 1.0):
        raise ValueError(f"r={r!r} must lie in [0, 1]")
    if depth > 8:
        raise ValueError("depth is capped at 8")
    best, arg = -np.inf, None
    for seq in good_sequences(r, depth):
        c = simulate(policy, seq, alpha).cost
        if c > best:
            best, arg = c, seq
    return best, arg


def worst_case_cost(policy, alpha, r, depth=4):
    return worst_case(policy, alpha, r, depth)[0]


def coverage_holds(trajectory, alpha, eps=EPS_GEO):
    """Each position sees every request issued up to its round."""
    l = r = 0.0
    for pos, x in zip(trajectory.positions[1:], trajectory.requests):
        l, r = min(l, x), max(r, x)
        if not covers_interval(pos, (l, r), alpha, eps):
            return False
    return True
