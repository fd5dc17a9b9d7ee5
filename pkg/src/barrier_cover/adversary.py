"""Lower-bound machinery: the alternating geometric adversary and MaxHedge.

The adversary issues x_i = 2(-s)^(i-1).  From round 2 on, every apex T_i,
optimum o_i and budget scales by s per round with the x-coordinate
mirrored, so a single round in the frame (T_2, T_3, T_4) describes all
later rounds.
"""

from dataclasses import dataclass, field
from enum import Enum
from math import pi, sin, sqrt, tan

import numpy as np

from .closed_form import rho_bound
from .geometry import Interval, Point, covers_interval

# relative slack on a quadratic's discriminant before calling it negative
DISC_RTOL = 1e-12


def _check(alpha, s):
    if not (0.0 < alpha <= pi / 4):
        raise ValueError(f"the adversary is defined for 0 < alpha <= pi/4, got alpha={alpha!r}")
    if not s > 1.0:
        raise ValueError(f"growth factor s={s!r} must exceed 1")


def adversary_requests(s, n):
    return [2.0 * (-s) ** (i - 1) for i in range(1, n + 1)]


def apex_T(s, alpha, i):
    """Apex of the cone of the first i adversarial requests."""
    if i < 1:
        raise ValueError("rounds are numbered from 1")
    c = 1.0 / tan(alpha)
    if i == 1:
        return Point(1.0, c)
    return Point((-s) ** (i - 2) * (1 - s), s ** (i - 2) * (1 + s) * c)


def opt_o(s, alpha, i):
    """Offline optimum on the first i adversarial requests (o_0 = 0)."""
    if i == 0:
        return 0.0
    if i == 1:
        # span [0, 2]: the apex (1, cot alpha) is nearest for alpha <= pi/4
        return 1.0 / sin(alpha)
    return s ** (i - 2) * _o_scaled(s, alpha)


def _o_scaled(s, alpha):
    # o_i / s^(i-2), the same for every i >= 2
    return sqrt((1 + s) ** 2 / sin(alpha) ** 2 - 4 * s)


def _scale(s, i):
    """s^(i-2) for i >= 2, else 1; inf once it leaves the float range."""
    try:
        return s ** max(i - 2, 0)
    except OverflowError:
        return float("inf")


def _apex_scaled(s, alpha, i):
    """T_i / s^(i-2), which only alternates in sign from round 2 on."""
    if i < 2:
        return apex_T(s, alpha, i)
    sign = 1.0 if i % 2 == 0 else -1.0
    return Point(sign * (1 - s), (1 + s) / tan(alpha))


def _line_circle(base, direction, center, radius, larger=True):
    """Parameter t where base + t*direction meets the circle, or None.

    Returns the larger root when `larger`, else the smaller one.
    """
    # t is scale-free; rescale so late rounds (lengths ~ s^i) don't overflow
    k = max(abs(radius), abs(direction[0]), abs(direction[1]), 1e-300)
    bx, by = (base[0] - center[0]) / k, (base[1] - center[1]) / k
    dx, dy = direction[0] / k, direction[1] / k
    radius = radius / k
    qa = dx * dx + dy * dy
    qb = 2 * (bx * dx + by * dy)
    qc = bx * bx + by * by - radius * radius
    disc = qb * qb - 4 * qa * qc
    if disc < 0:
        if disc < -DISC_RTOL * (qb * qb + abs(4 * qa * qc)):
            return None
        disc = 0.0
    root = sqrt(disc)
    return (-qb + root) / (2 * qa) if larger else (-qb - root) / (2 * qa)


class Status(Enum):
    SUCCEEDED = "succeeded"
    FAILED = "failed"
    INVALID = "invalid"


@dataclass
class MaxHedgeOutcome:
    status: Status
    round: int = None  # round of failure / invalidity
    z_trace: list = field(default_factory=list)  # (i, z_i, Z_i)
    cost_trace: list = field(default_factory=list)
    budgets: list = field(default_factory=list)

    @property
    def succeeded(self):
        return self.status is Status.SUCCEEDED

    def describe(self):
        if self.succeeded:
            return f"succeeded for {len(self.z_trace)} rounds"
        return f"{self.status.value} at round {self.round}"


def max_hedge_run(alpha, s, rho, n_rounds, z2=None):
    """Run MaxHedge with target ratio `rho` against the s-adversary.

    Each round spends exactly rho*(o_i - o_(i-1)) and lands on the edge
    T_i -> T_(i+1) as far toward T_(i+1) as the budget allows.  With `z2`
    the run is seeded at Z_2 = T_2 + z2 (T_3 - T_2) (cost rho*o_2) and
    continues from round 3.
    """
    _check(alpha, s)
    if rho < 1:
        raise ValueError(f"rho={rho!r} must be at least 1")
    if n_rounds < 2:
        raise ValueError("need at least two rounds")
    out = MaxHedgeOutcome(Status.SUCCEEDED)
    # Round i is computed in units of s^(i-2) so that the geometry stays O(1)
    # however long the run; absolute values are restored only for the traces.
    o_hat = _o_scaled(s, alpha)

    def o_in_units(j, i):
        # o_j / s^(i-2) for j in {i-1, i}
        if j <= 1:
            return opt_o(s, alpha, j) / _scale(s, i)
        return o_hat / (s if j < i else 1.0)

    if z2 is None:
        prev, first = Point(0.0, 0.0), 1
    else:
        t2, t3 = apex_T(s, alpha, 2), apex_T(s, alpha, 3)
        prev = Point(t2.x + z2 * (t3.x - t2.x), t2.y + z2 * (t3.y - t2.y))
        first = 3
        out.z_trace.append((2, float(z2), prev))
        out.cost_trace.append(rho * opt_o(s, alpha, 2))
        prev = Point(prev.x / s, prev.y / s)  # into round-3 units
    for i in range(first, n_rounds + 1):
        step = s if i >= 2 else 1.0  # s^(i-1) / s^(i-2), floored at round 1
        ti = _apex_scaled(s, alpha, i)
        tn = _apex_scaled(s, alpha, i + 1)
        tn = Point(step * tn.x, step * tn.y) if i >= 2 else tn
        budget = rho * (o_in_units(i, i) - o_in_units(i - 1, i))
        scale = _scale(s, i)
        out.budgets.append(budget * scale)
        z = _line_circle(ti, (tn.x - ti.x, tn.y - ti.y), prev, budget)
        if z is None or z < 0:
            out.status, out.round = Status.FAILED, i
            return out
        zi = Point(ti.x + z * (tn.x - ti.x), ti.y + z * (tn.y - ti.y))
        out.z_trace.append((i, float(z), Point(zi.x * scale, zi.y * scale)))
        out.cost_trace.append(rho * o_in_units(i, i) * scale)
        if zi.x * ti.x < 0:
            out.status, out.round = Status.INVALID, i
            return out
        # carry Z_i into the next round's units
        nxt = s if i >= 2 else 1.0
        prev = Point(zi.x / nxt, zi.y / nxt)
    return out


@dataclass
class DeadZone:
    """Result of the dead-zone iteration d_1, d_2, ...

    `limit` is d_inf when the sequence converges and None when it diverges
    (runs past the y-axis, or the budget circle misses the previous edge).
    """

    limit: float
    sequence: list
    reason: str

    @property
    def converged(self):
        return self.limit is not None


def _frame(alpha, s):
    t2, t3, t4 = (np.array(apex_T(s, alpha, i)) for i in (2, 3, 4))
    return t2, t3, t4


def dead_zone_step(alpha, s, rho, d):
    """One refinement: first point on T_2->T_3 within budget of D_3(d)."""
    t2, t3, t4 = _frame(alpha, s)
    budget = rho * (opt_o(s, alpha, 3) - opt_o(s, alpha, 2))
    target = t3 + d * (t4 - t3)
    t = _line_circle(t2, t3 - t2, target, budget, larger=False)
    # a negative root means T_2 itself is in reach: no dead zone
    return None if t is None else max(t, 0.0)


def _fixed_points(alpha, s, rho):
    """Roots of |D_2(d) D_3(d)| = budget, ascending (empty if none)."""
    t2, t3, t4 = _frame(alpha, s)
    budget = rho * (opt_o(s, alpha, 3) - opt_o(s, alpha, 2))
    # D_3(d) - D_2(d) = (t3 - t2) + d * ((t4 - t3) - (t3 - t2))
    base, slope = t3 - t2, (t4 - t3) - (t3 - t2)
    qa = slope @ slope
    qb = 2 * base @ slope
    qc = base @ base - budget**2
    disc = qb * qb - 4 * qa * qc
    if disc < 0:
        if disc < -DISC_RTOL * (qb * qb + abs(4 * qa * qc)):
            return []
        disc = 0.0
    root = sqrt(disc)
    return sorted([(-qb - root) / (2 * qa), (-qb + root) / (2 * qa)])


def dead_zone_fixed_point(alpha, s, rho, max_iter=10_000, tol=1e-12):
    """Iterate the dead-zone boundaries d_j from d_0 = 0.

    The step map is increasing, so d_j climbs monotonically to the smallest
    fixed point above it, if there is one.  Near the critical rho the climb
    is only O(1/j); when `max_iter` runs out we finish exactly with the
    smallest root of the fixed-point equation that lies above d_j.
    """
    _check(alpha, s)
    axis = 1.0 / (1.0 + s)  # past this fraction of T_2->T_3, Z crosses the y-axis
    d, seq = 0.0, []
    for _ in range(max_iter):
        nxt = dead_zone_step(alpha, s, rho, d)
        if nxt is None:
            return DeadZone(None, seq, "budget circle misses the edge")
        seq.append(nxt)
        if nxt > axis:
            return DeadZone(None, seq, "dead zone reaches the y-axis")
        if abs(nxt - d) < tol:
            return DeadZone(nxt, seq, "converged")
        d = nxt
    roots = [x for x in _fixed_points(alpha, s, rho) if x >= d - 1e-9]
    if roots and roots[0] <= axis:
        return DeadZone(roots[0], seq, "converged (fixed-point root)")
    return DeadZone(None, seq, "no fixed point ahead of the iteration")


# d_inf repels the forward map, so seed a hair above it
SEED_NUDGE = 1e-9


def succeeds(alpha, s, rho, n_rounds=200):
    """MaxHedge survives `n_rounds` when seeded at the dead-zone boundary.

    An INVALID run (Z_i overshoots the y-axis) still counts: the adversary
    never caught it, and a real algorithm could simply stop short.
    """
    dz = dead_zone_fixed_point(alpha, s, rho)
    if not dz.converged:
        return False
    z2 = min(dz.limit + SEED_NUDGE, 1.0 / (1.0 + s))
    return max_hedge_run(alpha, s, rho, n_rounds, z2=z2).status is not Status.FAILED


def min_success_rho(alpha, s, lo=1.0, hi=2.0, tol=1e-10, n_rounds=200):
    """Smallest rho in [lo, hi] for which MaxHedge survives (bisection)."""
    _check(alpha, s)
    if succeeds(alpha, s, lo, n_rounds):
        return lo
    if not succeeds(alpha, s, hi, n_rounds):
        raise RuntimeError(f"MaxHedge does not succeed at rho={hi} for alpha={alpha}, s={s}")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if succeeds(alpha, s, mid, n_rounds):
            hi = mid
        else:
            lo = mid
    return hi


def self_similarity_gap(outcome, tail=10):
    """Largest |z_(i+1) - z_i| over the last `tail` rounds of a run."""
    zs = [z for i, z, _ in outcome.z_trace if i >= 3]
    if len(zs) < 2:
        return float("inf")
    return float(np.max(np.abs(np.diff(zs[-(tail + 1):]))))


def z_points_feasible(outcome, alpha, s, eps=1e-9):
    """Every Z_i sees the first i adversarial requests (relative slack)."""
    xs = adversary_requests(s, max((i for i, _, _ in outcome.z_trace), default=0))
    for i, _, zi in outcome.z_trace:
        span = Interval.spanning(xs[:i])
        scale = max(1.0, abs(span.l), abs(span.r))
        if not covers_interval(zi, span, alpha, eps * scale):
            return False
    return True


def classify_rounds(positions, outcome):
    """Label each round of an external trajectory as cautious or aggressive.

    Round i is cautious when P_i lies in the closed disk around Z_(i-1)
    with radius |Z_(i-1) Z_i|; `positions[0]` is the origin.
    """
    zs = {0: (0.0, 0.0)}
    zs.update({i: zi for i, _, zi in outcome.z_trace})
    labels = []
    for i in range(1, len(positions)):
        if i not in zs or i - 1 not in zs:
            break
        radius = np.hypot(zs[i][0] - zs[i - 1][0], zs[i][1] - zs[i - 1][1])
        dist = np.hypot(positions[i][0] - zs[i - 1][0], positions[i][1] - zs[i - 1][1])
        labels.append("cautious" if dist <= radius * (1 + 1e-12) else "aggressive")
    return labels


__all__ = [
    "DeadZone",
    "MaxHedgeOutcome",
    "Status",
    "adversary_requests",
    "apex_T",
    "classify_rounds",
    "dead_zone_fixed_point",
    "dead_zone_step",
    "max_hedge_run",
    "min_success_rho",
    "opt_o",
    "rho_bound",
    "self_similarity_gap",
    "succeeds",
    "z_points_feasible",
]
