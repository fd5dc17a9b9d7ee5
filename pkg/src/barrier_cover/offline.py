"""Optimal offline cost: fly straight to the nearest point of the final cone."""

from dataclasses import dataclass
from enum import Enum
from math import cos, pi, sqrt, tan

from .geometry import Interval, Point, check_alpha, closest_point_on_cone, distance


class OptBranch(Enum):
    APEX = "apex"
    PERPENDICULAR_EDGE = "perpendicular-edge"


@dataclass(frozen=True)
class OptCost:
    value: float
    branch: OptBranch

    def __float__(self):
        return self.value


def apex_branch_applies(alpha, r):
    """True when the apex is the nearest feasible point to the origin.

    For alpha > pi/4 the apex stops being nearest once r drops below
    -cos(2 alpha); at alpha = pi/4 that threshold is 0, so the apex wins
    for every r in [0, 1].
    """
    return alpha <= pi / 4 or r >= -cos(2 * alpha)


def opt_cost(alpha, r):
    """Offline optimum for a good instance spanning ``[-1, r]``."""
    check_alpha(alpha)
    if not (0.0 <= r <= 1.0):
        raise ValueError(f"r={r!r} must lie in [0, 1]")
    if apex_branch_applies(alpha, r):
        value = 0.5 * sqrt((1 + r) ** 2 / tan(alpha) ** 2 + (1 - r) ** 2)
        return OptCost(value, OptBranch.APEX)
    return OptCost(cos(alpha), OptBranch.PERPENDICULAR_EDGE)


def opt_cost_geometric(inst, alpha):
    """Same quantity computed from the cone geometry alone.

    `inst` may be a GoodInstance, an Interval, or any request list; the
    span always includes the origin.  Works in raw (unnormalized) units.
    """
    check_alpha(alpha)
    if isinstance(inst, Interval):
        span = inst
    elif hasattr(inst, "span"):
        if inst.is_trivial:
            return 0.0
        span = inst.span
    else:
        span = Interval.spanning(inst)
    if span.l == span.r:
        return 0.0
    origin = Point(0.0, 0.0)
    return distance(origin, closest_point_on_cone(origin, span, alpha))
