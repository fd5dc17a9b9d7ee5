"""Planar geometry for a drone covering targets on the x-axis.

A drone at ``(px, py)`` with half angle-of-view ``alpha`` sees the ground
segment ``[px - py*tan(alpha), px + py*tan(alpha)]``.  The set of drone
positions that see a whole interval ``[l, r]`` is an upward cone (the
feasibility cone) whose apex sits above the interval midpoint.
"""

from dataclasses import dataclass
from math import cos, hypot, pi, sin, tan
from typing import NamedTuple, Sequence

EPS_GEO = 1e-9


class Point(NamedTuple):
    x: float
    y: float


class Interval(NamedTuple):
    """Span ``[l, r]`` of the requests seen so far."""

    l: float
    r: float

    @classmethod
    def spanning(cls, xs, origin=True):
        """Smallest interval holding every x in `xs` (and 0 when `origin`)."""
        xs = list(xs)
        if origin:
            xs.append(0.0)
        if not xs:
            raise ValueError("cannot span an empty set of coordinates")
        return cls(float(min(xs)), float(max(xs)))

    @property
    def width(self):
        return self.r - self.l


def check_alpha(alpha):
    """Raise ValueError unless 0 < alpha < pi/2."""
    if not (0.0 < alpha < pi / 2):
        raise ValueError(f"half angle alpha={alpha!r} must satisfy 0 < alpha < pi/2")
    return float(alpha)


def distance(p, q):
    return hypot(p[0] - q[0], p[1] - q[1])


def covers(p, x, alpha, eps=EPS_GEO):
    """True when a drone at `p` sees the ground point `x`."""
    if p[1] < 0:
        raise ValueError(f"drone height must be non-negative, got {p[1]!r}")
    return abs(x - p[0]) <= p[1] * tan(alpha) + eps


def covers_interval(p, iv, alpha, eps=EPS_GEO):
    return covers(p, iv[0], alpha, eps) and covers(p, iv[1], alpha, eps)


def apex(iv, alpha):
    """Lowest point of the feasibility cone of `iv`.

    The apex sees both endpoints exactly on the boundary of its field of view.
    A degenerate interval ``l == r`` gives the ground point ``(l, 0)``.
    """
    l, r = iv
    if l > r:
        raise ValueError(f"interval endpoints out of order: l={l!r} > r={r!r}")
    return Point(0.5 * (l + r), 0.5 * (r - l) / tan(alpha))


def _project_on_ray(p, origin, direction):
    t = max(0.0, (p[0] - origin[0]) * direction[0] + (p[1] - origin[1]) * direction[1])
    return Point(origin[0] + t * direction[0], origin[1] + t * direction[1])


def closest_point_on_cone(p, iv, alpha):
    """Euclidean-nearest point of the feasibility cone of `iv` to `p`.

    Points already inside the cone are returned unchanged.  Otherwise the
    answer lies on one of the two boundary rays leaving the apex, so we
    project onto both (clamped at the apex) and keep the nearer foot.
    """
    if p[1] < 0:
        raise ValueError(f"point must lie in the upper half-plane, got y={p[1]!r}")
    if covers_interval(p, iv, alpha, eps=0.0):
        return Point(float(p[0]), float(p[1]))
    t = apex(iv, alpha)
    # ray bounded by the right endpoint runs up-left, the other up-right
    left_edge = _project_on_ray(p, t, (-sin(alpha), cos(alpha)))
    right_edge = _project_on_ray(p, t, (sin(alpha), cos(alpha)))
    if distance(p, left_edge) <= distance(p, right_edge):
        return left_edge
    return right_edge


@dataclass(frozen=True)
class GoodInstance:
    """Normalized request sequence.

    Every request strictly widens the span seen so far, the leftmost
    request is -1 and the rightmost coordinate ``r`` lies in ``[0, 1]``.
    The empty instance stands for an input that never leaves the origin.
    """

    xs: tuple = ()

    def __post_init__(self):
        xs = tuple(float(x) for x in self.xs)
        object.__setattr__(self, "xs", xs)
        l = r = 0.0
        for i, x in enumerate(xs):
            if l <= x <= r:
                raise ValueError(f"request {i} at x={x!r} is redundant for span [{l}, {r}]")
            l, r = min(l, x), max(r, x)
        if xs and (abs(l + 1.0) > 1e-12 or r > 1.0 + 1e-12):
            raise ValueError(f"instance spans [{l}, {r}], expected leftmost -1 and r <= 1")

    @property
    def is_trivial(self):
        return not self.xs

    @property
    def leftmost(self):
        return min(self.xs, default=0.0)

    @property
    def r(self):
        return max(max(self.xs, default=0.0), 0.0)

    @property
    def span(self):
        return Interval(self.leftmost, self.r)

    def __len__(self):
        return len(self.xs)


def drop_redundant(raw: Sequence[float]):
    """Keep only the requests that widen the span around the origin."""
    l = r = 0.0
    kept = []
    for x in raw:
        x = float(x)
        if x < l or x > r:
            kept.append(x)
            l, r = min(l, x), max(r, x)
    return kept


def normalize(raw: Sequence[float]):
    """Turn a raw request list into a good instance.

    Returns ``(instance, factor)`` where ``factor`` is the (signed) scale
    applied to the raw coordinates: ``xs = factor * kept``.  Costs of the
    normalized instance map back to raw units by dividing by ``abs(factor)``.
    An all-zero input gives the trivial instance with ``factor = 0``.
    """
    kept = drop_redundant(raw)
    if not kept:
        return GoodInstance(()), 0.0
    l, r = min(min(kept), 0.0), max(max(kept), 0.0)
    # ties keep the orientation
    factor = -1.0 / r if r > -l else 1.0 / -l
    xs = [factor * x for x in kept]
    xs = [-1.0 if abs(x + 1.0) < 1e-15 else x for x in xs]
    return GoodInstance(tuple(xs)), factor
