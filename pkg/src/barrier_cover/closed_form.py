"""Analytic costs and competitive ratios.

Functions taking angles accept floats or numpy arrays unless noted.  The
hedge analysis uses the shorthands

    A  = 2 tan(beta) / (tan(alpha) + tan(beta))
    B  = 2 cos(2 alpha)
    r0 = (2A - B) / (2 - AB)          (stationary point of the ratio in r)
"""

from dataclasses import dataclass
from math import pi

import numpy as np
from scipy.optimize import bisect

ALGORITHMS = ("straight-up", "greedy", "beta-hedge")


@dataclass(frozen=True)
class RatioReport:
    alpha: float
    algorithm: str
    beta: float
    worst_r: float
    ratio: float

    def as_dict(self):
        return {
            "alpha": self.alpha,
            "algorithm": self.algorithm,
            "beta": self.beta,
            "worst_r": self.worst_r,
            "ratio": self.ratio,
        }


@dataclass(frozen=True)
class HedgeParams:
    A: float
    B: float
    r0: float
    t_alpha: float


def su_ratio(alpha):
    alpha = np.asarray(alpha, dtype=float)
    out = np.where(alpha <= pi / 4, 2 * np.cos(alpha), 1 / np.sin(alpha))
    return out[()]


def greedy_ratio(alpha):
    alpha = np.asarray(alpha, dtype=float)
    out = np.where(
        alpha <= pi / 4,
        1 / np.cos(alpha),
        (1 + 2 * np.cos(alpha) ** 2) * np.sin(alpha),
    )
    return out[()]


def straight_up_cost(alpha):
    return 1 / np.tan(alpha)


def beta_hedge_cost(alpha, r, beta):
    """Path length of Beta-Hedge on the two-request instance (r, then -1)."""
    ta, tb = np.tan(alpha), np.tan(beta)
    return (ta + (1 + 2 * r) * tb) / ((ta + tb) ** 2 * np.cos(beta))


def hedge_A(alpha, beta):
    ta, tb = np.tan(alpha), np.tan(beta)
    return 2 * tb / (ta + tb)


def hedge_B(alpha):
    return 2 * np.cos(2 * alpha)


def r0(alpha, beta):
    A, B = hedge_A(alpha, beta), hedge_B(alpha)
    return (2 * A - B) / (2 - A * B)


def t_alpha(alpha):
    """Threshold on beta below which r0 <= 0 (meaningful for alpha <= pi/4)."""
    return np.arctan(
        (np.sin(3 * alpha) - np.sin(alpha)) / (3 * np.cos(alpha) - np.cos(3 * alpha))
    )


def hedge_params(alpha, beta):
    return HedgeParams(
        A=float(hedge_A(alpha, beta)),
        B=float(hedge_B(alpha)),
        r0=float(r0(alpha, beta)),
        t_alpha=float(t_alpha(alpha)),
    )


def _prefactor(alpha, beta):
    return 1 / (np.cos(beta) * (np.tan(alpha) + np.tan(beta)))


def _root_quad(alpha, r):
    # sqrt(1 + r^2 + B r), written to avoid cancellation as alpha -> pi/2
    return np.sqrt((r + np.cos(2 * alpha)) ** 2 + np.sin(2 * alpha) ** 2)


def f1(alpha, beta, r):
    """Beta-Hedge cost over the apex-branch optimum."""
    A = hedge_A(alpha, beta)
    return 2 * np.sin(alpha) * _prefactor(alpha, beta) * (1 + A * r) / _root_quad(alpha, r)


def f2(alpha, beta, r):
    """Beta-Hedge cost over the perpendicular-edge optimum cos(alpha)."""
    A = hedge_A(alpha, beta)
    return _prefactor(alpha, beta) * (1 + A * r) / np.cos(alpha)


def g_second_derivative(alpha, beta, r):
    """d^2/dr^2 of (1 + A r) / sqrt(1 + r^2 + B r)."""
    A, B = hedge_A(alpha, beta), hedge_B(alpha)
    num = -4 * A * B + 3 * B**2 - 4 + (-A * B**2 - 12 * A + 8 * B) * r + (8 - 4 * A * B) * r**2
    return num / (4 * _root_quad(alpha, r) ** 5)


def r_range(alpha):
    """Adversary's effective range of r for the hedge ratio."""
    return max(0.0, -float(np.cos(2 * alpha))), 1.0


def beta0(alpha):
    """Ratio-minimizing hedge angle."""
    alpha = float(alpha)
    if alpha <= pi / 6:
        return alpha
    if alpha >= pi / 3:
        return 0.0
    c4 = np.cos(4 * alpha)
    arg = (-2 * c4 + np.cos(6 * alpha) + 2) / (3 - 2 * c4)
    return float(0.5 * np.arccos(np.clip(arg, -1.0, 1.0)))


def worst_r_closed_form(alpha, beta):
    """r0 clamped into the adversary's range."""
    lo, hi = r_range(alpha)
    return float(np.clip(r0(alpha, beta), lo, hi))


def hedge_ratio_for_beta(alpha, beta):
    """Competitive ratio of Beta-Hedge at an arbitrary beta in [0, alpha].

    The ratio in r is unimodal with its peak at r0, so the constrained
    maximum sits at r0 clamped into the adversary's range.
    """
    if not (0.0 <= beta <= alpha):
        raise ValueError(f"beta={beta!r} must lie in [0, alpha={alpha!r}]")
    r = worst_r_closed_form(alpha, beta)
    return RatioReport(float(alpha), "beta-hedge", float(beta), r, float(f1(alpha, beta, r)))


def beta_hedge_ratio(alpha):
    """Ratio achieved by the optimal hedge angle beta0(alpha)."""
    alpha = float(alpha)
    b = beta0(alpha)
    if alpha < pi / 6:
        return RatioReport(alpha, "beta-hedge", b, 1.0, float(1 / np.cos(alpha)))
    if alpha > pi / 3:
        return RatioReport(alpha, "beta-hedge", b, float(-np.cos(2 * alpha)), float(1 / np.sin(alpha)))
    rr = float(r0(alpha, b))
    return RatioReport(alpha, "beta-hedge", b, rr, float(f1(alpha, b, rr)))


def ratio_report(alpha, algorithm, beta=None):
    alpha = float(alpha)
    if algorithm == "straight-up":
        return RatioReport(alpha, algorithm, 0.0, 0.0, float(su_ratio(alpha)))
    if algorithm == "greedy":
        return RatioReport(alpha, algorithm, None, 1.0, float(greedy_ratio(alpha)))
    if algorithm == "beta-hedge":
        if beta is None:
            return beta_hedge_ratio(alpha)
        return hedge_ratio_for_beta(alpha, float(beta))
    raise ValueError(f"unknown algorithm {algorithm!r}; choose from {', '.join(ALGORITHMS)}")


def small_beta_floor(alpha):
    """Lower bound on the hedge ratio when beta <= t(alpha)."""
    return 0.5 * np.sqrt(6 - 2 * np.cos(4 * alpha))


# -- lower bound -------------------------------------------------------------

def _check_lb_alpha(alpha):
    if not (0.0 < alpha <= pi / 4):
        raise ValueError(f"the lower bound is stated for 0 < alpha <= pi/4, got alpha={alpha!r}")


def s_quartic(s, alpha):
    """Numerator of d/ds of the adversary's bound; its root >= 1 is s*."""
    # = s^4 + 2 s^3 cos(4 alpha) - 2 s - 1, expanded around s = 1
    return (s - 1) * (s + 1) ** 3 - 4 * s**3 * np.sin(2 * alpha) ** 2


def rho_bound(s, alpha):
    """Smallest rho MaxHedge can sustain against ratio s."""
    # 1 - cos(4 alpha) = 2 sin^2(2 alpha); kept in that form for small alpha
    s2 = np.sin(2 * alpha) ** 2
    return s * (1 + s) * np.sqrt(2 * s2) / np.sqrt(2 * (s * s - 1) ** 2 + 8 * s * s * s2)


def s_star(alpha):
    alpha = float(alpha)
    _check_lb_alpha(alpha)
    if s_quartic(1.0, alpha) >= 0:
        return 1.0
    return float(bisect(s_quartic, 1.0, 10.0, args=(alpha,), xtol=1e-13, rtol=4 * np.finfo(float).eps, maxiter=200))


def s_star_radical(alpha):
    """Explicit nested-radical root of the quartic.

    Loses accuracy as alpha -> 0 (cancellation in h); kept as a cross-check.
    """
    alpha = float(alpha)
    _check_lb_alpha(alpha)
    c = np.cos(4 * alpha)
    sin2 = np.sin(2 * alpha) ** 2
    cb2 = np.cbrt(2.0)
    h = np.cbrt(-108 * c**2 + np.sqrt((108 - 108 * c**2) ** 2 - 4 * (12 * c - 12) ** 3) + 108)
    k = c**2 - 8 * cb2 * sin2 / h + h / (3 * cb2)
    inner = 2 * c**2 + 8 * cb2 * sin2 / h + (16 - 8 * c**3) / (4 * np.sqrt(k)) - h / (3 * cb2)
    return float(-0.5 * c + 0.5 * np.sqrt(k) + 0.5 * np.sqrt(inner))


def rho_star(alpha):
    return float(rho_bound(s_star(alpha), float(alpha)))
