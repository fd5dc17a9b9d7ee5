"""Online barrier coverage by a drone with a fixed field of view.

Simulation of the Straight-Up, Greedy and Beta-Hedge policies, the offline
optimum, closed-form competitive ratios, and the MaxHedge lower bound.
"""

from .adversary import dead_zone_fixed_point, max_hedge_run, min_success_rho
from .closed_form import beta0, beta_hedge_ratio, ratio_report, rho_star, s_star
from .geometry import GoodInstance, Interval, Point, apex, closest_point_on_cone, covers, normalize
from .offline import opt_cost, opt_cost_geometric
from .online import Policy, Trajectory, simulate
from .verify import GridSpec, best_beta, worst_r

__all__ = [
    "GoodInstance",
    "GridSpec",
    "Interval",
    "Point",
    "Policy",
    "Trajectory",
    "apex",
    "best_beta",
    "beta0",
    "beta_hedge_ratio",
    "closest_point_on_cone",
    "covers",
    "dead_zone_fixed_point",
    "max_hedge_run",
    "min_success_rho",
    "normalize",
    "opt_cost",
    "opt_cost_geometric",
    "ratio_report",
    "rho_star",
    "s_star",
    "simulate",
    "worst_r",
]
