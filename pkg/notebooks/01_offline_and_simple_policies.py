"""
Offline optimum, Straight-Up and Greedy
=======================================

Requests are points on the x-axis.  The drone starts at the origin and, at
height h, sees everything within h*tan(alpha) of its x-coordinate.
"""

from math import pi

import numpy as np

from barrier_cover import Interval, Policy, closest_point_on_cone, opt_cost, opt_cost_geometric, simulate
from barrier_cover.closed_form import greedy_ratio, su_ratio

alpha = pi / 4

# The offline drone flies straight to the nearest point that sees the
# whole final span.  For alpha <= pi/4 that point is the apex.
span = Interval(-1.0, 0.5)
print("nearest feasible point:", closest_point_on_cone((0, 0), span, alpha))
print("OPT closed form:", opt_cost(alpha, 0.5))
print("OPT from geometry:", opt_cost_geometric(span, alpha))

# For wide views the nearest point slides off the apex onto a cone edge.
print("alpha=pi/3, r=0:", opt_cost(pi / 3, 0.0))

# Straight-Up pays cot(alpha) on every good instance, whatever the order.
for seq in ([-1.0], [0.3, -1.0], [-0.2, 0.9, -1.0]):
    print("straight-up", seq, simulate(Policy.straight_up(), seq, alpha).cost)

# Greedy chases the nearest feasible point.  Right then left is its worst case
# for narrow views.
t = simulate(Policy.greedy(), [1.0, -1.0], alpha)
print("greedy positions:", [tuple(np.round(p, 4)) for p in t.positions], "cost", t.cost)

# Ratio curves.
alphas = np.linspace(0.1, pi / 2 - 0.1, 7)
for a, su, gr in zip(alphas, su_ratio(alphas), greedy_ratio(alphas)):
    print(f"alpha={a:.3f}  straight-up={su:.4f}  greedy={gr:.4f}")
