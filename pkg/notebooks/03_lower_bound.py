"""
Lower bound: an adversary that alternates sides
===============================================

Requests land at 2, -2s, 2s^2, ...  MaxHedge spends exactly rho times the
growth of OPT each round and moves as far toward the next cone edge as
that budget allows.  If even MaxHedge fails, every algorithm does.
"""

from math import pi, sqrt

from barrier_cover import dead_zone_fixed_point, max_hedge_run, min_success_rho, rho_star, s_star
from barrier_cover.closed_form import rho_bound

alpha = pi / 4
s = s_star(alpha)
print("s* =", s, " (1 + sqrt 2 =", 1 + sqrt(2), ")")
print("rho* =", rho_star(alpha))

# Just above rho* MaxHedge survives; just below it is caught.
for rho in (rho_star(alpha) + 1e-3, rho_star(alpha) - 1e-3):
    print(f"rho={rho:.5f}:", max_hedge_run(alpha, s, rho, 200).describe())

# The dead zone: the part of an edge from which no budgeted continuation survives.
dz = dead_zone_fixed_point(alpha, s, rho_star(alpha))
print("dead zone limit:", dz.limit, "expected", (2 - sqrt(2)) / 4, "|", dz.reason)

# Bisection on rho recovers the closed form for other growth factors too.
for s_ in (1.5, 2.0, 1 + sqrt(2), 3.0):
    print(f"s={s_:.4f}  rho(s)={rho_bound(s_, alpha):.8f}  bisection={min_success_rho(alpha, s_):.8f}")

for k in (1, 2, 3, 4):
    a = k * pi / 16
    print(f"alpha={k}pi/16  s*={s_star(a):.6f}  rho*={rho_star(a):.6f}")
