"""
Beta-Hedge: picking the flight angle
====================================

Beta-Hedge always flies at angle beta from vertical toward the new request.
beta = 0 is Straight-Up; beta = alpha is Greedy (for alpha <= pi/4).
"""

from math import pi

import numpy as np

from barrier_cover import Policy, best_beta, beta0, simulate, worst_r
from barrier_cover.closed_form import beta_hedge_cost, beta_hedge_ratio, r0, t_alpha
from barrier_cover.verify import certify_convexity, convexity_profile

alpha = pi / 4
b = beta0(alpha)
print("beta0(pi/4) =", b, "= pi /", pi / b)

# The adversary's best reply: one request at r, then one at -1.
r_hat, ratio_hat = worst_r(alpha, b)
print("worst r on a grid:", r_hat, "ratio", ratio_hat)
print("r0 formula:", r0(alpha, b))

# Simulation agrees with the two-request cost formula.
cost = simulate(Policy.beta_hedge(b), [0.5, -1.0], alpha).cost
print("simulated", cost, "formula", beta_hedge_cost(alpha, 0.5, b))

# A grid search over beta lands on beta0 without using its formula.
print("grid argmin over beta:", best_beta(alpha))

# Below t(alpha) the adversary's reply r0 turns negative.
print("t(pi/4) =", t_alpha(alpha))

# The ratio is convex in beta with a second derivative above 0.7.
betas, d2 = convexity_profile(alpha)
print("min second difference:", d2.min(), "at beta", betas[np.argmin(d2)])
print("min over several alphas:", min(certify_convexity(a) for a in np.linspace(0.2, 1.37, 10)))

for a in (pi / 8, pi / 6, pi / 5, pi / 4, pi / 3.5, pi / 3):
    rep = beta_hedge_ratio(a)
    print(f"alpha=pi/{pi / a:.2f}  beta0={rep.beta:.4f}  worst r={rep.worst_r:.4f}  ratio={rep.ratio:.4f}")
