"""Brute-force and grid oracles for the closed forms.

Maximizations over r and minimizations over beta use a plain grid with
nested refinement (10x zoom per pass) rather than a derivative-based
optimizer: the objectives have seams where the optimum switches branch.
"""

import os
import time
from dataclasses import dataclass
from math import pi

import numpy as np

from . import closed_form as cf
from .adversary import dead_zone_fixed_point, max_hedge_run, min_success_rho
from .geometry import Interval
from .offline import opt_cost, opt_cost_geometric
from .online import Policy, PolicyKind, greedy_telescoped_length, simulate

DEFAULT_SEED = 0xC0FFEE


def default_seed():
    env = os.environ.get("BARRIER_COVER_SEED")
    return int(env, 0) if env else DEFAULT_SEED


@dataclass(frozen=True)
class GridSpec:
    lo: float
    hi: float
    points: int = 201
    refine_rounds: int = 6

    def __post_init__(self):
        if self.points < 3:
            raise ValueError(f"a grid needs at least 3 points, got {self.points}")
        if not self.hi > self.lo:
            raise ValueError(f"empty grid range [{self.lo}, {self.hi}]")
        if self.refine_rounds < 0:
            raise ValueError("refine_rounds must be non-negative")


def _refine(fn, lo, hi, points, rounds, maximize):
    """Row-wise grid search with 10x zoom per pass.

    `lo` and `hi` are arrays (one search window per row); `fn` maps an
    (n_rows, points) array of abscissae to objective values.  Returns the
    per-row best abscissa and value.
    """
    lo = np.asarray(lo, dtype=float)
    hi = np.asarray(hi, dtype=float)
    a, b = lo.copy(), hi.copy()
    u = np.linspace(0.0, 1.0, points)
    rows = np.arange(lo.size)
    for _ in range(rounds + 1):
        x = a[:, None] + (b - a)[:, None] * u
        v = fn(x)
        k = np.argmax(v, axis=1) if maximize else np.argmin(v, axis=1)
        best, val = x[rows, k], v[rows, k]
        half = (b - a) / 20
        a = np.maximum(lo, best - half)
        b = np.minimum(hi, best + half)
    return best, val


def _opt_vec(alpha, r):
    apex = 0.5 * np.sqrt((1 + r) ** 2 / np.tan(alpha) ** 2 + (1 - r) ** 2)
    return np.where((alpha <= pi / 4) | (r >= -np.cos(2 * alpha)), apex, np.cos(alpha))


def _hedge_ratio_vec(alpha, beta, r):
    return cf.beta_hedge_cost(alpha, r, beta) / _opt_vec(alpha, r)


def _check_beta(alpha, beta):
    if not (0.0 <= beta <= alpha):
        raise ValueError(f"beta={beta!r} must lie in [0, alpha={alpha!r}]")


def worst_r(alpha, beta, grid=None):
    """Grid argmax over r of Beta-Hedge cost / OPT; returns (r_hat, ratio_hat)."""
    _check_beta(alpha, beta)
    lo, hi = cf.r_range(alpha)
    grid = grid or GridSpec(lo, hi)
    r, v = _refine(
        lambda x: _hedge_ratio_vec(alpha, beta, x),
        [grid.lo], [grid.hi], grid.points, grid.refine_rounds, maximize=True,
    )
    return float(r[0]), float(v[0])


def _worst_r_rows(alpha, betas, points=201, rounds=6):
    lo, hi = cf.r_range(alpha)
    betas = np.asarray(betas, dtype=float)
    n = betas.size
    _, v = _refine(
        lambda x: _hedge_ratio_vec(alpha, betas.reshape(-1, 1), x),
        np.full(n, lo), np.full(n, hi), points, rounds, maximize=True,
    )
    return v


def best_beta(alpha, grid=None, r_points=201, r_rounds=6):
    """Grid argmin over beta in [0, alpha] of the worst-case ratio."""
    alpha = float(alpha)
    grid = grid or GridSpec(0.0, alpha, 201, 4)
    lo, hi = grid.lo, grid.hi
    u = np.linspace(0.0, 1.0, grid.points)
    for _ in range(grid.refine_rounds + 1):
        betas = lo + (hi - lo) * u
        vals = _worst_r_rows(alpha, betas, r_points, r_rounds)
        k = int(np.argmin(vals))
        best, val = betas[k], vals[k]
        half = (hi - lo) / 20
        lo, hi = max(grid.lo, best - half), min(grid.hi, best + half)
    return float(best), float(val)


def greedy_worst_r(alpha, points=101, rounds=5):
    """Grid argmax over r of simulated Greedy cost on (r, -1) over OPT.

    For alpha <= pi/4 this lands on r = 1.  Above pi/4 the maximum moves
    inside (0, 1) and exceeds the value at r = 1.
    """
    policy = Policy.greedy()

    def ratio(r):
        seq = [r, -1.0] if r > 0 else [-1.0]
        return simulate(policy, seq, alpha).cost / opt_cost_geometric(Interval(-1.0, r), alpha)

    vec = np.vectorize(ratio, otypes=[float])
    r, v = _refine(vec, [0.0], [1.0], points, rounds, maximize=True)
    return float(r[0]), float(v[0])


def in_argmax_domain(alpha, beta):
    """(alpha, beta) where r0 is known to be the adversary's best reply."""
    if alpha <= pi / 4 and beta >= cf.t_alpha(alpha) and beta <= alpha:
        return True
    return alpha >= pi / 4 and 0.0 <= beta <= alpha


def certify_r0_is_argmax(alpha, beta, grid=None):
    if not in_argmax_domain(alpha, beta):
        raise ValueError(
            f"(alpha={alpha!r}, beta={beta!r}) is outside the region where r0 is the worst reply"
        )
    r_hat, _ = worst_r(alpha, beta, grid)
    return abs(r_hat - cf.worst_r_closed_form(alpha, beta)) < 1e-4


def convexity_profile(alpha, step=1e-4, margin=0.01):
    """Central second differences of beta -> f1(alpha, beta, r0(alpha, beta))."""
    betas = np.arange(margin, alpha - margin + step / 2, step)
    h = cf.f1(alpha, betas, cf.r0(alpha, betas))
    return betas[1:-1], (h[2:] - 2 * h[1:-1] + h[:-2]) / step**2


def certify_convexity(alpha, step=1e-4, margin=0.01):
    """Smallest second difference of the hedge ratio in beta."""
    _, d2 = convexity_profile(alpha, step, margin)
    return float(d2.min())


# -- simulation vs formula ---------------------------------------------------

def _random_good_order(rng, r, extra):
    """A request order ending with span [-1, r], every request widening it."""
    pts = [-1.0] + ([r] if r > 0 else [])
    pts += list(rng.uniform(-1.0, r, size=extra))
    rng.shuffle(pts)
    l = hi = 0.0
    seq = []
    for x in pts:
        if x < l or x > hi:
            seq.append(float(x))
            l, hi = min(l, x), max(hi, x)
    return seq


def _scale(rng, seq):
    c = rng.uniform(0.25, 4.0) * rng.choice([-1.0, 1.0])
    return [c * x for x in seq], abs(c)


def certify_sim_equals_formula(policy, alpha=None, trials=1000, seed=None):
    """Max |simulated cost - closed-form cost| over random instances.

    Straight-Up and Greedy get random good orders; Beta-Hedge gets its
    two-request worst case (r, then -1).  Instances are randomly rescaled
    and mirrored, and the cost compared in normalized units.
    Without `alpha` (and, for Beta-Hedge, without a policy beta) each trial
    draws its own angle.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    rng = np.random.default_rng(default_seed() if seed is None else seed)
    kind = policy.kind if isinstance(policy, Policy) else PolicyKind(policy)
    worst = 0.0
    for _ in range(trials):
        if alpha is not None:
            a = float(alpha)
        elif kind is PolicyKind.GREEDY:
            a = rng.uniform(0.05, pi / 4)
        else:
            a = rng.uniform(0.05, pi / 2 - 0.05)
        r = rng.uniform(0.0, 1.0)
        if kind is PolicyKind.STRAIGHT_UP:
            seq = _random_good_order(rng, r, int(rng.integers(0, 6)))
            raw, c = _scale(rng, seq)
            got = simulate(Policy.straight_up(), raw, a).cost / c
            want = float(cf.straight_up_cost(a))
        elif kind is PolicyKind.GREEDY:
            if a > pi / 4:
                raise ValueError("the telescoping identity for Greedy needs alpha <= pi/4")
            seq = _random_good_order(rng, r, int(rng.integers(0, 6)))
            raw, c = _scale(rng, seq)
            got = simulate(Policy.greedy(), raw, a).cost / c
            want = greedy_telescoped_length(seq, a)
        else:
            if isinstance(policy, Policy) and policy.beta is not None:
                b = policy.beta
            else:
                b = rng.uniform(0.0, a)
            raw, c = _scale(rng, [r, -1.0] if r > 0 else [-1.0])
            got = simulate(Policy.beta_hedge(b), raw, a).cost / c
            want = float(cf.beta_hedge_cost(a, r, b))
        worst = max(worst, abs(got - want))
    return worst


# -- suite runner ------------------------------------------------------------

@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    value: float
    bound: float
    detail: str = ""

    def line(self):
        tag = "PASS" if self.passed else "FAIL"
        return f"{tag} {self.name}: {self.value:.6g} (bound {self.bound:g}) {self.detail}".rstrip()


def _le(name, value, bound, detail=""):
    return CheckResult(name, bool(value <= bound), float(value), bound, detail)


def _ge(name, value, bound, detail=""):
    return CheckResult(name, bool(value >= bound), float(value), bound, detail)


def check_opt(seed, n=100_000):
    rng = np.random.default_rng(seed)
    alphas = rng.uniform(1e-3, pi / 2 - 1e-3, n)
    rs = rng.uniform(0.0, 1.0, n)
    err = 0.0
    for a, r in zip(alphas, rs):
        closed = opt_cost(a, r).value
        geo = opt_cost_geometric(Interval(-1.0, r), a)
        err = max(err, abs(closed - geo) / max(1.0, closed))
    grid = np.linspace(pi / 4, pi / 2 - 1e-4, 1000)
    seam = 0.0
    for a in grid:
        rr = -np.cos(2 * a)
        apex_side = 0.5 * np.sqrt((1 + rr) ** 2 / np.tan(a) ** 2 + (1 - rr) ** 2)
        seam = max(seam, abs(apex_side - np.cos(a)))
    return [
        _le("opt closed form vs geometry (rel)", err, 1e-9, f"{n} samples"),
        _le("opt branch continuity at r=-cos2a", seam, 1e-12, "1000 alphas"),
    ]


def check_simulation(seed, trials=10_000):
    out = []
    for kind in PolicyKind:
        policy = Policy(kind)
        out.append(_le(f"simulation vs formula [{kind.value}]",
                       certify_sim_equals_formula(policy, None, trials, seed), 1e-9,
                       f"{trials} trials"))
    return out


def check_seam(seed, n=10_000):
    rng = np.random.default_rng(seed)
    a = rng.uniform(pi / 4, pi / 2, n)
    b = rng.uniform(0.0, 1.0, n) * a
    r = -np.cos(2 * a)
    err = float(np.max(np.abs(cf.f1(a, b, r) - cf.f2(a, b, r))))
    return [_le("f1 = f2 at r=-cos2a", err, 1e-12, f"{n} samples")]


def check_properties(seed, n=10_000):
    rng = np.random.default_rng(seed)
    out = []
    # concavity of the ratio in r at r0, over the region where r0 is the reply
    a = rng.uniform(1e-3, pi / 2 - 1e-3, 4 * n)
    b = rng.uniform(0.0, 1.0, 4 * n) * a
    keep = np.array([in_argmax_domain(x, y) for x, y in zip(a, b)])
    a, b = a[keep][:n], b[keep][:n]
    g2 = cf.g_second_derivative(a, b, cf.r0(a, b))
    out.append(_le("g'' at r0", float(np.max(g2)), 1e-12, f"{a.size} samples"))

    conv = min(certify_convexity(x) for x in np.linspace(0.1, pi / 2 - 0.1, 25))
    out.append(_ge("convexity of ratio in beta", conv, 0.7, "25 alphas"))

    grid = np.linspace(1e-3, pi / 4, 500)
    gap = min(cf.beta0(x) - float(cf.t_alpha(x)) for x in grid)
    out.append(_ge("beta0 - t(alpha) on (0, pi/4]", gap, 1e-15, "500 alphas"))

    flips = 0
    for x in grid[grid > 0.01]:
        t = float(cf.t_alpha(x))
        if t <= 1e-6 or t >= x - 1e-6:
            continue
        below, above = cf.r0(x, t - 1e-6), cf.r0(x, t + 1e-6)
        flips += not (below < 0 < above)
    out.append(_le("r0 changes sign at t(alpha)", flips, 0, "count of misses"))

    # the two curves touch as alpha -> 0, so allow a few ulps
    margin = min(cf.beta_hedge_ratio(x).ratio - cf.rho_star(x) for x in grid)
    out.append(_ge("beta-hedge ratio - rho_star", margin, -1e-14, "500 alphas"))
    return out


def check_grids(seed):
    out = []
    for a in (pi / 8, pi / 5, pi / 4, pi / 3.5, pi / 3, 3 * pi / 8):
        b_hat, v_hat = best_beta(a)
        rep = cf.beta_hedge_ratio(a)
        out.append(_le(f"best_beta ratio at alpha={a:.4f}", abs(v_hat - rep.ratio), 1e-6))
        out.append(_le(f"best_beta argmin at alpha={a:.4f}", abs(b_hat - rep.beta), 1e-4))
    for a, b in ((pi / 4, cf.beta0(pi / 4)), (pi / 6, pi / 6), (3 * pi / 8, 0.2), (1.2, 0.7)):
        ok = certify_r0_is_argmax(a, b)
        out.append(CheckResult(f"r0 is grid argmax at ({a:.4f}, {b:.4f})", ok, float(ok), 1.0))
    return out


def check_lowerbound(seed):
    out = []
    a = pi / 4
    out.append(_le("rho_star(pi/4)", abs(cf.rho_star(a) - (1 + np.sqrt(2)) / 2), 1e-12))
    out.append(_le("s_star(pi/4)", abs(cf.s_star(a) - (1 + np.sqrt(2))), 1e-10))
    out.append(_le("bisection rho at s=1+sqrt2",
                   abs(min_success_rho(a, 1 + np.sqrt(2)) - (1 + np.sqrt(2)) / 2), 1e-5))
    dz = dead_zone_fixed_point(a, 1 + np.sqrt(2), (1 + np.sqrt(2)) / 2)
    d = dz.limit if dz.converged else np.inf
    out.append(_le("dead zone limit at pi/4", abs(d - (2 - np.sqrt(2)) / 4), 1e-6))
    for k in (1, 2, 3, 4):
        a = k * pi / 16
        s, rho = cf.s_star(a), cf.rho_star(a)
        up = max_hedge_run(a, s, rho + 1e-3, 200).succeeded
        down = max_hedge_run(a, s, rho - 1e-3, 200)
        below_ok = (not down.succeeded) or not dead_zone_fixed_point(a, s, rho - 1e-3).converged
        ok = up and below_ok
        out.append(CheckResult(f"threshold sharpness at {k}pi/16", ok, float(ok), 1.0,
                               f"above: {'ok' if up else 'failed'}, below: {down.describe()}"))
    return out


SUITES = {
    "opt": check_opt,
    "simulation": check_simulation,
    "seam": check_seam,
    "properties": check_properties,
    "grids": check_grids,
    "lowerbound": check_lowerbound,
}


def run_suite(name="all", seed=None):
    """Run one named suite (or all of them); returns (results, seconds)."""
    seed = default_seed() if seed is None else seed
    if name != "all" and name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; choose from all, {', '.join(SUITES)}")
    names = list(SUITES) if name == "all" else [name]
    start = time.perf_counter()
    results = []
    for n in names:
        results.extend(SUITES[n](seed))
    return results, time.perf_counter() - start
