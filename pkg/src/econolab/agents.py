"""Excess-demand price models with non-trivial stylized facts.

Three mechanisms: herding through random communication clusters
(fat-tailed price moves), two interacting populations of
fundamentalists and chartists (intermittent volatility, fat tails),
and threshold responses to public information with asynchronous
threshold refresh (volatility clustering without fat-tail machinery).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np
from numba import njit


# ---------------------------------------------------------------- herding


@dataclass(frozen=True)
class HerdingParams:
    n_agents: int = 10_000
    trade_prob: float = 0.05  # a: P(cluster buys) = P(sells) = a
    liquidity: float = 1.0  # lambda, market depth
    clustering: float = 1.0  # c: link probability c/N

    def validate(self) -> None:
        if not 0.0 <= self.trade_prob <= 0.5:
            raise ValueError("trade probability must lie in [0, 1/2]")
        if self.liquidity <= 0:
            raise ValueError("liquidity must be positive")
        if self.clustering < 0:
            raise ValueError("clustering must be >= 0")
        if self.n_agents < 2:
            raise ValueError("need at least two agents")


@njit(cache=True)
def _herding_kernel(n, steps, p_link, trade_prob, inv_liquidity, seed, out):
    """Fresh Erdos-Renyi graph each step; one +/-1 decision per cluster.

    Edges are enumerated by geometric skipping over the C(n,2) pair
    indices (exact G(n, p) in O(edges)); components come from
    union-find.
    """
    np.random.seed(seed)
    parent = np.empty(n, dtype=np.int64)
    size = np.empty(n, dtype=np.int64)
    total_pairs = n * (n - 1) // 2
    log1mp = np.log(1.0 - p_link) if p_link < 1.0 else -1e18
    for t in range(steps):
        for i in range(n):
            parent[i] = i
            size[i] = 1
        if p_link > 0.0:
            idx = -1
            while True:
                u = np.random.random()
                skip = int(np.floor(np.log(u) / log1mp)) if p_link < 1.0 else 0
                idx += skip + 1
                if idx >= total_pairs:
                    break
                # decode linear pair index -> (a, b), a < b
                a = int((2 * n - 1 - np.sqrt((2.0 * n - 1) ** 2 - 8.0 * idx)) // 2)
                rem = idx - a * (2 * n - a - 1) // 2
                b = a + 1 + rem
                ra = a
                while parent[ra] != ra:
                    parent[ra] = parent[parent[ra]]
                    ra = parent[ra]
                rb = b
                while parent[rb] != rb:
                    parent[rb] = parent[parent[rb]]
                    rb = parent[rb]
                if ra != rb:
                    if size[ra] < size[rb]:
                        ra, rb = rb, ra
                    parent[rb] = ra
                    size[ra] += size[rb]
        dp = 0.0
        for i in range(n):
            if parent[i] == i:
                u = np.random.random()
                if u < trade_prob:
                    dp += size[i]
                elif u < 2 * trade_prob:
                    dp -= size[i]
        out[t] = dp * inv_liquidity
    return 0


def run_cont_bouchaud(params: HerdingParams, steps: int, seed: int) -> np.ndarray:
    """Price-change series Delta p(t) = (1/lambda) sum of cluster moves."""
    params.validate()
    if steps < 1:
        raise ValueError("steps must be >= 1")
    out = np.empty(steps, dtype=float)
    _herding_kernel(
        params.n_agents,
        steps,
        min(params.clustering / params.n_agents, 1.0),
        params.trade_prob,
        1.0 / params.liquidity,
        seed % (1 << 31),
        out,
    )
    return out


# ------------------------------------------------- fundamentalists/chartists


@dataclass(frozen=True)
class LuxMarchesiParams:
    """Two-population excess-demand model on a 0.01 price grid.

    The printed ingredients: excess demand ED = (n_plus - n_minus) V_c
    + n_f gamma (p_f - p) + noise, price up/down moves with probability
    proportional to beta*ED, and opinion flips at rates v (n_c/N)
    exp(+-U) with U = alpha_1 x + alpha_2 pdot / v.  The
    fundamentalist/chartist exchange compares recent trend profits to
    the mispricing signal through a logistic acceptance (a modelling
    interpretation; the review gives the comparison qualitatively).
    Defaults are declared, not fitted.
    """

    n_agents: int = 500
    n_fund0: int = 250
    chartist_volume: float = 1.0  # V_c
    gamma: float = 0.01
    beta: float = 4.0
    speed: float = 2.0  # v
    alpha1: float = 0.6
    alpha2: float = 0.2
    noise_std: float = 0.05  # mu
    p_fund: float = 10.0
    tick: float = 0.01
    opinion_dt: float = 0.01
    price_dt: float = 0.05
    switch_speed: float = 0.5
    switch_gain: float = 2000.0
    switch_bias: float = 2.0  # neutral-market tilt toward fundamentalists
    switch_noise: float = 0.02  # idiosyncratic switching floor
    trend_memory: float = 0.02

    def validate(self) -> None:
        if not 0 <= self.n_fund0 <= self.n_agents:
            raise ValueError("initial fundamentalists out of range")
        if self.tick <= 0 or self.p_fund <= 0:
            raise ValueError("need positive tick and fundamental price")


@dataclass
class LuxMarchesiResult:
    price: np.ndarray
    n_fund: np.ndarray
    n_plus: np.ndarray
    n_minus: np.ndarray
    clip_events: int
    extinctions: int

    def log_returns(self, lag: int = 1) -> np.ndarray:
        lp = np.log(self.price)
        return lp[lag:] - lp[:-lag]


def run_lux_marchesi(params: LuxMarchesiParams, steps: int, seed: int) -> LuxMarchesiResult:
    params.validate()
    rng = np.random.default_rng(seed)
    n = params.n_agents
    n_f = params.n_fund0
    n_c = n - n_f
    n_plus = n_c // 2
    n_minus = n_c - n_plus
    ticks = int(round(params.p_fund / params.tick))
    trend = 0.0
    clip_events = 0
    extinctions = 0

    price = np.empty(steps)
    nf_path = np.empty(steps, dtype=np.int64)
    np_path = np.empty(steps, dtype=np.int64)
    nm_path = np.empty(steps, dtype=np.int64)

    for t in range(steps):
        p = ticks * params.tick
        noise = rng.normal(0.0, params.noise_std)
        ed = (n_plus - n_minus) * params.chartist_volume + n_f * params.gamma * (params.p_fund - p) + noise

        move_prob = params.beta * abs(ed) * params.price_dt
        if move_prob > 1.0:
            move_prob = 1.0
            clip_events += 1
        old = p
        if rng.random() < move_prob:
            ticks += 1 if ed > 0 else -1
            if ticks < 1:
                ticks = 1
        p = ticks * params.tick
        g = params.trend_memory
        trend = (1 - g) * trend + g * (p - old) / params.price_dt

        n_c = n_plus + n_minus
        if n_c > 0:
            x = (n_plus - n_minus) / n_c
            u = params.alpha1 * x + params.alpha2 * trend / params.speed
            base = params.speed * (n_c / n) * params.opinion_dt
            pi_plus = base * np.exp(u)
            pi_minus = base * np.exp(-u)
            if pi_plus > 1.0 or pi_minus > 1.0:
                clip_events += 1
                pi_plus = min(pi_plus, 1.0)
                pi_minus = min(pi_minus, 1.0)
            up = rng.binomial(n_minus, pi_plus) if n_minus else 0
            down = rng.binomial(n_plus, pi_minus) if n_plus else 0
            n_plus += up - down
            n_minus += down - up

        # fundamentalist <-> chartist exchange: the trend profit earned by
        # the chartist majority against the mispricing signal, through a
        # bounded logistic acceptance
        n_c = n_plus + n_minus
        majority = 1.0 if n_plus >= n_minus else -1.0
        profit_c = trend * majority * params.chartist_volume / max(p, params.tick)
        profit_f = params.gamma * abs(params.p_fund - p) / max(p, params.tick)
        gain = np.clip(params.switch_gain * (profit_c - profit_f) - params.switch_bias, -60.0, 60.0)
        accept_fc = 1.0 / (1.0 + np.exp(-gain))
        base = params.switch_speed * params.opinion_dt
        p_fc = base * (n_c / n + params.switch_noise) * accept_fc
        p_cf = base * (n_f / n + params.switch_noise) * (1.0 - accept_fc)
        to_c = rng.binomial(n_f, min(p_fc, 1.0)) if n_f else 0
        to_f = rng.binomial(n_c, min(p_cf, 1.0)) if n_c else 0
        n_f += to_f - to_c
        if to_f and n_c > 0:
            leave_plus = int(rng.hypergeometric(n_plus, n_minus, to_f)) if 0 < to_f < n_c else (n_plus if to_f else 0)
            n_plus -= leave_plus
            n_minus -= to_f - leave_plus
        if to_c:
            n_c = max(n_plus + n_minus, 0)
            x_now = (n_plus - n_minus) / n_c if n_c else np.tanh(trend)
            join_plus = int(rng.binomial(to_c, 0.5 * (1.0 + np.clip(x_now, -1.0, 1.0))))
            n_plus += join_plus
            n_minus += to_c - join_plus
        if n_f == 0 or n_plus + n_minus == 0:
            extinctions += 1

        price[t] = ticks * params.tick
        nf_path[t] = n_f
        np_path[t] = n_plus
        nm_path[t] = n_minus

    return LuxMarchesiResult(price, nf_path, np_path, nm_path, clip_events, extinctions)


# ----------------------------------------------------------- threshold model


@dataclass(frozen=True)
class ThresholdParams:
    n_agents: int = 1000
    update_prob: float = 0.1  # s
    liquidity: float = 1.0  # lambda in r = D / (lambda N)
    info_std: float = 1.0
    theta_floor: float = 1e-6

    def validate(self) -> None:
        if not 0.0 <= self.update_prob <= 1.0:
            raise ValueError("update probability must lie in [0, 1]")
        if self.liquidity <= 0 or self.info_std <= 0:
            raise ValueError("liquidity and information scale must be positive")


def run_cont_threshold(
    params: ThresholdParams,
    steps: int,
    seed: int,
    theta0: Optional[np.ndarray] = None,
) -> np.ndarray:
    """Return series r_t = D_t / (lambda N) of the threshold model.

    Each step all agents compare one public Gaussian signal eps_t with
    their personal threshold (buy above, sell below minus, idle in
    between); afterwards each agent refreshes its threshold to |r_t|
    with probability s.  A small floor keeps thresholds positive when
    |r_t| = 0.  Initial thresholds default to |N(0, info_std)| draws.
    """
    params.validate()
    if steps < 1:
        raise ValueError("steps must be >= 1")
    rng = np.random.default_rng(seed)
    n = params.n_agents
    if theta0 is None:
        theta = np.abs(rng.normal(0.0, params.info_std, size=n))
        theta = np.maximum(theta, params.theta_floor)
    else:
        theta = np.asarray(theta0, dtype=float).copy()
        if np.any(theta <= 0):
            raise ValueError("initial thresholds must be positive")
    returns = np.empty(steps)
    for t in range(steps):
        eps = rng.normal(0.0, params.info_std)
        demand = np.count_nonzero(eps > theta) - np.count_nonzero(eps < -theta)
        r = demand / (params.liquidity * n)
        returns[t] = r
        refresh = rng.random(n) < params.update_prob
        if np.any(refresh):
            theta[refresh] = max(abs(r), params.theta_floor)
    return returns
