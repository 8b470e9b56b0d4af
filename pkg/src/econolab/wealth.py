"""Kinetic wealth-exchange Monte Carlo engine.

Pairwise conservative transfers: at each interaction two distinct
agents (i, j) are drawn uniformly and an amount dx moves from i to j,

    x_i' = x_i - dx,    x_j' = x_j + dx,

with dx set by the exchange rule.  One sweep is N interactions, so the
relaxation clock is independent of the population size.  Supported
rules:

* ``ConstantDelta``    dx = dx0, the pair redrawn when a transfer
                       would drive the payer negative;
* ``RandomHalfSplit``  dx = eps (x_i + x_j)/2, redrawn likewise;
* ``EpsilonSplit``     dx = (1-eps) x_i - eps x_j  (random re-split of
                       the pooled wealth);
* ``CC(lam)``          dx = (1-lam) [(1-eps) x_i - eps x_j], each
                       agent saving the fraction lam;
* ``CCM(lams)``        dx = (1-eps)(1-lam_i) x_i - eps(1-lam_j) x_j,
                       heterogeneous saving propensities;
* ``OPIP(omega)``      a coin picks the payer (richer pays on heads);
                       the payer transfers omega times its own wealth;
* ``MinimumExchange``  dx = (1-2 eps) min(x_i, x_j); the all-in stake
                       drives condensation onto a single owner.

With identical draw streams the CC rule at lam = 0 reproduces the
epsilon-split trajectory bit for bit.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Union

import numpy as np
from numba import njit

RULE_CONSTANT = 0
RULE_HALF_SPLIT = 1
RULE_EPS_SPLIT = 2
RULE_CC = 3
RULE_CCM = 4
RULE_OPIP = 5
RULE_MINIMUM = 6


@dataclass(frozen=True)
class ConstantDelta:
    dx0: float = 0.1


@dataclass(frozen=True)
class RandomHalfSplit:
    pass


@dataclass(frozen=True)
class EpsilonSplit:
    pass


@dataclass(frozen=True)
class CC:
    lam: float = 0.5

    def __post_init__(self):
        if not 0.0 <= self.lam < 1.0:
            raise ValueError("saving propensity must lie in [0, 1)")


@dataclass(frozen=True)
class CCM:
    lams: tuple

    def __post_init__(self):
        arr = np.asarray(self.lams, dtype=float)
        if np.any(arr < 0) or np.any(arr >= 1):
            raise ValueError("saving propensities must lie in [0, 1)")
        object.__setattr__(self, "lams", tuple(float(v) for v in arr))


@dataclass(frozen=True)
class OPIP:
    omega: float = 0.5
    rich_pays_prob: float = 0.5
    omegas: Optional[tuple] = None  # per-agent transfer fractions

    def __post_init__(self):
        if not 0.0 <= self.omega < 1.0:
            raise ValueError("transfer fraction must lie in [0, 1)")
        if self.omegas is not None:
            arr = np.asarray(self.omegas, dtype=float)
            if np.any(arr < 0) or np.any(arr >= 1):
                raise ValueError("transfer fractions must lie in [0, 1)")
            object.__setattr__(self, "omegas", tuple(float(v) for v in arr))


@dataclass(frozen=True)
class MinimumExchange:
    pass


ExchangeRule = Union[ConstantDelta, RandomHalfSplit, EpsilonSplit, CC, CCM, OPIP, MinimumExchange]


def exchange_delta(rule: ExchangeRule, x_i: float, x_j: float, eps: float) -> float:
    """Transfer from i to j for one interaction (positive moves i -> j).

    ``eps`` is the rule's uniform(0, 1) draw; OPIP uses it as the
    payer coin.  The returned dx always keeps both post-trade wealths
    non-negative; rules that cannot guarantee that for a given draw
    (constant and half-split transfers) are handled by the engine's
    redraw policy and here return 0 for an infeasible draw.
    """
    if x_i < 0 or x_j < 0:
        raise ValueError("wealth must be non-negative")
    if not 0.0 <= eps <= 1.0:
        raise ValueError("eps must lie in [0, 1]")
    if isinstance(rule, ConstantDelta):
        return rule.dx0 if x_i - rule.dx0 >= 0 else 0.0
    if isinstance(rule, RandomHalfSplit):
        dx = eps * (x_i + x_j) / 2.0
        return dx if x_i - dx >= 0 else 0.0
    if isinstance(rule, EpsilonSplit):
        return (1.0 - eps) * x_i - eps * x_j
    if isinstance(rule, CC):
        return (1.0 - rule.lam) * ((1.0 - eps) * x_i - eps * x_j)
    if isinstance(rule, CCM):
        raise ValueError("CCM needs per-agent propensities; use exchange_delta_ccm")
    if isinstance(rule, OPIP):
        rich_pays = eps < rule.rich_pays_prob
        i_is_rich = x_i >= x_j
        i_pays = rich_pays == i_is_rich
        return rule.omega * x_i if i_pays else -rule.omega * x_j
    if isinstance(rule, MinimumExchange):
        return (1.0 - 2.0 * eps) * min(x_i, x_j)
    raise TypeError(f"unknown rule {rule!r}")


def exchange_delta_ccm(lam_i: float, lam_j: float, x_i: float, x_j: float, eps: float) -> float:
    return (1.0 - eps) * (1.0 - lam_i) * x_i - eps * (1.0 - lam_j) * x_j


@njit(cache=True)
def _kwem_kernel(
    x: np.ndarray,
    lams: np.ndarray,
    rule_id: int,
    p0: float,
    p1: float,
    n_sweeps: int,
    seed: int,
    sample_start: int,
    sample_every: int,
    samples: np.ndarray,
    mean_acc: np.ndarray,
    mean_from: int,
):
    """Run n_sweeps * N interactions in place.

    Records wealth snapshots into ``samples`` on the sweep schedule and
    accumulates per-agent wealth sums into ``mean_acc`` from sweep
    ``mean_from`` on.  Pair and eps draws happen in a fixed order so
    rules sharing the stream stay comparable.
    """
    np.random.seed(seed)
    n = x.shape[0]
    s_idx = 0
    for sweep in range(n_sweeps):
        for _ in range(n):
            i = np.random.randint(0, n)
            j = np.random.randint(0, n)
            while j == i:
                j = np.random.randint(0, n)
            eps = np.random.random()
            xi = x[i]
            xj = x[j]
            if rule_id == 0:  # constant transfer; redraw infeasible pairs
                tries = 0
                while xi - p0 < 0.0 and tries < 1000:
                    i = np.random.randint(0, n)
                    j = np.random.randint(0, n)
                    while j == i:
                        j = np.random.randint(0, n)
                    xi = x[i]
                    xj = x[j]
                    tries += 1
                if xi - p0 >= 0.0:
                    x[i] = xi - p0
                    x[j] = xj + p0
            elif rule_id == 1:
                dx = eps * (xi + xj) * 0.5
                tries = 0
                while xi - dx < 0.0 and tries < 1000:
                    i = np.random.randint(0, n)
                    j = np.random.randint(0, n)
                    while j == i:
                        j = np.random.randint(0, n)
                    eps = np.random.random()
                    xi = x[i]
                    xj = x[j]
                    dx = eps * (xi + xj) * 0.5
                    tries += 1
                if xi - dx >= 0.0:
                    x[i] = xi - dx
                    x[j] = xj + dx
            elif rule_id == 2:
                dx = (1.0 - eps) * xi - eps * xj
                x[i] = xi - dx
                x[j] = xj + dx
            elif rule_id == 3:
                dx = (1.0 - p0) * ((1.0 - eps) * xi - eps * xj)
                x[i] = xi - dx
                x[j] = xj + dx
            elif rule_id == 4:
                dx = (1.0 - eps) * (1.0 - lams[i]) * xi - eps * (1.0 - lams[j]) * xj
                x[i] = xi - dx
                x[j] = xj + dx
            elif rule_id == 5:
                rich_pays = eps < p1
                i_is_rich = xi >= xj
                if rich_pays == i_is_rich:
                    w = lams[i] if lams.shape[0] == n else p0
                    dx = w * xi
                else:
                    w = lams[j] if lams.shape[0] == n else p0
                    dx = -w * xj
                x[i] = xi - dx
                x[j] = xj + dx
            else:  # minimum exchange
                m = xi if xi < xj else xj
                dx = (1.0 - 2.0 * eps) * m
                x[i] = xi - dx
                x[j] = xj + dx
            if x[i] < 0.0:
                x[i] = 0.0
            if x[j] < 0.0:
                x[j] = 0.0
        if sweep >= mean_from:
            for a in range(n):
                mean_acc[a] += x[a]
        if s_idx < samples.shape[0] and sweep >= sample_start and (sweep - sample_start) % sample_every == 0:
            for a in range(n):
                samples[s_idx, a] = x[a]
            s_idx += 1
    return s_idx


@njit(cache=True)
def _kwem_minimum_live(x: np.ndarray, n_interactions: int, seed: int) -> int:
    """Minimum-exchange endgame on the live (positive-wealth) set only.

    Zero-wealth agents never trade again, so sampling pairs among the
    survivors is the same process on a faster clock; this drives the
    condensation to its terminal single-owner state in feasible time.
    Returns the number of survivors.
    """
    np.random.seed(seed)
    n = x.shape[0]
    live = np.empty(n, dtype=np.int64)
    n_live = 0
    for a in range(n):
        if x[a] > 0.0:
            live[n_live] = a
            n_live += 1
    it = 0
    while n_live > 1 and it < n_interactions:
        it += 1
        ii = np.random.randint(0, n_live)
        jj = np.random.randint(0, n_live)
        while jj == ii:
            jj = np.random.randint(0, n_live)
        i = live[ii]
        j = live[jj]
        eps = np.random.random()
        m = x[i] if x[i] < x[j] else x[j]
        dx = (1.0 - 2.0 * eps) * m
        x[i] -= dx
        x[j] += dx
        if x[i] <= 0.0:
            x[i] = 0.0
            live[ii] = live[n_live - 1]
            n_live -= 1
        elif x[j] <= 0.0:
            x[j] = 0.0
            live[jj] = live[n_live - 1]
            n_live -= 1
    return n_live


@dataclass(frozen=True)
class KwemRun:
    rule: ExchangeRule
    n_agents: int
    sweeps: int
    seed: int
    x0: float = 1.0
    burn_in: Optional[int] = None
    n_samples: int = 10

    def validate(self) -> None:
        if self.n_agents < 2:
            raise ValueError("need at least two agents")
        if self.sweeps < 1:
            raise ValueError("sweeps must be >= 1")


def default_burn_in(rule: ExchangeRule, sweeps: int) -> int:
    """max(1000, 50 / (1 - max saving propensity)), capped at sweeps/2."""
    lam_max = 0.0
    if isinstance(rule, CC):
        lam_max = rule.lam
    elif isinstance(rule, CCM):
        lam_max = max(rule.lams)
    burn = max(1000, int(np.ceil(50.0 / max(1.0 - lam_max, 1e-6))))
    return min(burn, sweeps // 2)


@dataclass
class KwemResult:
    final: np.ndarray
    samples: np.ndarray  # snapshots x agents
    mean_wealth: np.ndarray  # per-agent time average after burn-in
    burn_in: int
    rule: ExchangeRule
    sweeps: int
    seed: int

    def pooled_samples(self) -> np.ndarray:
        return self.samples.reshape(-1)


def run_kwem(run: KwemRun) -> KwemResult:
    """Uniform random pairing, conserved total wealth, seeded sampling."""
    run.validate()
    rule = run.rule
    n = run.n_agents
    x = np.full(n, run.x0, dtype=float)
    lams = np.zeros(1)
    p0 = p1 = 0.0
    if isinstance(rule, ConstantDelta):
        rid, p0 = RULE_CONSTANT, rule.dx0
    elif isinstance(rule, RandomHalfSplit):
        rid = RULE_HALF_SPLIT
    elif isinstance(rule, EpsilonSplit):
        rid = RULE_EPS_SPLIT
    elif isinstance(rule, CC):
        rid, p0 = RULE_CC, rule.lam
    elif isinstance(rule, CCM):
        rid = RULE_CCM
        lams = np.asarray(rule.lams, dtype=float)
        if len(lams) != n:
            raise ValueError("CCM needs one saving propensity per agent")
    elif isinstance(rule, OPIP):
        rid, p0, p1 = RULE_OPIP, rule.omega, rule.rich_pays_prob
        if rule.omegas is not None:
            lams = np.asarray(rule.omegas, dtype=float)
            if len(lams) != n:
                raise ValueError("per-agent OPIP needs one fraction per agent")
    elif isinstance(rule, MinimumExchange):
        rid = RULE_MINIMUM
    else:
        raise TypeError(f"unknown rule {rule!r}")

    burn = run.burn_in if run.burn_in is not None else default_burn_in(rule, run.sweeps)
    post = max(run.sweeps - burn, 1)
    n_samples = min(run.n_samples, post)
    sample_every = max(post // n_samples, 1)
    samples = np.empty((n_samples, n), dtype=float)
    mean_acc = np.zeros(n, dtype=float)
    taken = _kwem_kernel(x, lams, rid, p0, p1, run.sweeps, run.seed, burn, sample_every, samples, mean_acc, burn)
    mean_wealth = mean_acc / max(run.sweeps - burn, 1)
    return KwemResult(x, samples[:taken], mean_wealth, burn, rule, run.sweeps, run.seed)


def run_minimum_exchange_to_condensation(n_agents: int, seed: int, x0: float = 1.0, max_interactions: int = 200_000_000) -> np.ndarray:
    """Minimum-exchange dynamics until one positive entry remains."""
    x = np.full(n_agents, x0, dtype=float)
    survivors = _kwem_minimum_live(x, max_interactions, seed)
    if survivors > 1:
        raise RuntimeError(f"condensation incomplete: {survivors} survivors")
    return x


def mean_field_wealth(lams: Sequence[float], total_wealth: float) -> np.ndarray:
    """Stationary wealths y_i = C / (1 - lam_i), C fixed by the total.

    A unit saving propensity would hoard the entire average wealth on
    an infinite time scale, so lam = 1 is rejected.
    """
    lams = np.asarray(lams, dtype=float)
    if np.any(lams >= 1.0) or np.any(lams < 0.0):
        raise ValueError("saving propensities must lie in [0, 1)")
    if total_wealth <= 0:
        raise ValueError("total wealth must be positive")
    inv = 1.0 / (1.0 - lams)
    c = total_wealth / inv.sum()
    return c * inv


@dataclass
class RelaxationReport:
    lams: np.ndarray
    tau: np.ndarray
    residuals: np.ndarray
    converged: np.ndarray
    trajectories: np.ndarray
    sample_sweeps: np.ndarray


def measure_relaxation(
    lams: Sequence[float],
    sweeps: int,
    seed: int,
    per_agent: bool = False,
    x0: float = 1.0,
    record_every: int = 1,
    smooth_window: int = 25,
) -> RelaxationReport:
    """Relaxation times of the approach to the mean-field equilibrium.

    Starting from equal wealth, each agent's (or each lam-group's mean)
    trajectory is fitted with log|m(t) - m_inf| = a - t/tau over the
    window where the gap still exceeds 10% of its initial value; the
    equilibrium target m_inf comes from the mean-field solution.  Slow
    groups whose fit explains little variance are flagged as
    non-converged rather than failing.
    """
    lams = np.asarray(lams, dtype=float)
    n = len(lams)
    result = _record_trajectories(lams, sweeps, seed, x0, record_every)
    t_axis, traj = result
    targets = mean_field_wealth(lams, total_wealth=n * x0)

    if per_agent:
        groups = [np.array([i]) for i in range(n)]
        group_lams = lams
    else:
        uniq = np.unique(lams)
        groups = [np.flatnonzero(lams == v) for v in uniq]
        group_lams = uniq

    taus, resid, ok, curves = [], [], [], []
    for idx, lam in zip(groups, group_lams):
        m = traj[:, idx].mean(axis=1)
        if per_agent and smooth_window > 1:
            kern = np.ones(smooth_window) / smooth_window
            m = np.convolve(m, kern, mode="same")
        target = targets[idx].mean()
        gap = np.abs(m - target)
        gap0 = abs(x0 - target)
        if gap0 == 0:
            taus.append(0.0)
            resid.append(0.0)
            ok.append(True)
            curves.append(m)
            continue
        usable = np.flatnonzero(gap > 0.1 * gap0)
        usable = usable[usable > 0]
        if len(usable) < 5:
            taus.append(np.nan)
            resid.append(np.nan)
            ok.append(False)
            curves.append(m)
            continue
        t_fit = t_axis[usable]
        y_fit = np.log(gap[usable])
        slope, intercept = np.polyfit(t_fit, y_fit, 1)
        pred = slope * t_fit + intercept
        rss = float(np.mean((y_fit - pred) ** 2))
        taus.append(-1.0 / slope if slope < 0 else np.nan)
        resid.append(rss)
        ok.append(slope < 0)
        curves.append(m)
    return RelaxationReport(
        np.asarray(group_lams),
        np.asarray(taus),
        np.asarray(resid),
        np.asarray(ok, dtype=bool),
        np.asarray(curves),
        t_axis,
    )


def _record_trajectories(lams: np.ndarray, sweeps: int, seed: int, x0: float, record_every: int) -> tuple:
    n = len(lams)
    x = np.full(n, x0, dtype=float)
    n_rec = sweeps // record_every
    traj = np.empty((n_rec, n), dtype=float)
    _ccm_record(x, lams, sweeps, seed, record_every, traj)
    t_axis = record_every * (1.0 + np.arange(n_rec))
    return t_axis, traj


@njit(cache=True)
def _ccm_record(x, lams, sweeps, seed, record_every, out):
    np.random.seed(seed)
    n = x.shape[0]
    r = 0
    for sweep in range(sweeps):
        for _ in range(n):
            i = np.random.randint(0, n)
            j = np.random.randint(0, n)
            while j == i:
                j = np.random.randint(0, n)
            eps = np.random.random()
            dx = (1.0 - eps) * (1.0 - lams[i]) * x[i] - eps * (1.0 - lams[j]) * x[j]
            x[i] -= dx
            x[j] += dx
            if x[i] < 0.0:
                x[i] = 0.0
            if x[j] < 0.0:
                x[j] = 0.0
        if (sweep + 1) % record_every == 0 and r < out.shape[0]:
            for a in range(n):
                out[r, a] = x[a]
            r += 1


@dataclass(frozen=True)
class CobbDouglasEconomy:
    """Two producers trading their goods plus money.

    Utilities are Cobb-Douglas with exponents (alpha_1, alpha_2,
    alpha_m) summing to one; M1, M2 are money endowments and Q1, Q2
    the produced quantities.
    """

    alpha_1: float
    alpha_2: float
    alpha_m: float
    m1: float
    m2: float
    q1: float
    q2: float

    def validate(self) -> None:
        if abs(self.alpha_1 + self.alpha_2 + self.alpha_m - 1.0) > 1e-12:
            raise ValueError("utility exponents must sum to 1")
        if min(self.q1, self.q2) <= 0 or min(self.m1, self.m2) < 0:
            raise ValueError("quantities must be positive and money non-negative")


def competitive_prices(e: CobbDouglasEconomy) -> tuple:
    """Market-clearing price vector p_i = (alpha_i/alpha_m)(M1+M2)/Q_i.

    The alpha_m -> 0 limit (money valueless) degenerates; that regime
    is the plain epsilon-split exchange instead.
    """
    e.validate()
    if e.alpha_m == 0:
        raise ValueError("alpha_m = 0 is degenerate; use the EpsilonSplit exchange rule")
    money = e.m1 + e.m2
    return (
        (e.alpha_1 / e.alpha_m) * money / e.q1,
        (e.alpha_2 / e.alpha_m) * money / e.q2,
    )


def money_update(e: CobbDouglasEconomy) -> tuple:
    """Post-trade money holdings at the competitive prices.

    With lam = alpha_m and eps = alpha_1/(alpha_1 + alpha_2) this is
    exactly one CC exchange step, which is the bridge between utility
    maximization and the kinetic rules.
    """
    e.validate()
    lam = e.alpha_m
    eps = e.alpha_1 / (e.alpha_1 + e.alpha_2)
    total = e.m1 + e.m2
    m1_new = lam * e.m1 + eps * (1.0 - lam) * total
    m2_new = lam * e.m2 + (1.0 - eps) * (1.0 - lam) * total
    return m1_new, m2_new
