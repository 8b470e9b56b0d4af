"""The minority game and its evolutionary and adaptive variants.

N (odd) agents repeatedly choose 0 or 1; whoever sits in the minority
wins the round.  Each agent owns k lookup tables mapping the last M
outcomes (P = 2^M histories, so 2^P possible tables) to an action,
plays its highest-virtual-score table, and every table predicting the
realized minority side earns a virtual point.  The volatility
sigma^2/N of the signed attendance A = (2 A_1 - N) collapses onto a
single curve in alpha = 2^M / N: crowded memory (small alpha) does
worse than coin tossing, an interior minimum marks the phase change
near alpha ~ 0.34 for k = 2, and large alpha drifts back to the
coin-toss value 1.

The evolutionary variant periodically clones the best recent player
over the worst (virtual scores reset, one table mutated); the adaptive
variant lets the worst fraction of agents splice new tables out of
their own via one-point crossover.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from numba import njit


@njit(cache=True)
def _mg_burst(strategies, virtual, real, history, steps, seed, a1_out, util_out, actions_tmp):
    """Advance the game ``steps`` rounds in place; returns the history."""
    np.random.seed(seed)
    n, k, p = strategies.shape
    for t in range(steps):
        a1 = 0
        for i in range(n):
            best = virtual[i, 0]
            count = 1
            for s in range(1, k):
                v = virtual[i, s]
                if v > best:
                    best = v
                    count = 1
                elif v == best:
                    count += 1
            pick = np.random.randint(0, count)
            chosen = 0
            seen = 0
            for s in range(k):
                if virtual[i, s] == best:
                    if seen == pick:
                        chosen = s
                        break
                    seen += 1
            action = strategies[i, chosen, history]
            actions_tmp[i] = action
            a1 += action
        minority = 1 if a1 < n - a1 else 0
        a1_out[t] = a1
        util_out[t] = a1 if minority == 1 else n - a1
        for i in range(n):
            if actions_tmp[i] == minority:
                real[i] += 1
            for s in range(k):
                if strategies[i, s, history] == minority:
                    virtual[i, s] += 1
        history = ((history << 1) | minority) & (p - 1)
    return history


@dataclass(frozen=True)
class MGConfig:
    n_agents: int = 101
    memory: int = 5
    k: int = 2
    steps: int = 10_000
    seed: int = 0
    burn_in: Optional[int] = None  # default: first half excluded

    def validate(self) -> None:
        if self.n_agents < 3 or self.n_agents % 2 == 0:
            raise ValueError("n_agents must be odd and >= 3")
        if not 1 <= self.memory <= 20:
            raise ValueError("memory must lie in 1..20")
        if self.k < 1:
            raise ValueError("need at least one table per agent")

    @property
    def alpha(self) -> float:
        return 2.0 ** self.memory / self.n_agents


@dataclass
class MGResult:
    attendance: np.ndarray  # A_1(t)
    utility: np.ndarray  # minority size per round
    real_scores: np.ndarray
    virtual_scores: np.ndarray
    strategies: np.ndarray
    sigma2_over_n: float
    alpha: float
    config: object

    def signed_attendance(self) -> np.ndarray:
        n = self.strategies.shape[0]
        return 2.0 * self.attendance - n


def sigma2_over_n(attendance: np.ndarray, n_agents: int, burn_in: Optional[int] = None) -> float:
    """Variance of the signed attendance per agent over the kept window."""
    if burn_in is None:
        burn_in = len(attendance) // 2
    a = 2.0 * np.asarray(attendance[burn_in:], dtype=float) - n_agents
    return float(np.var(a) / n_agents)


def _draw_state(cfg: MGConfig) -> tuple:
    rng = np.random.default_rng(cfg.seed)
    p = 1 << cfg.memory
    strategies = rng.integers(0, 2, size=(cfg.n_agents, cfg.k, p), dtype=np.int8)
    history = int(rng.integers(0, p))
    return strategies, history


def _fresh_buffers(cfg: MGConfig, steps: int) -> tuple:
    return (
        np.zeros((cfg.n_agents, cfg.k), dtype=np.int64),
        np.zeros(cfg.n_agents, dtype=np.int64),
        np.empty(steps, dtype=np.int32),
        np.empty(steps, dtype=np.int32),
        np.empty(cfg.n_agents, dtype=np.int8),
    )


def run_mg(cfg: MGConfig) -> MGResult:
    """Plain game: tables drawn with replacement, random initial history."""
    cfg.validate()
    strategies, history = _draw_state(cfg)
    virtual, real, a1, util, tmp = _fresh_buffers(cfg, cfg.steps)
    _mg_burst(strategies, virtual, real, history, cfg.steps, cfg.seed % (1 << 31), a1, util, tmp)
    s2n = sigma2_over_n(a1, cfg.n_agents, cfg.burn_in)
    return MGResult(a1, util, real, virtual, strategies, s2n, cfg.alpha, cfg)


def mg_step(strategies: np.ndarray, virtual: np.ndarray, history: int, seed: int = 0) -> tuple:
    """One round on explicit state; returns (new history, minority, A_1).

    Scores are updated in place.  Exposed for constructing exact
    examples (forced unanimity, crafted tables) in tests.
    """
    n, k, p = strategies.shape
    real = np.zeros(n, dtype=np.int64)
    a1 = np.empty(1, dtype=np.int32)
    util = np.empty(1, dtype=np.int32)
    tmp = np.empty(n, dtype=np.int8)
    new_history = _mg_burst(strategies, virtual, real, history, 1, seed % (1 << 31), a1, util, tmp)
    minority = new_history & 1
    return int(new_history), int(minority), int(a1[0])


@dataclass(frozen=True)
class EvolutionaryMGConfig:
    base: MGConfig = field(default_factory=MGConfig)
    period: Optional[int] = 100  # None disables evolution entirely
    mutation_prob: float = 1.0  # chance the clone gets one fresh table

    def validate(self) -> None:
        self.base.validate()
        if self.period is not None and self.period < 1:
            raise ValueError("replacement period must be >= 1")
        if not 0.0 <= self.mutation_prob <= 1.0:
            raise ValueError("mutation_prob must lie in [0, 1]")


def run_evolutionary_mg(cfg: EvolutionaryMGConfig) -> MGResult:
    """Worst recent player replaced by a clone of the best.

    Performance is the real score earned since the previous
    replacement, so newborns compete on the same window as everyone
    else.  The clone inherits the parent's tables with virtual scores
    reset to zero and, with ``mutation_prob``, one table redrawn.
    With ``period=None`` the run is the plain game, draw for draw.
    """
    cfg.validate()
    base = cfg.base
    strategies, history = _draw_state(base)
    virtual, real, a1, util, tmp = _fresh_buffers(base, base.steps)
    if cfg.period is None:
        _mg_burst(strategies, virtual, real, history, base.steps, base.seed % (1 << 31), a1, util, tmp)
        s2n = sigma2_over_n(a1, base.n_agents, base.burn_in)
        return MGResult(a1, util, real, virtual, strategies, s2n, base.alpha, cfg)

    rng = np.random.default_rng(base.seed + 0x9E3779B9)
    p = 1 << base.memory
    done = 0
    burst_idx = 0
    window_base = real.copy()
    while done < base.steps:
        chunk = min(cfg.period, base.steps - done)
        history = _mg_burst(
            strategies, virtual, real, history, chunk,
            (base.seed + 9973 * (burst_idx + 1)) % (1 << 31),
            a1[done : done + chunk], util[done : done + chunk], tmp,
        )
        done += chunk
        burst_idx += 1
        if done >= base.steps:
            break
        window = real - window_base
        worst = int(np.argmin(window))
        best = int(np.argmax(window))
        if worst != best:
            strategies[worst] = strategies[best]
            virtual[worst] = 0
            if rng.random() < cfg.mutation_prob:
                s = int(rng.integers(0, base.k))
                strategies[worst, s] = rng.integers(0, 2, size=p, dtype=np.int8)
            real[worst] = 0
            window_base = real.copy()
    s2n = sigma2_over_n(a1, base.n_agents, base.burn_in)
    return MGResult(a1, util, real, virtual, strategies, s2n, base.alpha, cfg)


@dataclass(frozen=True)
class AdaptiveMGConfig:
    base: MGConfig = field(default_factory=MGConfig)
    period: int = 25  # tau
    worst_fraction: float = 0.6  # n
    mode: str = "d"  # a/b: random parents, c/d: two best; a/c kill parents

    def validate(self) -> None:
        self.base.validate()
        if self.period < 1:
            raise ValueError("adaptation period must be >= 1")
        if not 0.0 < self.worst_fraction < 1.0:
            raise ValueError("worst_fraction must lie in (0, 1)")
        if self.mode not in ("a", "b", "c", "d"):
            raise ValueError("mode must be one of a, b, c, d")
        if self.base.k < 2 or (self.mode in ("b", "d") and self.base.k < 4):
            raise ValueError("crossover needs k >= 2 (k >= 4 when parents are saved)")


def _one_point_crossover(p1: np.ndarray, p2: np.ndarray, point: int) -> tuple:
    c1 = np.concatenate([p1[:point], p2[point:]])
    c2 = np.concatenate([p2[:point], p1[point:]])
    return c1, c2


def run_adaptive_mg(cfg: AdaptiveMGConfig) -> MGResult:
    """Every ``period`` rounds the worst ``worst_fraction`` of agents
    breed two children from two of their own tables by one-point
    crossover.  Modes: random parents (a, b) or the two best tables
    ("hybridized", c, d); children replace the parents (a, c) or the
    agent's two worst tables with parents kept (b, d).  Children start
    with zero virtual score; the table count never changes.
    """
    cfg.validate()
    base = cfg.base
    strategies, history = _draw_state(base)
    virtual, real, a1, util, tmp = _fresh_buffers(base, base.steps)
    rng = np.random.default_rng(base.seed + 0x51ED270)
    p = 1 << base.memory
    n_adapt = max(1, int(round(cfg.worst_fraction * base.n_agents)))
    done = 0
    burst_idx = 0
    while done < base.steps:
        chunk = min(cfg.period, base.steps - done)
        history = _mg_burst(
            strategies, virtual, real, history, chunk,
            (base.seed + 7919 * (burst_idx + 1)) % (1 << 31),
            a1[done : done + chunk], util[done : done + chunk], tmp,
        )
        done += chunk
        burst_idx += 1
        if done >= base.steps:
            break
        order = np.argsort(real, kind="stable")
        for agent in order[:n_adapt]:
            if cfg.mode in ("c", "d"):
                ranked = np.argsort(virtual[agent], kind="stable")
                pa, pb = int(ranked[-1]), int(ranked[-2])
            else:
                pa, pb = rng.choice(base.k, size=2, replace=False)
                pa, pb = int(pa), int(pb)
            point = int(rng.integers(1, p))
            c1, c2 = _one_point_crossover(strategies[agent, pa], strategies[agent, pb], point)
            if cfg.mode in ("a", "c"):
                t1, t2 = pa, pb
            else:
                ranked = np.argsort(virtual[agent], kind="stable")
                t1, t2 = int(ranked[0]), int(ranked[1])
            strategies[agent, t1] = c1
            strategies[agent, t2] = c2
            virtual[agent, t1] = 0
            virtual[agent, t2] = 0
    s2n = sigma2_over_n(a1, base.n_agents, base.burn_in)
    return MGResult(a1, util, real, virtual, strategies, s2n, base.alpha, cfg)
