"""Reaction-diffusion book: resting orders are random-walking particles.

N/2 bid and N/2 ask particles live on the tick grid [0, price_cap];
every step each particle moves one tick up or down (reflecting at the
boundaries).  A bid meeting or crossing an ask annihilates with it -- a
trade -- and the pair is reinjected at the grid ends, so the resting
order count stays exactly N.  Price increments are strongly
anti-persistent (Hurst exponent near 1/4).

Because orders move, this flow cannot be expressed with
limit/market/cancel events; the tape records the trades only and the
state is exposed through periodic snapshots.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List

import numpy as np

from econolab.tape import TapeBuilder, EventTape


@dataclass(frozen=True)
class BPSParams:
    n_agents: int = 200
    price_cap: int = 400

    def validate(self) -> None:
        if self.n_agents < 2 or self.n_agents % 2:
            raise ValueError("n_agents must be even and >= 2")
        if self.price_cap < 2:
            raise ValueError("price_cap must be >= 2")


def run_bps(params: BPSParams, steps: int, seed: int, snapshot_every: int = 0) -> tuple:
    """Run the particle book; returns (tape, snapshots).

    Snapshots hold copies of the particle positions every
    ``snapshot_every`` steps (default steps // 100).  A collision is
    any bid >= ask after the synchronous move; the trade prints at the
    floor midpoint, and the trade sign follows the tick rule (uptick
    +1, downtick -1, unchanged inherits).
    """
    params.validate()
    if steps < 1:
        raise ValueError("steps must be >= 1")
    if snapshot_every <= 0:
        snapshot_every = max(1, steps // 100)
    rng = np.random.default_rng(seed)
    half = params.n_agents // 2
    cap = params.price_cap
    bids = rng.integers(0, cap // 2 + 1, size=half)
    asks = rng.integers(cap // 2, cap + 1, size=half)

    tape = TapeBuilder({"model": "bps", "seed": seed, "steps": steps, "params": params.__dict__.copy()})
    snapshots: List[dict] = []
    last_price = None
    last_sign = 1

    for t in range(steps):
        bids = bids + rng.integers(0, 2, size=half) * 2 - 1
        asks = asks + rng.integers(0, 2, size=half) * 2 - 1
        np.abs(bids, out=bids)
        np.abs(asks, out=asks)
        bids = np.where(bids > cap, 2 * cap - bids, bids)
        asks = np.where(asks > cap, 2 * cap - asks, asks)

        bids.sort()
        asks.sort()
        b_idx = half - 1
        a_idx = 0
        n_match = 0
        while b_idx - n_match >= 0 and a_idx + n_match < half and bids[b_idx - n_match] >= asks[a_idx + n_match]:
            n_match += 1
        if n_match:
            for k in range(n_match):
                b = int(bids[b_idx - k])
                a = int(asks[a_idx + k])
                price = (b + a) // 2
                if last_price is not None and price != last_price:
                    last_sign = 1 if price > last_price else -1
                tape.trade(price, 1, last_sign, time=float(t))
                last_price = price
            bids = np.concatenate([bids[: half - n_match], np.zeros(n_match, dtype=bids.dtype)])
            asks = np.concatenate([asks[n_match:], np.full(n_match, cap, dtype=asks.dtype)])
        if (t + 1) % snapshot_every == 0:
            snapshots.append({"step": t + 1, "bids": bids.copy(), "asks": asks.copy()})

    tape.meta["p0"] = None
    tape.meta["final_best_bid"] = int(bids.max())
    tape.meta["final_best_ask"] = int(asks.min())
    tape.meta["dropped_market_orders"] = 0
    return tape.build(), snapshots
