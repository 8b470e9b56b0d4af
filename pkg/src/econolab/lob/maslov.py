"""Fixed limit orders around the last price plus explicit market orders.

Each step one trader acts: with probability ``limit_prob`` a limit
order is placed at the last price plus (ask) or minus (bid) an offset
drawn uniformly from {1, ..., max_offset}; otherwise a market order
lifts the opposite best and prints the new price.  Unexecuted orders
are cancelled ``lifetime`` steps after submission, which bounds the
book.  One-step price increments are fat-tailed and the price path is
strongly anti-persistent.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import numpy as np

from econolab import tape as tp
from econolab.lob.session import BookSession


@dataclass(frozen=True)
class MaslovParams:
    limit_prob: float = 0.5
    max_offset: int = 4
    lifetime: int = 1000
    p0: int = 1000

    def validate(self) -> None:
        if not 0.0 <= self.limit_prob <= 1.0:
            raise ValueError("limit_prob must lie in [0, 1]")
        if self.max_offset < 1:
            raise ValueError("max_offset must be >= 1")
        if self.lifetime < 1:
            raise ValueError("lifetime must be >= 1")


def run_maslov(params: MaslovParams, steps: int, seed: int) -> tp.EventTape:
    """Draw order per step: order-type coin, side coin, then offset."""
    params.validate()
    if steps < 1:
        raise ValueError("steps must be >= 1")
    rng = np.random.default_rng(seed)
    sess = BookSession({"model": "maslov", "seed": seed, "steps": steps, "p0": params.p0, "params": params.__dict__.copy()})
    expiry: deque = deque()
    price = params.p0
    for t in range(steps):
        while expiry and expiry[0][0] + params.lifetime <= t:
            _, oid = expiry.popleft()
            sess.cancel(oid, time=t)
        is_limit = rng.random() < params.limit_prob
        side = tp.SIDE_BID if rng.random() < 0.5 else tp.SIDE_ASK
        if is_limit:
            offset = int(rng.integers(1, params.max_offset + 1))
            level = price - offset if side == tp.SIDE_BID else price + offset
            oid, trades = sess.limit(side, level, time=t)
            if trades:
                price = trades[-1].price
            elif oid in sess.book:
                expiry.append((t, oid))
        else:
            trades = sess.market(side, time=t)
            if trades:
                price = trades[-1].price
            # empty opposite side: the no-op stays on the tape and is counted
    return sess.finish()


def mean_field_gap_samples(limit_prob: float, max_offset: float, n_events: int, seed: int) -> np.ndarray:
    """Price-change samples from the uniform-density reduction of the model.

    Keeping only the number of orders u resting inside the placement
    band (density u / max_offset), a limit order adds one (u -> u + 1)
    and a market order consumes one and moves the price by the local
    inter-order gap max_offset / u.  Market orders on an empty band are
    skipped, mirroring the full model.  At limit_prob = 1/2 the band
    occupation is a reflected random walk, so the sampled price changes
    follow the inverse-occupation law with density ~ x^-2 over the
    dynamically resolved range.
    """
    if not 0.0 <= limit_prob <= 1.0:
        raise ValueError("limit_prob must lie in [0, 1]")
    rng = np.random.default_rng(seed)
    u = 1
    out = []
    draws = rng.random(n_events)
    for r in draws:
        if r < limit_prob:
            u += 1
        elif u >= 1:
            out.append(max_offset / u)
            u -= 1
    return np.asarray(out)
