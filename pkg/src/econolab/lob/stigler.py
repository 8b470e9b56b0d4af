"""The original random-order-flow book: uniform placement on a finite
price grid, bid/ask by fair coin, crossing orders execute, and any
order still resting ``lifetime`` steps after submission is cancelled.

With a tight grid the model produces heavy-tailed returns whose tails
are cut off sharply by the grid boundary.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import numpy as np

from econolab import tape as tp
from econolab.lob.session import BookSession


@dataclass(frozen=True)
class StiglerParams:
    grid_size: int = 10
    lifetime: int = 25

    def validate(self) -> None:
        if self.grid_size < 2:
            raise ValueError("grid_size must be >= 2")
        if self.lifetime < 1:
            raise ValueError("lifetime must be >= 1")


def run_stigler(params: StiglerParams, steps: int, seed: int) -> tp.EventTape:
    """One order per step; draw order per step: side coin, then price."""
    params.validate()
    if steps < 1:
        raise ValueError("steps must be >= 1")
    rng = np.random.default_rng(seed)
    sess = BookSession({"model": "stigler", "seed": seed, "steps": steps, "params": params.__dict__.copy()})
    expiry: deque = deque()
    for t in range(steps):
        while expiry and expiry[0][0] + params.lifetime <= t:
            _, oid = expiry.popleft()
            sess.cancel(oid, time=t)
        side = tp.SIDE_BID if rng.random() < 0.5 else tp.SIDE_ASK
        price = int(rng.integers(1, params.grid_size + 1))
        oid, _ = sess.limit(side, price, time=t)
        if oid in sess.book:
            expiry.append((t, oid))
    return sess.finish()
