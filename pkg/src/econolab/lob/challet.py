"""Deposition-evaporation book.

Each step a bid (and, independently, an ask) is deposited with
probability ``deposit_rate`` at a price drawn from a Gaussian centred
on the opposite best quote with width sigma(t) = K * spread(t) + C,
rounded to the nearest tick.  A deposit landing on or beyond the
opposite best annihilates against it (a trade); resting orders
evaporate with probability ``cancel_prob`` per step.  The price path
is anti-persistent at short lags and diffusive at long lags.

Evaporation is implemented by drawing each resting order's geometric
lifetime at deposit time, which is distributionally identical to
per-step coin flips and O(1) per order.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass

import numpy as np

from econolab import tape as tp
from econolab.lob.session import BookSession


@dataclass(frozen=True)
class ChalletStinchcombeParams:
    deposit_rate: float = 1.0
    cancel_prob: float = 0.02
    spread_coupling: float = 1.0  # K
    base_width: float = 2.0  # C, must stay positive
    p0: int = 1000

    def validate(self) -> None:
        if not 0.0 <= self.deposit_rate <= 1.0:
            raise ValueError("deposit_rate is a per-step probability in [0, 1]")
        if not 0.0 <= self.cancel_prob <= 1.0:
            raise ValueError("cancel_prob must lie in [0, 1]")
        if self.spread_coupling < 0 or self.base_width <= 0:
            raise ValueError("need K >= 0 and C > 0")


def run_challet_stinchcombe(
    params: ChalletStinchcombeParams,
    steps: int,
    seed: int,
    truncate_crossing: bool = False,
) -> tp.EventTape:
    """Draw order per step: bid coin/draw/lifetime, ask coin/draw/lifetime,
    then expiries.  ``truncate_crossing`` is a diagnostic mode that
    re-rounds would-cross draws one tick inside the opposite best, so
    every deposit rests (used to isolate the pure deposition process).
    """
    params.validate()
    if steps < 1:
        raise ValueError("steps must be >= 1")
    rng = np.random.default_rng(seed)
    sess = BookSession(
        {"model": "challet_stinchcombe", "seed": seed, "steps": steps, "p0": params.p0, "params": params.__dict__.copy()}
    )
    expiry: list = []

    def deposit(side: int) -> None:
        book = sess.book
        if side == tp.SIDE_BID:
            center = book.best_ask()
            opp = center
        else:
            center = book.best_bid()
            opp = center
        if center is None:
            center = sess.last_price if sess.last_price is not None else params.p0
        spread = book.spread()
        sigma = params.spread_coupling * (spread if spread is not None else 0) + params.base_width
        price = int(np.rint(center + sigma * rng.standard_normal()))
        if truncate_crossing and opp is not None:
            price = min(price, opp - 1) if side == tp.SIDE_BID else max(price, opp + 1)
        oid, _ = sess.limit(side, price, time=step)
        if oid in book and params.cancel_prob > 0:
            lifetime = int(rng.geometric(params.cancel_prob))
            heapq.heappush(expiry, (step + lifetime, oid))

    for step in range(steps):
        if rng.random() < params.deposit_rate:
            deposit(tp.SIDE_BID)
        if rng.random() < params.deposit_rate:
            deposit(tp.SIDE_ASK)
        while expiry and expiry[0][0] <= step:
            _, oid = heapq.heappop(expiry)
            sess.cancel(oid, time=step)
    return sess.finish()
