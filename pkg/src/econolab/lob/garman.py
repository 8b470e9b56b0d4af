"""Double-auction flow driven by two independent Poisson streams.

Buy and sell limit orders arrive at rates lambda and mu with prices
uniform on a finite grid; an order crossing the opposite best executes.
The tape carries calendar (arrival) times.  The bid-ask bounce makes
consecutive trade-price changes negatively correlated.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from econolab import tape as tp
from econolab.lob.session import BookSession


@dataclass(frozen=True)
class GarmanParams:
    buy_rate: float = 1.0
    sell_rate: float = 1.0
    grid_size: int = 100

    def validate(self) -> None:
        if self.buy_rate < 0 or self.sell_rate < 0 or self.buy_rate + self.sell_rate == 0:
            raise ValueError("arrival rates must be non-negative and not both zero")
        if self.grid_size < 2:
            raise ValueError("grid_size must be >= 2")


def run_garman(params: GarmanParams, horizon: float, seed: int) -> tp.EventTape:
    """Merged Poisson streams up to calendar time ``horizon``.

    Draw order: next-gap for whichever stream fired, then the price of
    the arriving order.
    """
    params.validate()
    if horizon <= 0:
        raise ValueError("horizon must be positive")
    rng = np.random.default_rng(seed)
    sess = BookSession({"model": "garman", "seed": seed, "horizon": horizon, "params": params.__dict__.copy()})

    inf = float("inf")
    t_buy = rng.exponential(1.0 / params.buy_rate) if params.buy_rate > 0 else inf
    t_sell = rng.exponential(1.0 / params.sell_rate) if params.sell_rate > 0 else inf
    while min(t_buy, t_sell) <= horizon:
        if t_buy <= t_sell:
            price = int(rng.integers(1, params.grid_size + 1))
            sess.limit(tp.SIDE_BID, price, time=t_buy)
            t_buy += rng.exponential(1.0 / params.buy_rate)
        else:
            price = int(rng.integers(1, params.grid_size + 1))
            sess.limit(tp.SIDE_ASK, price, time=t_sell)
            t_sell += rng.exponential(1.0 / params.sell_rate)
    return sess.finish()
