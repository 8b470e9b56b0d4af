"""Deposition-evaporation flow with trend-coupled placement depth.

Baseline (coupling 0): limit orders arrive each step on both sides at
one tick plus a geometric depth beyond the opposite best (so they
never cross), market orders arrive at rate ``market_prob`` per side,
and resting orders evaporate with probability ``cancel_prob`` per
step.  That flow is diffusive at best (H <= 1/2).

With coupling q > 0, liquidity providers who observe a trend place
orders deeper on the side the price is moving toward: the mean
placement depth on the ask (bid) side is scaled by 1 + q * T (1 - q *
T) for an up-trend T > 0, where T is an exponential moving average of
trade-price change signs.  Thinning the resistance ahead of the move
lets it run, producing persistent (H approximately 0.6-0.7) behaviour
at medium scales.  The exact coupling law is a modelling choice; the
qualitative mechanism (trend -> wider placement depth) is what the
flow family specifies.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass

import numpy as np

from econolab import tape as tp
from econolab.lob.session import BookSession


@dataclass(frozen=True)
class PreisParams:
    limit_rate: float = 1.0
    market_prob: float = 0.25
    cancel_prob: float = 0.01
    base_depth: float = 8.0
    coupling: float = 0.0
    trend_memory: float = 0.05
    p0: int = 1000

    def validate(self) -> None:
        if not 0.0 <= self.limit_rate <= 1.0 or not 0.0 <= self.market_prob <= 1.0:
            raise ValueError("limit_rate and market_prob are per-step probabilities")
        if not 0.0 <= self.cancel_prob <= 1.0:
            raise ValueError("cancel_prob must lie in [0, 1]")
        if self.base_depth <= 0 or self.coupling < 0:
            raise ValueError("need base_depth > 0 and coupling >= 0")
        if not 0.0 < self.trend_memory <= 1.0:
            raise ValueError("trend_memory must lie in (0, 1]")


def run_preis(params: PreisParams, steps: int, seed: int) -> tp.EventTape:
    """Draw order per step: bid-limit coin/depth, ask-limit coin/depth,
    buy-market coin, sell-market coin, then expiries."""
    params.validate()
    if steps < 1:
        raise ValueError("steps must be >= 1")
    rng = np.random.default_rng(seed)
    sess = BookSession({"model": "preis", "seed": seed, "steps": steps, "p0": params.p0, "params": params.__dict__.copy()})
    book = sess.book
    expiry: list = []
    trend = 0.0

    def mean_depth(side: int) -> float:
        if params.coupling == 0.0:
            return params.base_depth
        tilt = params.coupling * (trend if side == tp.SIDE_ASK else -trend)
        return params.base_depth * max(1.0 + tilt, 0.125)

    def place_limit(side: int, step: int) -> None:
        opp = book.best_ask() if side == tp.SIDE_BID else book.best_bid()
        ref = opp if opp is not None else (sess.last_price if sess.last_price is not None else params.p0)
        depth = int(rng.geometric(min(1.0, 1.0 / mean_depth(side)))) - 1
        price = ref - 1 - depth if side == tp.SIDE_BID else ref + 1 + depth
        oid, _ = sess.limit(side, price, time=step)
        if params.cancel_prob > 0:
            heapq.heappush(expiry, (step + int(rng.geometric(params.cancel_prob)), oid))

    for step in range(steps):
        if rng.random() < params.limit_rate:
            place_limit(tp.SIDE_BID, step)
        if rng.random() < params.limit_rate:
            place_limit(tp.SIDE_ASK, step)
        for side in (tp.SIDE_BID, tp.SIDE_ASK):
            if rng.random() < params.market_prob:
                prev = sess.last_price
                trades = sess.market(side, time=step)
                if trades:
                    new = trades[-1].price
                    if prev is not None and new != prev:
                        g = params.trend_memory
                        trend = (1 - g) * trend + g * (1.0 if new > prev else -1.0)
        while expiry and expiry[0][0] <= step:
            _, oid = heapq.heappop(expiry)
            sess.cancel(oid, time=step)
    return sess.finish()
