"""Empirically-shaped flow: Student placement, long-memory signs and a
state-dependent cancellation law.

Each step one signed order arrives; the sign series is the sign of
fractional Gaussian noise with Hurst ``sign_hurst``, so its ACF decays
as a power law with exponent -2(1 - H).  The order price is the
same-side best plus a Student-t offset (scale ``placement_scale``,
``placement_dof`` degrees of freedom); an order reaching the opposite
best executes.  Every resting order is then cancelled with probability

    P = A (1 - exp(-y)) (N_imb + B) / N_total,

where y is the order's distance from the opposite best divided by that
distance at birth, and N_imb the same-side share of resting orders.
A stability guard keeps at least two resting orders per side by
suppressing the offending crossing order or cancellation.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict

import numpy as np

from econolab import tape as tp
from econolab.fbm import persistent_signs
from econolab.lob.session import BookSession


@dataclass(frozen=True)
class MikeFarmerParams:
    placement_scale: float = 5.0
    placement_dof: float = 1.3
    cancel_a: float = 0.1
    cancel_b: float = 0.2
    sign_hurst: float = 0.75
    p0: int = 1000

    def validate(self) -> None:
        if self.placement_dof <= 0 or self.placement_scale <= 0:
            raise ValueError("Student placement needs positive scale and dof")
        if self.cancel_a < 0 or self.cancel_b < 0:
            raise ValueError("cancellation constants must be non-negative")
        if not 0.5 < self.sign_hurst < 1.0:
            raise ValueError("sign memory needs H in (1/2, 1)")


MIN_SIDE_DEPTH = 2


def run_mike_farmer(params: MikeFarmerParams, steps: int, seed: int) -> tp.EventTape:
    """The book is seeded with three resting orders per side around p0
    (the guard requires a two-deep book from the start).  Draw order
    per step: placement offset, then one uniform per resting order for
    the cancellation sweep.
    """
    params.validate()
    if steps < 1:
        raise ValueError("steps must be >= 1")
    rng = np.random.default_rng(seed)
    sess = BookSession(
        {"model": "mike_farmer", "seed": seed, "steps": steps, "p0": params.p0, "params": params.__dict__.copy()}
    )
    signs = persistent_signs(params.sign_hurst, steps, rng)

    birth_dist: Dict[int, float] = {}
    for k in (1, 2, 3):
        oid, _ = sess.limit(tp.SIDE_BID, params.p0 - k, time=0)
        birth_dist[oid] = float(k)
        oid, _ = sess.limit(tp.SIDE_ASK, params.p0 + k, time=0)
        birth_dist[oid] = float(k)

    book = sess.book
    for t in range(steps):
        side = tp.SIDE_BID if signs[t] > 0 else tp.SIDE_ASK
        same = book.best_bid() if side == tp.SIDE_BID else book.best_ask()
        opp = book.best_ask() if side == tp.SIDE_BID else book.best_bid()
        ref = same if same is not None else (sess.last_price if sess.last_price is not None else params.p0)
        offset = params.placement_scale * rng.standard_t(params.placement_dof)
        price = int(np.rint(ref + offset))
        crosses = opp is not None and (price >= opp if side == tp.SIDE_BID else price <= opp)
        if crosses and book.depth(-side) <= MIN_SIDE_DEPTH:
            sess.suppressed_orders += 1
        else:
            oid, trades = sess.limit(side, price, time=t)
            if oid in book:
                d0 = abs(price - opp) if opp is not None else abs(offset) + 1.0
                birth_dist[oid] = max(float(d0), 1.0)
            for tr in trades:
                birth_dist.pop(tr.maker_id, None)

        n_bid, n_ask = book.depth(tp.SIDE_BID), book.depth(tp.SIDE_ASK)
        n_tot = n_bid + n_ask
        if n_tot == 0:
            continue
        b0, a0 = book.best_bid(), book.best_ask()
        resting = list(book.orders())
        u = rng.random(len(resting))
        removed_bid = removed_ask = 0
        for order, uu in zip(resting, u):
            if order.side == tp.SIDE_BID:
                if a0 is None or n_bid - removed_bid <= MIN_SIDE_DEPTH:
                    continue
                dist = a0 - order.price
                imb = n_bid / n_tot
            else:
                if b0 is None or n_ask - removed_ask <= MIN_SIDE_DEPTH:
                    continue
                dist = order.price - b0
                imb = n_ask / n_tot
            y = max(dist, 0) / birth_dist.get(order.id, 1.0)
            p_cancel = params.cancel_a * (1.0 - np.exp(-y)) * (imb + params.cancel_b) / n_tot
            if uu < p_cancel:
                sess.cancel(order.id, time=t)
                birth_dist.pop(order.id, None)
                if order.side == tp.SIDE_BID:
                    removed_bid += 1
                else:
                    removed_ask += 1
    return sess.finish()


def calibrate_cancellation(y: np.ndarray, imbalance: np.ndarray, n_total: np.ndarray, cancelled: np.ndarray) -> tuple:
    """Least-squares fit of (A, B) in the three-factor cancellation law.

    Given per-order-step observations of the position ratio y, the
    same-side imbalance and the book size, with a 0/1 cancellation
    outcome, minimize || A (1 - e^-y) (imb + B)/N - outcome ||.  The
    model is linear in (A, A*B), so the fit is a two-column lstsq.
    """
    f = (1.0 - np.exp(-np.asarray(y, dtype=float))) / np.asarray(n_total, dtype=float)
    x1 = f * np.asarray(imbalance, dtype=float)
    x2 = f
    design = np.column_stack([x1, x2])
    coef, *_ = np.linalg.lstsq(design, np.asarray(cancelled, dtype=float), rcond=None)
    a = float(coef[0])
    ab = float(coef[1])
    if a == 0:
        raise ValueError("degenerate fit: A = 0")
    return a, ab / a
