"""Order-book diagnostics computed by replaying an event tape.

Covers the classic book statistics: interarrival times of orders,
order-volume distribution, placement of arriving limit orders
relative to the same-side best (b0(t-) - b for bids, a - a0(t-) for
asks), the average shape of the book around the best quotes, lifetimes
of cancelled versus executed orders, and activity per calendar bucket
(flat for stationary simulators; reported, never asserted).

Any diagnostic whose inputs are missing from the tape is skipped with
a warning instead of failing the whole report.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional

import numpy as np

from econolab import tape as tp
from econolab.book import LimitOrderBook, Order
from econolab.stats import tails


@dataclass
class PlacementReport:
    reference: str
    deltas_bid: np.ndarray
    deltas_ask: np.ndarray

    def pooled(self) -> np.ndarray:
        return np.concatenate([self.deltas_bid, self.deltas_ask])


@dataclass
class LifetimeReport:
    cancelled: np.ndarray
    executed: np.ndarray
    fits: Dict[str, tails.FitReport] = field(default_factory=dict)


@dataclass
class ShapeReport:
    offsets: np.ndarray
    mean_bid_volume: np.ndarray
    mean_ask_volume: np.ndarray
    samples: int


@dataclass
class BookDiagnostics:
    interarrival_market: Optional[np.ndarray]
    interarrival_fits: Dict[str, tails.FitReport]
    volumes: Optional[np.ndarray]
    volume_tail: Optional[tails.HillReport]
    placement: Optional[PlacementReport]
    shape: Optional[ShapeReport]
    lifetimes: Optional[LifetimeReport]
    seasonality: Optional[np.ndarray]
    warnings: List[str] = field(default_factory=list)


def book_diagnostics(
    tape: tp.EventTape,
    placement_reference: str = "same",
    shape_depth: int = 10,
    shape_every: int = 50,
    seasonality_buckets: int = 24,
) -> BookDiagnostics:
    """Replay the tape and compute all per-diagnostic reports."""
    warnings: List[str] = []
    n = len(tape)
    kinds, sides, prices, qtys, oids = tape.kind, tape.side, tape.price, tape.qty, tape.order_id
    times = tape.calendar_time
    has_calendar = tape.has_calendar

    book = LimitOrderBook()
    deltas_bid: List[float] = []
    deltas_ask: List[float] = []
    birth: Dict[int, float] = {}
    life_cancelled: List[float] = []
    life_executed: List[float] = []
    shape_acc_bid = np.zeros(shape_depth)
    shape_acc_ask = np.zeros(shape_depth)
    shape_samples = 0
    clock = times if has_calendar else tape.event.astype(float)

    for i in range(n):
        kind = int(kinds[i])
        if kind == tp.KIND_TRADE:
            mid = int(oids[i])
            if mid >= 0 and mid in birth:
                life_executed.append(clock[i] - birth.pop(mid))
            continue
        if kind == tp.KIND_LIMIT:
            b0, a0 = book.best_bid(), book.best_ask()
            price = int(prices[i])
            if int(sides[i]) == tp.SIDE_BID:
                ref = b0 if placement_reference == "same" else a0
                if ref is not None:
                    deltas_bid.append(float(ref - price))
            else:
                ref = a0 if placement_reference == "same" else b0
                if ref is not None:
                    deltas_ask.append(float(price - ref))
            oid = int(oids[i])
            if oid < 0:
                oid = book.new_id()
            trades = book.submit_limit(Order(oid, int(sides[i]), price, int(qtys[i]), i))
            for t in trades:
                if t.maker_id in birth:
                    life_executed.append(clock[i] - birth.pop(t.maker_id))
            if oid in book:
                birth[oid] = clock[i]
        elif kind == tp.KIND_MARKET:
            trades = book.submit_market(int(sides[i]), int(qtys[i]))
            for t in trades or ():
                if t.maker_id in birth:
                    life_executed.append(clock[i] - birth.pop(t.maker_id))
        elif kind == tp.KIND_CANCEL:
            oid = int(oids[i])
            try:
                if oid >= 0 and oid in book:
                    order = book.cancel(oid)
                else:
                    order = book.cancel_oldest_at(int(sides[i]), int(prices[i]))
            except KeyError:
                warnings.append(f"cancel at event {i} had no matching resting order")
                continue
            if order.id in birth:
                life_cancelled.append(clock[i] - birth.pop(order.id))
        if shape_every and i % shape_every == 0:
            b0, a0 = book.best_bid(), book.best_ask()
            if b0 is not None and a0 is not None:
                for price, vol in book.levels(tp.SIDE_BID):
                    off = b0 - price
                    if off < shape_depth:
                        shape_acc_bid[off] += vol
                for price, vol in book.levels(tp.SIDE_ASK):
                    off = price - a0
                    if off < shape_depth:
                        shape_acc_ask[off] += vol
                shape_samples += 1

    # interarrivals of market-order-like events (market kind or crossing limit)
    order_rows = np.flatnonzero(kinds != tp.KIND_TRADE)
    market_rows = np.flatnonzero(kinds == tp.KIND_MARKET)
    inter = None
    inter_fits: Dict[str, tails.FitReport] = {}
    basis = market_rows if len(market_rows) >= 100 else order_rows
    if len(basis) >= 100:
        gaps = np.diff(clock[basis])
        gaps = gaps[gaps > 0]
        if len(gaps) >= 100:
            inter = gaps
            for fam in ("exponential", "weibull"):
                try:
                    inter_fits[fam] = tails._FITTERS[fam](gaps)
                except ValueError as exc:
                    warnings.append(f"interarrival {fam} fit skipped: {exc}")
    else:
        warnings.append("too few order events for interarrival statistics")

    volumes = qtys[(kinds == tp.KIND_LIMIT) | (kinds == tp.KIND_MARKET)].astype(float)
    volume_tail = None
    if len(volumes) and volumes.min() == volumes.max():
        warnings.append("order volumes are degenerate (all equal); power-law fit refused")
    elif len(volumes) >= 400:
        try:
            volume_tail = tails.hill_tail_exponent(volumes)
        except ValueError as exc:
            warnings.append(f"volume tail fit skipped: {exc}")

    placement = None
    if deltas_bid or deltas_ask:
        placement = PlacementReport(placement_reference, np.asarray(deltas_bid), np.asarray(deltas_ask))
    else:
        warnings.append("no limit order had a defined placement reference")

    shape = None
    if shape_samples:
        shape = ShapeReport(
            np.arange(shape_depth),
            shape_acc_bid / shape_samples,
            shape_acc_ask / shape_samples,
            shape_samples,
        )

    lifetimes = None
    if life_cancelled or life_executed:
        lifetimes = LifetimeReport(np.asarray(life_cancelled), np.asarray(life_executed))
        for name, arr in (("cancelled", lifetimes.cancelled), ("executed", lifetimes.executed)):
            pos = arr[arr > 0]
            if len(pos) >= 100:
                try:
                    lifetimes.fits[name] = tails.fit_exponential(pos)
                except ValueError:
                    pass

    seasonality = None
    if has_calendar and n:
        span = times[-1] - times[0]
        if span > 0:
            seasonality, _ = np.histogram(times, bins=seasonality_buckets)
            seasonality = seasonality.astype(float)
    elif not has_calendar:
        warnings.append("no calendar times; seasonality skipped")

    return BookDiagnostics(inter, inter_fits, volumes if len(volumes) else None, volume_tail, placement, shape, lifetimes, seasonality, warnings)


@dataclass
class DepthBalance:
    prices: np.ndarray
    deposit_rate: np.ndarray
    mean_occupancy: np.ndarray
    predicted: np.ndarray

    def relative_errors(self) -> np.ndarray:
        return np.abs(self.mean_occupancy - self.predicted) / self.predicted


def depth_balance_check(
    tape: tp.EventTape,
    cancel_prob: float,
    n_steps: Optional[int] = None,
    min_deposits: int = 100,
) -> DepthBalance:
    """Steady-state depth test at prices never hit by executions.

    Far from the best quotes no market order arrives, so a level's
    occupancy follows a birth-death balance: mean depth = deposit rate
    per step / per-step cancel probability.  Levels are included when
    they collected at least ``min_deposits`` resting deposits and no
    execution; the occupancy is time-averaged over the run using the
    tape's calendar (step) times.
    """
    if n_steps is None:
        n_steps = tape.meta.get("steps")
        if n_steps is None:
            raise ValueError("number of steps unknown; pass n_steps")
    if not tape.has_calendar:
        raise ValueError("depth balance needs step-indexed calendar times")
    book = LimitOrderBook()
    kinds, sides, prices, qtys, oids = tape.kind, tape.side, tape.price, tape.qty, tape.order_id
    times = tape.calendar_time
    deposits: Dict[int, int] = {}
    executed_at: set = set()
    occupancy_integral: Dict[int, float] = {}
    level_count: Dict[int, int] = {}
    last_t = 0.0

    def integrate(now: float) -> None:
        nonlocal last_t
        dt = now - last_t
        if dt > 0:
            for p, c in level_count.items():
                if c:
                    occupancy_integral[p] = occupancy_integral.get(p, 0.0) + c * dt
            last_t = now

    for i in range(len(tape)):
        kind = int(kinds[i])
        if kind == tp.KIND_TRADE:
            continue
        integrate(float(times[i]))
        if kind == tp.KIND_LIMIT:
            oid = int(oids[i])
            if oid < 0:
                oid = book.new_id()
            trades = book.submit_limit(Order(oid, int(sides[i]), int(prices[i]), int(qtys[i]), i))
            for t in trades:
                executed_at.add(t.price)
                level_count[t.price] = level_count.get(t.price, 0) - t.qty
            if oid in book:
                p = int(prices[i])
                deposits[p] = deposits.get(p, 0) + 1
                level_count[p] = level_count.get(p, 0) + 1
        elif kind == tp.KIND_MARKET:
            trades = book.submit_market(int(sides[i]), int(qtys[i]))
            for t in trades or ():
                executed_at.add(t.price)
                level_count[t.price] = level_count.get(t.price, 0) - t.qty
        elif kind == tp.KIND_CANCEL:
            oid = int(oids[i])
            try:
                if oid >= 0 and oid in book:
                    order = book.cancel(oid)
                else:
                    order = book.cancel_oldest_at(int(sides[i]), int(prices[i]))
            except KeyError:
                continue
            level_count[order.price] = level_count.get(order.price, 0) - order.qty
    integrate(float(n_steps))

    keep, rate, occ, pred = [], [], [], []
    for p, ndep in sorted(deposits.items()):
        if ndep >= min_deposits and p not in executed_at:
            keep.append(p)
            r = ndep / n_steps
            rate.append(r)
            occ.append(occupancy_integral.get(p, 0.0) / n_steps)
            pred.append(r / cancel_prob)
    return DepthBalance(np.asarray(keep), np.asarray(rate), np.asarray(occ), np.asarray(pred))
