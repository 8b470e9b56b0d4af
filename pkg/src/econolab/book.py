"""Limit-order-book state machine with price/time priority.

Prices are integer ticks (tick size 1 by convention).  Each price level
is a FIFO queue; a limit order that crosses the opposite best executes
immediately as a market order, trade by trade, at the resting order's
price.  All reviewed models use unit volumes, but quantities > 1 are
matched by walking the queue.

The book is the shared core for every event-driven flow model and for
tape replay.
"""

from __future__ import annotations

import heapq
from collections import deque
from dataclasses import dataclass
from typing import Iterator, List, Optional, Tuple

import numpy as np

from econolab import tape as tp


class UnknownOrderError(KeyError):
    """Cancel referenced an order id that is not resting in the book."""


@dataclass
class Order:
    id: int
    side: int  # +1 bid, -1 ask
    price: int
    qty: int = 1
    birth: int = 0


@dataclass
class Trade:
    price: int
    qty: int
    sign: int  # +1 executed against ask, -1 against bid
    maker_id: int
    taker_id: int


class LimitOrderBook:
    """Two price-indexed FIFO queues with lazy best-quote heaps."""

    def __init__(self) -> None:
        self.bids: dict[int, deque[Order]] = {}
        self.asks: dict[int, deque[Order]] = {}
        self._bid_heap: list[int] = []  # negated prices
        self._ask_heap: list[int] = []
        self._orders: dict[int, Order] = {}
        self._next_id = 0

    # -- introspection ----------------------------------------------

    def new_id(self) -> int:
        self._next_id += 1
        return self._next_id - 1

    def __contains__(self, order_id: int) -> bool:
        return order_id in self._orders

    def get(self, order_id: int) -> Optional[Order]:
        return self._orders.get(order_id)

    def best_bid(self) -> Optional[int]:
        while self._bid_heap:
            p = -self._bid_heap[0]
            if self.bids.get(p):
                return p
            heapq.heappop(self._bid_heap)
        return None

    def best_ask(self) -> Optional[int]:
        while self._ask_heap:
            p = self._ask_heap[0]
            if self.asks.get(p):
                return p
            heapq.heappop(self._ask_heap)
        return None

    def spread(self) -> Optional[int]:
        b, a = self.best_bid(), self.best_ask()
        if b is None or a is None:
            return None
        return a - b

    def depth(self, side: int) -> int:
        levels = self.bids if side == tp.SIDE_BID else self.asks
        return sum(len(q) for q in levels.values())

    def n_orders(self) -> int:
        return len(self._orders)

    def orders(self) -> Iterator[Order]:
        return iter(self._orders.values())

    def levels(self, side: int) -> List[Tuple[int, int]]:
        """(price, resting qty) pairs, best first."""
        levels = self.bids if side == tp.SIDE_BID else self.asks
        items = [(p, sum(o.qty for o in q)) for p, q in levels.items() if q]
        items.sort(reverse=(side == tp.SIDE_BID))
        return items

    def is_crossed(self) -> bool:
        b, a = self.best_bid(), self.best_ask()
        return b is not None and a is not None and b >= a

    # -- mutation ---------------------------------------------------

    def _level(self, order: Order) -> deque:
        levels, heap = (self.bids, self._bid_heap) if order.side == tp.SIDE_BID else (self.asks, self._ask_heap)
        q = levels.get(order.price)
        if q is None:
            q = levels[order.price] = deque()
            heapq.heappush(heap, -order.price if order.side == tp.SIDE_BID else order.price)
        return q

    def _rest(self, order: Order) -> None:
        self._level(order).append(order)
        self._orders[order.id] = order

    def _rest_front(self, order: Order) -> None:
        # partially filled maker keeps time priority
        self._level(order).appendleft(order)
        self._orders[order.id] = order

    def _pop_best(self, side: int) -> Order:
        best = self.best_bid() if side == tp.SIDE_BID else self.best_ask()
        levels = self.bids if side == tp.SIDE_BID else self.asks
        q = levels[best]
        order = q.popleft()
        if not q:
            del levels[best]
        del self._orders[order.id]
        return order

    def submit_limit(self, order: Order) -> List[Trade]:
        """Rest the order, executing any crossing quantity first."""
        trades: List[Trade] = []
        qty = order.qty
        opp = tp.SIDE_ASK if order.side == tp.SIDE_BID else tp.SIDE_BID
        while qty > 0:
            best = self.best_ask() if order.side == tp.SIDE_BID else self.best_bid()
            if best is None:
                break
            crosses = order.price >= best if order.side == tp.SIDE_BID else order.price <= best
            if not crosses:
                break
            maker = self._pop_best(opp)
            take = min(qty, maker.qty)
            sign = +1 if order.side == tp.SIDE_BID else -1
            trades.append(Trade(maker.price, take, sign, maker.id, order.id))
            qty -= take
            if maker.qty > take:
                maker.qty -= take
                self._rest_front(maker)
        if qty > 0:
            self._rest(Order(order.id, order.side, order.price, qty, order.birth))
        return trades

    def submit_market(self, side: int, qty: int = 1, taker_id: int = -1) -> Optional[List[Trade]]:
        """Execute against the opposite best; None if that side is empty."""
        opp = tp.SIDE_ASK if side == tp.SIDE_BID else tp.SIDE_BID
        best = self.best_ask() if side == tp.SIDE_BID else self.best_bid()
        if best is None:
            return None
        trades: List[Trade] = []
        sign = +1 if side == tp.SIDE_BID else -1
        while qty > 0:
            best = self.best_ask() if side == tp.SIDE_BID else self.best_bid()
            if best is None:
                break
            maker = self._pop_best(opp)
            take = min(qty, maker.qty)
            trades.append(Trade(maker.price, take, sign, maker.id, taker_id))
            qty -= take
            if maker.qty > take:
                maker.qty -= take
                self._rest_front(maker)
        return trades

    def cancel(self, order_id: int) -> Order:
        order = self._orders.get(order_id)
        if order is None:
            raise UnknownOrderError(order_id)
        levels = self.bids if order.side == tp.SIDE_BID else self.asks
        q = levels[order.price]
        q.remove(order)
        if not q:
            del levels[order.price]
        del self._orders[order_id]
        return order

    def cancel_oldest_at(self, side: int, price: int) -> Order:
        """Cancel the FIFO-first order at a level (CSV replay rule)."""
        levels = self.bids if side == tp.SIDE_BID else self.asks
        q = levels.get(price)
        if not q:
            raise UnknownOrderError((side, price))
        order = q.popleft()
        if not q:
            del levels[price]
        del self._orders[order.id]
        return order


def apply_event(book: LimitOrderBook, kind: int, side: int, price: int, qty: int, order_id: int) -> Optional[List[Trade]]:
    """Apply one tape event to a book.

    Returns the resulting trades (empty list if none).  A market order
    hitting an empty opposite side returns None: the caller decides how
    to record the no-op.  Cancels of unknown orders raise
    :class:`UnknownOrderError`.
    """
    if kind == tp.KIND_LIMIT:
        return book.submit_limit(Order(order_id if order_id >= 0 else book.new_id(), side, price, qty))
    if kind == tp.KIND_MARKET:
        return book.submit_market(side, qty)
    if kind == tp.KIND_CANCEL:
        if order_id >= 0 and order_id in book:
            book.cancel(order_id)
        else:
            book.cancel_oldest_at(side, price)
        return []
    raise ValueError(f"cannot apply event kind {kind}")


def replay(tape: tp.EventTape, validate: bool = False) -> bool:
    """Re-run a tape's events through a fresh book.

    Returns True iff every recorded trade is reproduced exactly, in
    order, with the same price, quantity and sign.  With ``validate``
    the no-crossed-book invariant is asserted after every event.

    Only event-driven tapes can be replayed; tapes that record trades
    without their generating events (the reaction-diffusion model moves
    resting orders, which the limit/market/cancel vocabulary cannot
    express) are rejected.
    """
    kinds = tape.kind
    if tape.n_trades and not np.any(kinds != tp.KIND_TRADE):
        raise ValueError("tape has trades but no generating events; cannot replay")

    book = LimitOrderBook()
    produced: List[Trade] = []
    recorded: List[Tuple[int, int, int]] = []
    i = 0
    n = len(tape)
    while i < n:
        kind = int(kinds[i])
        if kind == tp.KIND_TRADE:
            recorded.append((int(tape.price[i]), int(tape.qty[i]), int(tape.sign[i])))
            i += 1
            continue
        trades = apply_event(book, kind, int(tape.side[i]), int(tape.price[i]), int(tape.qty[i]), int(tape.order_id[i]))
        if validate and book.is_crossed():
            raise AssertionError(f"crossed book after event {i}")
        if trades:
            produced.extend(trades)
        i += 1
    got = [(t.price, t.qty, t.sign) for t in produced]
    return got == recorded
