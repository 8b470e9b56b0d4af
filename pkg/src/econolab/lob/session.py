"""Book + tape bookkeeping shared by the event-driven flow drivers.

Every order goes through here so that the recorded tape replays
exactly: limit and cancel rows carry the order id, each trade row
follows its triggering event and carries the maker id (used by the
lifetime diagnostics).
"""

from __future__ import annotations

from typing import List, Optional

from econolab import tape as tp
from econolab.book import LimitOrderBook, Order, Trade
from econolab.tape import TapeBuilder


class BookSession:
    def __init__(self, meta: Optional[dict] = None):
        self.book = LimitOrderBook()
        self.tape = TapeBuilder(meta)
        self.dropped_market_orders = 0
        self.suppressed_orders = 0
        self.last_price: Optional[int] = None

    def _record_trades(self, trades: List[Trade], time) -> None:
        for t in trades:
            self.tape.trade(t.price, t.qty, t.sign, order_id=t.maker_id, time=time)
            self.last_price = t.price

    def limit(self, side: int, price: int, qty: int = 1, time=None) -> tuple:
        """Submit a limit order; returns (order id, trades)."""
        oid = self.book.new_id()
        self.tape.limit(side, price, qty, order_id=oid, time=time)
        trades = self.book.submit_limit(Order(oid, side, price, qty))
        self._record_trades(trades, time)
        return oid, trades

    def market(self, side: int, qty: int = 1, time=None) -> Optional[List[Trade]]:
        """Submit a market order; None means the opposite side was empty.

        The no-op is still recorded on the tape (and counted) so replay
        sees the same event stream.
        """
        self.tape.market(side, qty, time=time)
        trades = self.book.submit_market(side, qty)
        if trades is None:
            self.dropped_market_orders += 1
            return None
        self._record_trades(trades, time)
        return trades

    def cancel(self, order_id: int, time=None) -> bool:
        """Cancel a resting order if it still rests; returns success."""
        order = self.book.get(order_id)
        if order is None:
            return False
        self.tape.cancel(order.side, order.price, order.qty, order_id=order_id, time=time)
        self.book.cancel(order_id)
        return True

    def finish(self) -> tp.EventTape:
        meta = self.tape.meta
        meta["final_best_bid"] = self.book.best_bid()
        meta["final_best_ask"] = self.book.best_ask()
        meta["dropped_market_orders"] = self.dropped_market_orders
        meta["suppressed_orders"] = self.suppressed_orders
        return self.tape.build()
