"""Event tapes: the universal simulation output.

A tape is an ordered record of order events and trades.  Every
simulator in :mod:`econolab.lob` emits one; the statistics layer
consumes them.  Records are stored columnar (numpy arrays) so that
million-event runs stay cheap.

Record kinds are ``limit``, ``market``, ``cancel`` and ``trade``.  A
trade row always follows the event that triggered it and carries the
trade sign: +1 for an execution against the ask side (buyer
initiated), -1 against the bid side.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

KIND_LIMIT = 0
KIND_MARKET = 1
KIND_CANCEL = 2
KIND_TRADE = 3

KIND_NAMES = {KIND_LIMIT: "limit", KIND_MARKET: "market", KIND_CANCEL: "cancel", KIND_TRADE: "trade"}
KIND_CODES = {v: k for k, v in KIND_NAMES.items()}

SIDE_BID = 1
SIDE_ASK = -1
SIDE_NAMES = {SIDE_BID: "bid", SIDE_ASK: "ask", 0: ""}

CSV_HEADER = "event,calendar_time,kind,side,price,qty,sign"


@dataclass
class EventTape:
    """Immutable, columnar tape of order events and trades.

    ``event`` is a strictly increasing index.  ``calendar_time`` is NaN
    for models that have no physical clock.  ``order_id`` links limit,
    cancel and trade rows; it is an in-memory convenience and is not
    part of the CSV contract.
    """

    event: np.ndarray
    calendar_time: np.ndarray
    kind: np.ndarray
    side: np.ndarray
    price: np.ndarray
    qty: np.ndarray
    sign: np.ndarray
    order_id: np.ndarray
    meta: dict = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.event)

    def __post_init__(self) -> None:
        if len(self.event) and np.any(np.diff(self.event) <= 0):
            raise ValueError("event index must be strictly increasing")

    # -- selectors -------------------------------------------------

    def rows(self, kind: int) -> np.ndarray:
        return np.flatnonzero(self.kind == kind)

    @property
    def n_trades(self) -> int:
        return int(np.count_nonzero(self.kind == KIND_TRADE))

    def trade_prices(self) -> np.ndarray:
        return self.price[self.kind == KIND_TRADE]

    def trade_signs(self) -> np.ndarray:
        return self.sign[self.kind == KIND_TRADE]

    def trade_times(self) -> np.ndarray:
        return self.calendar_time[self.kind == KIND_TRADE]

    def trade_events(self) -> np.ndarray:
        return self.event[self.kind == KIND_TRADE]

    @property
    def has_calendar(self) -> bool:
        return bool(len(self)) and bool(np.all(np.isfinite(self.calendar_time)))

    # -- serialization ---------------------------------------------

    def to_csv(self, path) -> None:
        """Write the documented CSV form (order ids are not exported)."""
        with open(path, "w", newline="") as f:
            f.write(CSV_HEADER + "\n")
            for i in range(len(self)):
                t = self.calendar_time[i]
                tstr = "" if np.isnan(t) else format(float(t), ".17g")
                f.write(
                    "%d,%s,%s,%s,%d,%d,%d\n"
                    % (
                        self.event[i],
                        tstr,
                        KIND_NAMES[int(self.kind[i])],
                        SIDE_NAMES[int(self.side[i])],
                        self.price[i],
                        self.qty[i],
                        self.sign[i],
                    )
                )

    @classmethod
    def from_csv(cls, path, meta: Optional[dict] = None) -> "EventTape":
        """Load a tape written by :meth:`to_csv`.

        Cancel rows in the CSV identify their target only by (side,
        price); on replay the oldest resting order at that level is
        cancelled, which leaves every recorded trade unchanged.
        """
        ev, ct, kd, sd, pr, qt, sg = [], [], [], [], [], [], []
        with open(path) as f:
            header = f.readline().strip()
            if header != CSV_HEADER:
                raise ValueError(f"unexpected CSV header: {header!r}")
            for line in f:
                parts = line.rstrip("\n").split(",")
                ev.append(int(parts[0]))
                ct.append(float(parts[1]) if parts[1] else np.nan)
                kd.append(KIND_CODES[parts[2]])
                sd.append({"bid": SIDE_BID, "ask": SIDE_ASK, "": 0}[parts[3]])
                pr.append(int(parts[4]))
                qt.append(int(parts[5]))
                sg.append(int(parts[6]))
        n = len(ev)
        return cls(
            event=np.asarray(ev, dtype=np.int64),
            calendar_time=np.asarray(ct, dtype=np.float64),
            kind=np.asarray(kd, dtype=np.int8),
            side=np.asarray(sd, dtype=np.int8),
            price=np.asarray(pr, dtype=np.int64),
            qty=np.asarray(qt, dtype=np.int64),
            sign=np.asarray(sg, dtype=np.int8),
            order_id=np.full(n, -1, dtype=np.int64),
            meta=dict(meta or {}),
        )

    def summary(self) -> dict:
        """JSON-ready run summary: counts, final quotes, drop counters."""
        counts = {name: int(np.count_nonzero(self.kind == code)) for code, name in KIND_NAMES.items()}
        out = {
            "records": len(self),
            "counts": counts,
            "final_best_bid": self.meta.get("final_best_bid"),
            "final_best_ask": self.meta.get("final_best_ask"),
            "dropped_market_orders": self.meta.get("dropped_market_orders", 0),
            "suppressed_orders": self.meta.get("suppressed_orders", 0),
            "model": self.meta.get("model"),
            "seed": self.meta.get("seed"),
            "params": self.meta.get("params"),
        }
        return out

    def to_json_summary(self, path) -> None:
        with open(path, "w") as f:
            json.dump(self.summary(), f, indent=2, sort_keys=True, default=float)
            f.write("\n")


class TapeBuilder:
    """Append-friendly builder backed by growable numpy chunks."""

    def __init__(self, meta: Optional[dict] = None):
        self._cols = {
            "event": [],
            "calendar_time": [],
            "kind": [],
            "side": [],
            "price": [],
            "qty": [],
            "sign": [],
            "order_id": [],
        }
        self._n = 0
        self.meta = dict(meta or {})

    def __len__(self) -> int:
        return self._n

    def _push(self, time, kind, side, price, qty, sign, order_id) -> int:
        c = self._cols
        c["event"].append(self._n)
        c["calendar_time"].append(np.nan if time is None else float(time))
        c["kind"].append(kind)
        c["side"].append(side)
        c["price"].append(int(price))
        c["qty"].append(int(qty))
        c["sign"].append(int(sign))
        c["order_id"].append(int(order_id))
        self._n += 1
        return self._n - 1

    def limit(self, side, price, qty=1, order_id=-1, time=None):
        return self._push(time, KIND_LIMIT, side, price, qty, 0, order_id)

    def market(self, side, qty=1, time=None):
        return self._push(time, KIND_MARKET, side, 0, qty, 0, -1)

    def cancel(self, side, price, qty=1, order_id=-1, time=None):
        return self._push(time, KIND_CANCEL, side, price, qty, 0, order_id)

    def trade(self, price, qty=1, sign=1, order_id=-1, time=None):
        return self._push(time, KIND_TRADE, 0, price, qty, sign, order_id)

    def build(self) -> EventTape:
        c = self._cols
        return EventTape(
            event=np.asarray(c["event"], dtype=np.int64),
            calendar_time=np.asarray(c["calendar_time"], dtype=np.float64),
            kind=np.asarray(c["kind"], dtype=np.int8),
            side=np.asarray(c["side"], dtype=np.int8),
            price=np.asarray(c["price"], dtype=np.int64),
            qty=np.asarray(c["qty"], dtype=np.int64),
            sign=np.asarray(c["sign"], dtype=np.int8),
            order_id=np.asarray(c["order_id"], dtype=np.int64),
            meta=self.meta,
        )
