"""Returns, clocks, autocorrelation, Hurst and activity statistics.

Price series can be read off a tape under four clocks: calendar time
(one sample per time unit), event time (one per order event), trade
time (one per transaction) and tick time (one per price change).
Trade and tick series are derivable from an event-level tape; the
reverse direction loses information and is refused.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np
from scipy import stats as sps

from econolab import tape as tp

CLOCKS = ("calendar", "event", "trade", "tick")
_DOWNGRADES = {"event": ("trade", "tick"), "trade": (), "tick": (), "calendar": ()}


@dataclass
class ClockedSeries:
    """A price (or log-price) sequence with the clock it was sampled on."""

    values: np.ndarray
    clock: str
    timestamps: np.ndarray

    def __post_init__(self) -> None:
        self.values = np.asarray(self.values, dtype=float)
        self.timestamps = np.asarray(self.timestamps, dtype=float)
        if self.clock not in CLOCKS:
            raise ValueError(f"unknown clock {self.clock!r}")
        if len(self.values) != len(self.timestamps):
            raise ValueError("values/timestamps length mismatch")
        if len(self.timestamps) > 1 and np.any(np.diff(self.timestamps) < 0):
            raise ValueError("timestamps must be non-decreasing")
        if self.clock == "tick" and np.any(np.diff(self.values) == 0):
            raise ValueError("tick-clock series cannot hold flat moves")

    def __len__(self) -> int:
        return len(self.values)

    def convert(self, target: str) -> "ClockedSeries":
        """Downgrade to a coarser clock; only event -> trade/tick exists.

        A tick series cannot be extracted from a trade series: price
        moves caused by quote updates between trades are already lost.
        """
        if target == self.clock:
            return self
        if target not in _DOWNGRADES.get(self.clock, ()):
            raise ValueError(f"cannot convert {self.clock!r} series to {target!r}")
        if target == "trade":
            raise ValueError("trade clock requires the tape; event series has no trade marks")
        keep = np.concatenate([[True], np.diff(self.values) != 0])
        return ClockedSeries(self.values[keep], "tick", self.timestamps[keep])


def resample_clock(tape: tp.EventTape, clock: str, unit: float = 1.0) -> ClockedSeries:
    """Price series from a tape under the requested clock.

    The price is the last trade price, carried forward; the initial
    reference comes from tape metadata (``p0``) when present.  The
    calendar clock needs calendar timestamps and errors without them.
    """
    if clock not in CLOCKS:
        raise ValueError(f"unknown clock {clock!r}")
    trade_rows = tape.rows(tp.KIND_TRADE)
    prices = tape.price[trade_rows].astype(float)

    if clock == "trade":
        return ClockedSeries(prices, "trade", tape.event[trade_rows].astype(float))
    if clock == "tick":
        if len(prices) == 0:
            return ClockedSeries(prices, "tick", prices)
        keep = np.concatenate([[True], np.diff(prices) != 0])
        return ClockedSeries(prices[keep], "tick", tape.event[trade_rows][keep].astype(float))

    p0 = tape.meta.get("p0")
    if clock == "event":
        n = len(tape)
        out = np.empty(n, dtype=float)
        last = float(p0) if p0 is not None else (prices[0] if len(prices) else np.nan)
        j = 0
        for i in range(n):
            if j < len(trade_rows) and trade_rows[j] == i:
                last = prices[j]
                j += 1
            out[i] = last
        return ClockedSeries(out, "event", tape.event.astype(float))

    # calendar
    if not tape.has_calendar:
        raise ValueError("tape carries no calendar times; calendar clock unavailable")
    t_end = float(tape.calendar_time[-1])
    grid = np.arange(unit, t_end + unit * 0.5, unit)
    trade_t = tape.calendar_time[trade_rows]
    idx = np.searchsorted(trade_t, grid, side="right") - 1
    start = float(p0) if p0 is not None else (prices[0] if len(prices) else np.nan)
    vals = np.where(idx >= 0, prices[np.maximum(idx, 0)], start)
    return ClockedSeries(vals, "calendar", grid)


def log_returns(series, tau: int = 1) -> np.ndarray:
    """r_tau(t) = log p(t+tau) - log p(t)."""
    x = series.values if isinstance(series, ClockedSeries) else np.asarray(series, dtype=float)
    if tau < 1:
        raise ValueError("lag must be >= 1")
    if len(x) <= tau:
        raise ValueError("series shorter than the return horizon")
    if np.any(x <= 0):
        raise ValueError("log returns need strictly positive prices")
    lx = np.log(x)
    return lx[tau:] - lx[:-tau]


def acf(x, max_lag: int) -> np.ndarray:
    """Sample autocorrelation for lags 0..max_lag (lag 0 = 1)."""
    x = np.asarray(x, dtype=float)
    if len(x) <= max_lag:
        raise ValueError("series shorter than max_lag")
    x = x - x.mean()
    denom = float(np.dot(x, x))
    if denom == 0.0:
        raise ValueError("zero-variance series has no autocorrelation")
    out = np.empty(max_lag + 1)
    out[0] = 1.0
    for k in range(1, max_lag + 1):
        out[k] = float(np.dot(x[:-k], x[k:])) / denom
    return out


@dataclass
class PowerLawFit:
    slope: float
    intercept: float
    lags: np.ndarray
    values: np.ndarray


@dataclass
class SignAcfReport:
    acf: np.ndarray
    clock: str
    fit: Optional[PowerLawFit]
    reason: Optional[str] = None


def trade_sign_acf(tape: tp.EventTape, clock: str = "trade", max_lag: int = 100) -> SignAcfReport:
    """ACF of the +/-1 trade-sign series with a log-log decay fit.

    Under the tick clock only trades that moved the price count.  The
    power-law fit is refused (ACF still returned) below 100 trades.
    """
    if clock not in ("trade", "tick"):
        raise ValueError("sign series exists in trade or tick time only")
    signs = tape.trade_signs().astype(float)
    prices = tape.trade_prices()
    if clock == "tick" and len(signs):
        keep = np.concatenate([[True], np.diff(prices) != 0])
        signs = signs[keep]
    if len(signs) == 0:
        raise ValueError("tape has no trades")
    max_lag = min(max_lag, len(signs) - 1)
    rho = acf(signs, max_lag)
    if len(signs) < 100:
        return SignAcfReport(rho, clock, None, "fewer than 100 trades; fit refused")
    lags = np.arange(1, max_lag + 1)
    pos = rho[1:] > 0
    if np.count_nonzero(pos) < 5:
        return SignAcfReport(rho, clock, None, "too few positive ACF values for a log-log fit")
    slope, intercept = np.polyfit(np.log(lags[pos]), np.log(rho[1:][pos]), 1)
    return SignAcfReport(rho, clock, PowerLawFit(float(slope), float(intercept), lags[pos], rho[1:][pos]))


@dataclass
class HurstReport:
    h: float
    scales: np.ndarray
    mean_abs: np.ndarray
    nonstationary: bool
    half_slopes: tuple

    def __float__(self) -> float:
        return self.h


def hurst_exponent(series, min_scale: int = 1, max_scale: Optional[int] = None) -> HurstReport:
    """Scaling of the mean absolute increment: E|x(t+d)-x(t)| ~ d^H.

    Fitted by OLS over dyadic scales; a slope gap > 0.15 between the
    lower and upper halves of the scale window flags nonstationary
    scaling (crossover) rather than failing.
    """
    x = series.values if isinstance(series, ClockedSeries) else np.asarray(series, dtype=float)
    if len(x) < 2 ** 10:
        raise ValueError("need at least 2^10 samples for a scaling fit")
    if max_scale is None:
        max_scale = len(x) // 8
    scales = []
    d = max(1, int(min_scale))
    while d <= max_scale:
        scales.append(d)
        d *= 2
    if len(scales) < 3:
        raise ValueError("fewer than three dyadic scales in the window")
    scales = np.asarray(scales)
    m = np.array([np.mean(np.abs(x[d:] - x[:-d])) for d in scales])
    if np.any(m == 0):
        raise ValueError("degenerate series: zero mean absolute increment at some scale")
    logs, logm = np.log(scales), np.log(m)
    h = float(np.polyfit(logs, logm, 1)[0])
    half = len(scales) // 2
    h_lo = float(np.polyfit(logs[: half + 1], logm[: half + 1], 1)[0])
    h_hi = float(np.polyfit(logs[half:], logm[half:], 1)[0])
    return HurstReport(h, scales, m, abs(h_hi - h_lo) > 0.15, (h_lo, h_hi))


def excess_kurtosis_by_scale(returns, scales: Sequence[int], min_samples: int = 500) -> np.ndarray:
    """Excess kurtosis of non-overlapping aggregated returns per scale."""
    r = np.asarray(returns, dtype=float)
    out = np.empty(len(scales))
    for i, s in enumerate(scales):
        n = len(r) // s
        if n < min_samples:
            raise ValueError(f"scale {s} leaves only {n} aggregated returns (< {min_samples})")
        agg = r[: n * s].reshape(n, s).sum(axis=1)
        out[i] = float(sps.kurtosis(agg, fisher=True, bias=True))
    return out


@dataclass
class CountFit:
    family: str
    params: dict
    ks: float


@dataclass
class TradeCountReport:
    window: float
    counts: np.ndarray
    fits: list
    best: str
    variance_slope: float
    variance_r2: float
    bins: np.ndarray = field(default_factory=lambda: np.empty(0))

    def fit(self, family: str) -> CountFit:
        for f in self.fits:
            if f.family == family:
                return f
        raise KeyError(family)


def _cdf_distance(counts: np.ndarray, cdf) -> float:
    xs = np.sort(counts)
    n = len(xs)
    emp_hi = np.arange(1, n + 1) / n
    emp_lo = np.arange(0, n) / n
    model = cdf(xs)
    return float(max(np.max(np.abs(emp_hi - model)), np.max(np.abs(emp_lo - model))))


def trade_count_distribution(tape_or_counts, window: float = 1.0, returns_by_window: Optional[np.ndarray] = None) -> TradeCountReport:
    """Distribution of the number of trades per window, with ranked fits.

    Accepts a tape (calendar windows when timestamps exist, otherwise
    event-index windows) or a pre-computed count array.  Candidate
    families are poisson, exponential, gamma and lognormal, ranked by
    the KS-style CDF distance.  The report also carries the slope and
    R^2 of the regression of per-window return variance on trade count.
    """
    if isinstance(tape_or_counts, tp.EventTape):
        tape = tape_or_counts
        t = tape.trade_times() if tape.has_calendar else tape.trade_events().astype(float)
        if len(t) == 0:
            raise ValueError("tape has no trades")
        span = t[-1] - t[0]
        n_windows = int(span // window)
        if n_windows < 100:
            raise ValueError("tape spans fewer than 100 windows")
        edges = t[0] + window * np.arange(n_windows + 1)
        counts = np.histogram(t, bins=edges)[0].astype(float)
        if returns_by_window is None:
            prices = tape.trade_prices().astype(float)
            idx = np.searchsorted(t, edges, side="right") - 1
            idx = np.maximum(idx, 0)
            bound = np.log(prices[idx])
            returns_by_window = np.diff(bound)
    else:
        counts = np.asarray(tape_or_counts, dtype=float)

    mean = counts.mean()
    fits = []
    fits.append(CountFit("poisson", {"mu": mean}, _cdf_distance(counts, lambda x: sps.poisson.cdf(x, mean))))
    fits.append(CountFit("exponential", {"scale": mean}, _cdf_distance(counts, lambda x: sps.expon.cdf(x, scale=mean))))
    var = counts.var()
    if var > 0:
        shape = mean ** 2 / var
        scale = var / mean
        fits.append(CountFit("gamma", {"shape": shape, "scale": scale}, _cdf_distance(counts, lambda x: sps.gamma.cdf(x, shape, scale=scale))))
    pos = counts[counts > 0]
    if len(pos) >= 10:
        mu_l, sd_l = np.log(pos).mean(), np.log(pos).std()
        if sd_l > 0:
            fits.append(
                CountFit(
                    "lognormal",
                    {"x0": float(np.exp(mu_l)), "sigma": float(sd_l)},
                    _cdf_distance(pos, lambda x: sps.lognorm.cdf(x, sd_l, scale=np.exp(mu_l))),
                )
            )
    fits.sort(key=lambda f: f.ks)

    slope, r2 = np.nan, np.nan
    if returns_by_window is not None and len(returns_by_window) == len(counts):
        uniq = np.unique(counts)
        xs, ys = [], []
        for u in uniq:
            sel = counts == u
            if np.count_nonzero(sel) >= 10:
                xs.append(u)
                ys.append(np.var(returns_by_window[sel]))
        if len(xs) >= 3:
            xs, ys = np.asarray(xs), np.asarray(ys)
            slope, intercept = np.polyfit(xs, ys, 1)
            pred = slope * xs + intercept
            ss_res = np.sum((ys - pred) ** 2)
            ss_tot = np.sum((ys - ys.mean()) ** 2)
            r2 = 1.0 - ss_res / ss_tot if ss_tot > 0 else np.nan
            slope = float(slope)

    return TradeCountReport(window, counts, fits, fits[0].family, slope, float(r2))
