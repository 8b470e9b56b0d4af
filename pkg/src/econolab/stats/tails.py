"""Tail exponents, inequality measures and distribution fits.

The Hill estimator reports the survival-function exponent alpha (the
density then decays as x^{-(1+alpha)}); a plateau check across nested
tail windows guards against reading a power law into thin-tailed data.
All fits report a KS distance; "best fit" means smallest KS, no
p-values are claimed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np
from scipy import stats as sps


@dataclass
class HillReport:
    alpha: float
    density_exponent: float
    k: int
    top_fraction: float
    plateau_fractions: np.ndarray
    plateau_alphas: np.ndarray
    no_power_law: bool

    def __float__(self) -> float:
        return self.alpha


def _hill_alpha(sorted_desc: np.ndarray, k: int) -> float:
    tail = sorted_desc[:k]
    threshold = sorted_desc[k]
    return float(k / np.sum(np.log(tail / threshold)))


def hill_tail_exponent(
    sample,
    top_fraction: float = 0.05,
    plateau_window: tuple = (0.025, 0.10),
    plateau_tolerance: float = 0.25,
) -> HillReport:
    """Hill estimate on the upper order statistics.

    The plateau detector recomputes alpha for tail fractions across
    ``plateau_window``; a relative spread above ``plateau_tolerance``
    marks the sample as having no stable power-law tail (e.g. an
    exponential sample drifts without a plateau).
    """
    x = np.sort(np.asarray(sample, dtype=float))[::-1]
    n = len(x)
    k = int(np.floor(n * top_fraction))
    if k < 20:
        raise ValueError("tail window holds fewer than 20 points")
    if x[k] <= 0:
        raise ValueError("non-positive values inside the tail window")
    if x[0] == x[min(n - 1, k)]:
        raise ValueError("degenerate tail: all values equal")
    alpha = _hill_alpha(x, k)

    fracs = np.linspace(plateau_window[0], plateau_window[1], 7)
    alphas = []
    for f in fracs:
        kk = int(np.floor(n * f))
        if kk >= 20 and x[kk] > 0:
            alphas.append(_hill_alpha(x, kk))
        else:
            alphas.append(np.nan)
    alphas = np.asarray(alphas)
    good = alphas[np.isfinite(alphas)]
    no_power_law = True
    if len(good) >= 3:
        spread = (good.max() - good.min()) / good.mean()
        no_power_law = bool(spread > plateau_tolerance)
    return HillReport(alpha, alpha + 1.0, k, top_fraction, fracs, alphas, no_power_law)


def gini(sample) -> float:
    """Discrete Gini coefficient: half the relative mean difference.

    Equals sum_ij |x_i - x_j| / (2 N^2 mean); bounded by (N-1)/N and
    invariant under positive rescaling.
    """
    x = np.asarray(sample, dtype=float)
    if np.any(x < 0):
        raise ValueError("Gini needs a non-negative sample")
    total = x.sum()
    if total <= 0:
        raise ValueError("Gini undefined for an all-zero sample")
    xs = np.sort(x)
    n = len(xs)
    ranks = np.arange(1, n + 1)
    return float(np.sum((2 * ranks - n - 1) * xs) / (n * total))


@dataclass
class FitReport:
    family: str
    params: dict
    ks: float
    loglik: Optional[float] = None
    extras: dict = field(default_factory=dict)


def _ks(sample: np.ndarray, cdf) -> float:
    return float(sps.ks_1samp(sample, cdf).statistic)


def fit_exponential(sample) -> FitReport:
    x = np.asarray(sample, dtype=float)
    scale = x.mean()
    ks = _ks(x, lambda v: sps.expon.cdf(v, scale=scale))
    ll = float(np.sum(sps.expon.logpdf(x, scale=scale)))
    return FitReport("exponential", {"scale": float(scale)}, ks, ll)


def fit_gamma(sample, min_size: int = 100) -> FitReport:
    """Moment-matched Gamma fit: shape = mean^2/variance."""
    x = np.asarray(sample, dtype=float)
    if len(x) < min_size:
        raise ValueError(f"need at least {min_size} observations")
    if np.any(x <= 0):
        raise ValueError("Gamma fit needs a positive sample")
    mean, var = x.mean(), x.var()
    if var == 0:
        raise ValueError("zero-variance sample")
    shape = mean ** 2 / var
    scale = var / mean
    ks = _ks(x, lambda v: sps.gamma.cdf(v, shape, scale=scale))
    ll = float(np.sum(sps.gamma.logpdf(x, shape, scale=scale)))
    return FitReport("gamma", {"shape": float(shape), "scale": float(scale)}, ks, ll)


def fit_lognormal(sample) -> FitReport:
    """Log-moment fit; reports the equality index beta = 1/sqrt(2 sigma^2)."""
    x = np.asarray(sample, dtype=float)
    if np.any(x <= 0):
        raise ValueError("lognormal fit needs a positive sample")
    logs = np.log(x)
    mu, sigma = logs.mean(), logs.std()
    if sigma == 0:
        raise ValueError("zero-variance sample")
    x0 = float(np.exp(mu))
    ks = _ks(x, lambda v: sps.lognorm.cdf(v, sigma, scale=x0))
    ll = float(np.sum(sps.lognorm.logpdf(x, sigma, scale=x0)))
    beta = 1.0 / np.sqrt(2.0 * sigma ** 2)
    return FitReport("lognormal", {"x0": x0, "sigma": float(sigma)}, ks, ll, {"gibrat_beta": float(beta)})


def fit_weibull(sample) -> FitReport:
    x = np.asarray(sample, dtype=float)
    if np.any(x <= 0):
        raise ValueError("Weibull fit needs a positive sample")
    shape, _, scale = sps.weibull_min.fit(x, floc=0.0)
    ks = _ks(x, lambda v: sps.weibull_min.cdf(v, shape, scale=scale))
    ll = float(np.sum(sps.weibull_min.logpdf(x, shape, scale=scale)))
    return FitReport("weibull", {"shape": float(shape), "scale": float(scale)}, ks, ll)


def fit_pareto_tail(sample, top_fraction: float = 0.05) -> FitReport:
    hill = hill_tail_exponent(sample, top_fraction)
    return FitReport(
        "pareto-tail",
        {"alpha": hill.alpha, "density_exponent": hill.density_exponent, "k": hill.k},
        np.nan,
        extras={"no_power_law": hill.no_power_law},
    )


_FITTERS = {
    "exponential": fit_exponential,
    "gamma": fit_gamma,
    "lognormal": fit_lognormal,
    "weibull": fit_weibull,
}


def best_fit(sample, families: Sequence[str] = ("exponential", "gamma", "lognormal", "weibull")) -> FitReport:
    reports = []
    for fam in families:
        try:
            reports.append(_FITTERS[fam](sample))
        except ValueError:
            continue
    if not reports:
        raise ValueError("no candidate family could be fitted")
    return min(reports, key=lambda r: r.ks)


def log_log_density_slope(sample, x_min: float, x_max: float, bins: int = 20) -> float:
    """OLS slope of the log density over log-spaced bins in [x_min, x_max]."""
    x = np.asarray(sample, dtype=float)
    x = x[(x >= x_min) & (x <= x_max)]
    if len(x) < 50:
        raise ValueError("too few points inside the fit window")
    edges = np.logspace(np.log10(x_min), np.log10(x_max), bins + 1)
    hist, _ = np.histogram(x, bins=edges)
    centers = np.sqrt(edges[1:] * edges[:-1])
    widths = np.diff(edges)
    dens = hist / widths
    keep = dens > 0
    if np.count_nonzero(keep) < 4:
        raise ValueError("too few occupied bins for a slope fit")
    return float(np.polyfit(np.log(centers[keep]), np.log(dens[keep]), 1)[0])
