"""Estimators and diagnostics for simulated tapes and synthetic series."""

from econolab.stats.returns import (
    ClockedSeries,
    acf,
    excess_kurtosis_by_scale,
    hurst_exponent,
    log_returns,
    resample_clock,
    trade_count_distribution,
    trade_sign_acf,
)
from econolab.stats.tails import (
    FitReport,
    best_fit,
    fit_exponential,
    fit_gamma,
    fit_lognormal,
    fit_weibull,
    gini,
    hill_tail_exponent,
)
from econolab.stats.covariance import (
    epps_effect_probe,
    fourier_covariance,
    fourier_dp_coefficients,
    hy_covariance,
    realized_covariance,
    synthetic_asynchronous_pair,
)
from econolab.stats.rmt import correlation_matrix, distance_matrix, mp_bounds, mp_density, mp_spectrum
from econolab.stats.tree import AssetTree, central_vertex, mean_occupation_layer, mst_tree
from econolab.stats.bookstats import book_diagnostics, depth_balance_check

__all__ = [
    "ClockedSeries",
    "acf",
    "excess_kurtosis_by_scale",
    "hurst_exponent",
    "log_returns",
    "resample_clock",
    "trade_count_distribution",
    "trade_sign_acf",
    "FitReport",
    "best_fit",
    "fit_exponential",
    "fit_gamma",
    "fit_lognormal",
    "fit_weibull",
    "gini",
    "hill_tail_exponent",
    "epps_effect_probe",
    "fourier_covariance",
    "fourier_dp_coefficients",
    "hy_covariance",
    "realized_covariance",
    "synthetic_asynchronous_pair",
    "correlation_matrix",
    "distance_matrix",
    "mp_bounds",
    "mp_density",
    "mp_spectrum",
    "AssetTree",
    "central_vertex",
    "mean_occupation_layer",
    "mst_tree",
    "book_diagnostics",
    "depth_balance_check",
]
