"""Correlation matrices and their random-matrix null spectrum.

For N assets observed over T steps the sample correlation matrix of
iid data has eigenvalues confined (as N, T grow with Q = T/N fixed)
to [lambda_min, lambda_max] with

    lambda_{max,min} = 1 + 1/Q +- 2 sqrt(1/Q),

and density  rho(lam) = Q/(2 pi lam) sqrt((lambda_max - lam)(lam - lambda_min)).

Eigenvalues escaping the bulk carry structure; the classic example is
the market mode of a one-factor panel.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


def correlation_matrix(panel) -> np.ndarray:
    """Equal-time correlation of an N x T returns panel (rows = assets)."""
    r = np.asarray(panel, dtype=float)
    if r.ndim != 2:
        raise ValueError("panel must be 2-d (assets x observations)")
    n, t = r.shape
    if t < 2:
        raise ValueError("need at least two observations")
    stds = r.std(axis=1)
    dead = np.flatnonzero(stds == 0)
    if len(dead):
        raise ValueError(f"zero-variance asset(s): {dead.tolist()}")
    rho = np.corrcoef(r)
    np.fill_diagonal(rho, 1.0)
    return np.clip(rho, -1.0, 1.0)


def distance_matrix(rho) -> np.ndarray:
    """d_ij = sqrt(2 (1 - rho_ij)), mapping [-1, 1] onto [2, 0]."""
    rho = np.asarray(rho, dtype=float)
    d = np.sqrt(np.maximum(2.0 * (1.0 - rho), 0.0))
    np.fill_diagonal(d, 0.0)
    return d


def mp_bounds(q: float) -> tuple:
    lo = 1.0 + 1.0 / q - 2.0 * np.sqrt(1.0 / q)
    hi = 1.0 + 1.0 / q + 2.0 * np.sqrt(1.0 / q)
    return float(lo), float(hi)


def mp_density(lam, q: float) -> np.ndarray:
    lam = np.asarray(lam, dtype=float)
    lo, hi = mp_bounds(q)
    out = np.zeros_like(lam)
    inside = (lam > lo) & (lam < hi)
    out[inside] = q / (2 * np.pi * lam[inside]) * np.sqrt((hi - lam[inside]) * (lam[inside] - lo))
    return out


def _mp_cdf(lam: np.ndarray, q: float) -> np.ndarray:
    lo, hi = mp_bounds(q)
    grid = np.linspace(lo, hi, 4001)
    dens = mp_density(grid, q)
    cdf = np.cumsum((dens[1:] + dens[:-1]) * 0.5 * np.diff(grid))
    cdf = np.concatenate([[0.0], cdf])
    cdf /= cdf[-1]
    return np.interp(lam, grid, cdf, left=0.0, right=1.0)


@dataclass
class MPReport:
    eigenvalues: np.ndarray
    q: float
    lambda_min: float
    lambda_max: float
    fraction_inside: float
    ks_distance: float


def mp_spectrum(panel_or_rho, q: float = None) -> MPReport:
    """Spectrum of a correlation matrix against the random-matrix null.

    Given a raw panel the matrix and Q = T/N are computed from its
    shape; given a correlation matrix, Q must be supplied.  Reports the
    sorted eigenvalues, the null bounds, the fraction of eigenvalues
    inside them and a KS-style distance between the empirical spectral
    CDF and the null CDF.
    """
    m = np.asarray(panel_or_rho, dtype=float)
    if m.shape[0] == m.shape[1] and np.allclose(m, m.T) and np.allclose(np.diag(m), 1.0):
        rho = m
        if q is None:
            raise ValueError("Q = T/N must be given alongside a correlation matrix")
    else:
        n, t = m.shape
        if n < 4:
            raise ValueError("need at least 4 assets")
        rho = correlation_matrix(m)
        q = t / n
    eig = np.sort(np.linalg.eigvalsh(rho))
    lo, hi = mp_bounds(q)
    inside = np.count_nonzero((eig >= lo) & (eig <= hi)) / len(eig)
    emp = np.arange(1, len(eig) + 1) / len(eig)
    ks = float(np.max(np.abs(emp - _mp_cdf(eig, q))))
    return MPReport(eig, float(q), lo, hi, float(inside), ks)
