"""Fractional Gaussian noise via circulant embedding.

The Davies-Harte construction embeds the n-point fGn covariance in a
2n-point circulant matrix, diagonal in Fourier space, so one FFT pair
yields a sample with the exact target autocovariance

    gamma(k) = 0.5 * (|k+1|^{2H} - 2|k|^{2H} + |k-1|^{2H}),

the long-memory form gamma(k) ~ H(2H-1) k^{2H-2}.  Persistent sign
series are obtained by taking the sign of the noise.
"""

from __future__ import annotations

import numpy as np


def fgn_autocovariance(h: float, lags) -> np.ndarray:
    k = np.abs(np.asarray(lags, dtype=float))
    return 0.5 * ((k + 1) ** (2 * h) - 2 * k ** (2 * h) + np.abs(k - 1) ** (2 * h))


def fractional_gaussian_noise(h: float, n: int, rng: np.random.Generator) -> np.ndarray:
    """Sample n increments of fractional Brownian motion with Hurst h."""
    if not 0.0 < h < 1.0:
        raise ValueError("Hurst exponent must lie in (0, 1)")
    if n < 1:
        raise ValueError("need at least one sample")
    if h == 0.5:
        return rng.standard_normal(n)
    m = 1 << (int(np.ceil(np.log2(max(n, 2)))) + 1)  # power of two >= 2n
    gamma = fgn_autocovariance(h, np.arange(m // 2 + 1))
    row = np.concatenate([gamma, gamma[-2:0:-1]])
    eigs = np.fft.rfft(row).real
    eigs = np.maximum(eigs, 0.0)  # clip tiny negative round-off
    z = rng.standard_normal(m // 2 + 1) + 1j * rng.standard_normal(m // 2 + 1)
    z[0] = z[0].real * np.sqrt(2)
    z[-1] = z[-1].real * np.sqrt(2)
    spectrum = z * np.sqrt(eigs / (2 * m))
    sample = np.fft.irfft(spectrum, n=m) * m
    return sample[:n]


def fractional_brownian_motion(h: float, n: int, rng: np.random.Generator) -> np.ndarray:
    return np.cumsum(fractional_gaussian_noise(h, n, rng))


def persistent_signs(h: float, n: int, rng: np.random.Generator) -> np.ndarray:
    """+1/-1 series with power-law sign memory: ACF ~ k^{-2(1-h)}."""
    noise = fractional_gaussian_noise(h, n, rng)
    signs = np.where(noise >= 0, 1, -1).astype(np.int8)
    return signs
