"""Structural similarity: single-patch SSIM and sliding-window mean (MSSIM)."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view


@dataclass(frozen=True)
class SsimParams:
    dynamic_range: float = 255.0
    k1: float = 0.01
    k2: float = 0.03
    window_size: int = 11
    sigma: float = 1.5

    @property
    def c1(self) -> float:
        return (self.k1 * self.dynamic_range) ** 2

    @property
    def c2(self) -> float:
        return (self.k2 * self.dynamic_range) ** 2


def gaussian_window(size: int = 11, sigma: float = 1.5) -> np.ndarray:
    """Normalized 2-D Gaussian weights (sum 1)."""
    half = (size - 1) / 2.0
    coords = np.arange(size, dtype=np.float64) - half
    g = np.exp(-(coords**2) / (2.0 * sigma**2))
    kernel = np.outer(g, g)
    return kernel / kernel.sum()


def ssim(x: np.ndarray, y: np.ndarray, params: SsimParams = SsimParams(),
         weights: np.ndarray | None = None) -> float:
    """SSIM of two equal-size patches.

    Statistics are weighted means/variances/covariance; uniform weights
    by default.  Symmetric in x and y; 1.0 iff the patches are identical.
    """
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if x.shape != y.shape:
        raise ValueError(f"patch shapes differ: {x.shape} vs {y.shape}")
    if weights is None:
        weights = np.full(x.shape, 1.0 / x.size)
    mu_x = float((weights * x).sum())
    mu_y = float((weights * y).sum())
    dx = x - mu_x
    dy = y - mu_y
    var_x = float((weights * dx * dx).sum())
    var_y = float((weights * dy * dy).sum())
    cov = float((weights * dx * dy).sum())
    c1, c2 = params.c1, params.c2
    return ((2.0 * mu_x * mu_y + c1) * (2.0 * cov + c2)) / (
        (mu_x * mu_x + mu_y * mu_y + c1) * (var_x + var_y + c2)
    )


def mssim(x: np.ndarray, y: np.ndarray, params: SsimParams = SsimParams()) -> float:
    """Mean SSIM over every stride-1 window position of two equal-size images."""
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if x.shape != y.shape:
        raise ValueError(f"image shapes differ: {x.shape} vs {y.shape}")
    win = params.window_size
    if x.shape[0] < win or x.shape[1] < win:
        raise ValueError(f"images smaller than the {win}x{win} window: {x.shape}")

    kernel = gaussian_window(win, params.sigma)
    xv = sliding_window_view(x, (win, win))
    yv = sliding_window_view(y, (win, win))
    c1, c2 = params.c1, params.c2

    total = 0.0
    count = 0
    rows_per_chunk = max(1, 2_000_000 // (xv.shape[1] * win * win))
    for r0 in range(0, xv.shape[0], rows_per_chunk):
        xw = xv[r0:r0 + rows_per_chunk]
        yw = yv[r0:r0 + rows_per_chunk]
        mu_x = np.einsum("abij,ij->ab", xw, kernel)
        mu_y = np.einsum("abij,ij->ab", yw, kernel)
        dx = xw - mu_x[..., None, None]
        dy = yw - mu_y[..., None, None]
        var_x = np.einsum("abij,abij,ij->ab", dx, dx, kernel)
        var_y = np.einsum("abij,abij,ij->ab", dy, dy, kernel)
        cov = np.einsum("abij,abij,ij->ab", dx, dy, kernel)
        values = ((2.0 * mu_x * mu_y + c1) * (2.0 * cov + c2)) / (
            (mu_x * mu_x + mu_y * mu_y + c1) * (var_x + var_y + c2)
        )
        total += float(values.sum())
        count += values.size
    return total / count
