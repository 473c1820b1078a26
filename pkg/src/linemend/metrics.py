"""PSNR and single-scale SSIM for 8-bit-range images.

PSNR uses the whole-image MSE over all channels with peak 255. SSIM uses
the standard 11x11 Gaussian window (sigma 1.5), K1 = 0.01, K2 = 0.03,
dynamic range 255, averaged over valid window positions; color images
are scored on their luminance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from .raster import DimensionMismatch, Image, require_same_grid

PEAK = 255.0
_WINDOW = 11
_SIGMA = 1.5
_K1 = 0.01
_K2 = 0.03


@dataclass(frozen=True)
class QualityReport:
    psnr_db: float
    ssim: float


def _require_comparable(reference: Image, test: Image) -> None:
    require_same_grid(reference, test, "reference", "test")
    if reference.channels != test.channels:
        raise DimensionMismatch(
            f"reference has {reference.channels} channels but test has {test.channels}"
        )


def psnr(reference: Image, test: Image) -> float:
    """Peak signal-to-noise ratio in dB; +inf when the images are identical."""
    _require_comparable(reference, test)
    mse = float(np.mean((reference.data - test.data) ** 2))
    if mse == 0.0:
        return math.inf
    return 10.0 * math.log10(PEAK * PEAK / mse)


def _luminance(image: Image) -> np.ndarray:
    if image.channels == 1:
        return image.data[:, :, 0]
    d = image.data
    return 0.299 * d[:, :, 0] + 0.587 * d[:, :, 1] + 0.114 * d[:, :, 2]


def _gaussian_window() -> np.ndarray:
    i = np.arange(_WINDOW) - (_WINDOW - 1) / 2
    g = np.exp(-(i * i) / (2.0 * _SIGMA * _SIGMA))
    return g / g.sum()


_GAUSS = _gaussian_window()


def _windowed_mean(plane: np.ndarray) -> np.ndarray:
    # Separable Gaussian-weighted mean at every fully interior (valid)
    # window position; output is (h-10) x (w-10).
    v = sliding_window_view(plane, _WINDOW, axis=0) @ _GAUSS
    return sliding_window_view(v, _WINDOW, axis=1) @ _GAUSS


def ssim(reference: Image, test: Image) -> float:
    """Mean structural similarity over all valid 11x11 window positions."""
    _require_comparable(reference, test)
    if reference.height < _WINDOW or reference.width < _WINDOW:
        raise ValueError(
            f"image {reference.width}x{reference.height} smaller than the {_WINDOW}x{_WINDOW} window"
        )
    x = _luminance(reference)
    y = _luminance(test)
    mu_x = _windowed_mean(x)
    mu_y = _windowed_mean(y)
    var_x = _windowed_mean(x * x) - mu_x * mu_x
    var_y = _windowed_mean(y * y) - mu_y * mu_y
    cov = _windowed_mean(x * y) - mu_x * mu_y
    c1 = (_K1 * PEAK) ** 2
    c2 = (_K2 * PEAK) ** 2
    score = ((2.0 * mu_x * mu_y + c1) * (2.0 * cov + c2)) / (
        (mu_x * mu_x + mu_y * mu_y + c1) * (var_x + var_y + c2)
    )
    return float(score.mean())


def evaluate(reference: Image, test: Image) -> QualityReport:
    """Score ``test`` against ``reference`` with both metrics."""
    return QualityReport(psnr_db=psnr(reference, test), ssim=ssim(reference, test))
