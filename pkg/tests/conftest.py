"""Shared test fixtures: deterministic synthetic imagery and rank stats."""

import numpy as np
import pytest
from numpy.lib.stride_tricks import sliding_window_view

from linemend import Image, save_pnm


def _blur_axis(a, axis):
    k = np.array([1.0, 4.0, 6.0, 4.0, 1.0]) / 16.0
    pad = [(0, 0), (0, 0)]
    pad[axis] = (2, 2)
    return sliding_window_view(np.pad(a, pad, mode="edge"), 5, axis=axis) @ k


def natural_image(height=512, width=512, seed=7) -> Image:
    """Photo-like grayscale test image: smooth shading, a few hard edges,
    band-limited texture. Integer-valued so it survives PNM round trips."""
    rng = np.random.default_rng(seed)
    r, c = np.meshgrid(np.arange(height, dtype=float), np.arange(width, dtype=float), indexing="ij")
    base = (
        128.0
        + 52.0 * np.sin(2 * np.pi * c / 197 + 0.9) * np.cos(2 * np.pi * r / 233 - 0.4)
        + 23.0 * np.cos(2 * np.pi * (r + 0.6 * c) / 101)
    )
    base += np.where((r - 150) ** 2 + (c - 340) ** 2 < 85**2, 45.0, 0.0)
    base -= np.where(np.abs(r - 0.7 * c - 60) < 12, 35.0, 0.0)
    base += np.where((r > 300) & (r < 420) & (c > 80) & (c < 190), 30.0, 0.0)
    texture = rng.standard_normal((height, width))
    for _ in range(2):
        texture = _blur_axis(_blur_axis(texture, 0), 1)
    return Image(np.floor(np.clip(base + 14.0 * texture, 0.0, 255.0) + 0.5))


def spearman(x, y) -> float:
    """Spearman rank correlation with average ranks for ties."""

    def ranks(v):
        v = np.asarray(v, dtype=float)
        order = np.argsort(v, kind="stable")
        out = np.empty(len(v))
        sv = v[order]
        i = 0
        while i < len(v):
            j = i
            while j + 1 < len(v) and sv[j + 1] == sv[i]:
                j += 1
            out[order[i : j + 1]] = (i + j) / 2.0 + 1.0
            i = j + 1
        return out

    rx, ry = ranks(x), ranks(y)
    rx -= rx.mean()
    ry -= ry.mean()
    return float((rx * ry).sum() / np.sqrt((rx * rx).sum() * (ry * ry).sum()))


@pytest.fixture(scope="session")
def natural512() -> Image:
    return natural_image()


@pytest.fixture(scope="session")
def natural512_pgm(natural512, tmp_path_factory):
    path = tmp_path_factory.mktemp("images") / "natural512.pgm"
    save_pnm(natural512, path)
    return path
