"""Image/mask data model and a binary PNM (PGM/PPM) codec.

Intensities are stored as float64 so that fractional predictions survive
intermediate processing; quantization to 8-bit happens only in
:func:`save_pnm`. Masks are boolean grids where True marks a degraded
pixel. The stored intensity of a degraded pixel is never trusted: the
mask is the sole source of truth for missingness.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from pathlib import Path

import numpy as np


class PnmError(ValueError):
    """Malformed or unsupported PNM file content."""


class DimensionMismatch(ValueError):
    """Paired image/mask grids have different dimensions."""


@dataclass(frozen=True)
class Image:
    """A height x width x channels grid of real-valued intensities.

    ``channels`` is 1 (grayscale) or 3 (RGB). The nominal range is
    [0, 255]; construction only enforces finiteness so that synthetic
    test fields and unclamped predictions can be represented.
    """

    data: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.data, dtype=np.float64)
        if arr.ndim == 2:
            arr = arr[:, :, np.newaxis]
        if arr.ndim != 3:
            raise ValueError(f"image data must be 2-D or 3-D, got ndim={arr.ndim}")
        if arr.shape[2] not in (1, 3):
            raise ValueError(f"channel count must be 1 or 3, got {arr.shape[2]}")
        if arr.shape[0] < 1 or arr.shape[1] < 1:
            raise ValueError(f"image must be at least 1x1, got {arr.shape[1]}x{arr.shape[0]}")
        if not np.isfinite(arr).all():
            raise ValueError("image samples must be finite")
        object.__setattr__(self, "data", arr)

    @property
    def height(self) -> int:
        return self.data.shape[0]

    @property
    def width(self) -> int:
        return self.data.shape[1]

    @property
    def channels(self) -> int:
        return self.data.shape[2]


@dataclass(frozen=True)
class Mask:
    """Boolean degradation map; True = pixel is missing."""

    degraded: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.degraded)
        if arr.ndim != 2:
            raise ValueError(f"mask must be 2-D, got ndim={arr.ndim}")
        if arr.shape[0] < 1 or arr.shape[1] < 1:
            raise ValueError(f"mask must be at least 1x1, got {arr.shape[1]}x{arr.shape[0]}")
        object.__setattr__(self, "degraded", arr.astype(bool))

    @property
    def height(self) -> int:
        return self.degraded.shape[0]

    @property
    def width(self) -> int:
        return self.degraded.shape[1]

    @property
    def degraded_count(self) -> int:
        return int(self.degraded.sum())


def require_same_grid(a: Image | Mask, b: Image | Mask, a_name: str = "image", b_name: str = "mask") -> None:
    """Raise DimensionMismatch unless both grids share width and height."""
    if (a.height, a.width) != (b.height, b.width):
        raise DimensionMismatch(
            f"{a_name} is {a.width}x{a.height} but {b_name} is {b.width}x{b.height}"
        )


_WHITESPACE = b" \t\r\n\x0b\x0c"


def _next_token(data: bytes, pos: int, field: str) -> tuple[bytes, int]:
    """Read one header token, skipping whitespace and '#' comment lines."""
    n = len(data)
    while pos < n:
        ch = data[pos : pos + 1]
        if ch in b"#":
            while pos < n and data[pos : pos + 1] not in b"\r\n":
                pos += 1
        elif ch in _WHITESPACE:
            pos += 1
        else:
            break
    if pos >= n:
        raise PnmError(f"truncated header: missing {field}")
    start = pos
    while pos < n and data[pos : pos + 1] not in _WHITESPACE and data[pos : pos + 1] != b"#":
        pos += 1
    return data[start:pos], pos


def _int_token(data: bytes, pos: int, field: str) -> tuple[int, int]:
    tok, pos = _next_token(data, pos, field)
    if not tok.isdigit():
        raise PnmError(f"invalid {field} {tok!r}")
    return int(tok), pos


def load_pnm(path: str | os.PathLike) -> Image:
    """Load a binary PGM ("P5", grayscale) or PPM ("P6", RGB) file.

    Only maxval 255 is supported; samples are widened to float64
    without rescaling.
    """
    data = Path(path).read_bytes()
    magic, pos = _next_token(data, 0, "magic")
    if magic == b"P5":
        channels = 1
    elif magic == b"P6":
        channels = 3
    else:
        raise PnmError(f"unsupported magic {magic!r} (expected P5 or P6)")
    width, pos = _int_token(data, pos, "width")
    height, pos = _int_token(data, pos, "height")
    maxval, pos = _int_token(data, pos, "maxval")
    if width < 1 or height < 1:
        raise PnmError(f"invalid dimensions {width}x{height}")
    if maxval != 255:
        raise PnmError(f"unsupported maxval {maxval} (only 255)")
    if pos >= len(data) or data[pos : pos + 1] not in _WHITESPACE:
        raise PnmError("malformed header: missing whitespace before pixel data")
    pos += 1
    expected = width * height * channels
    payload = data[pos : pos + expected]
    if len(payload) < expected:
        raise PnmError(f"truncated payload: expected {expected} bytes, got {len(payload)}")
    samples = np.frombuffer(payload, dtype=np.uint8).astype(np.float64)
    return Image(samples.reshape(height, width, channels))


def save_pnm(image: Image, path: str | os.PathLike) -> None:
    """Write a binary P5/P6 file, rounding samples half-up to integers.

    Requires all samples in [0, 255]; round-tripping an integer-valued
    image through save/load reproduces it exactly.
    """
    data = image.data
    if data.min() < 0.0 or data.max() > 255.0:
        raise ValueError(
            f"samples outside [0, 255] (min {data.min():g}, max {data.max():g}); clamp before saving"
        )
    quantized = np.floor(data + 0.5).astype(np.uint8)
    magic = "P5" if image.channels == 1 else "P6"
    header = f"{magic}\n{image.width} {image.height}\n255\n".encode("ascii")
    Path(path).write_bytes(header + quantized.tobytes())


def mask_from_pgm(path: str | os.PathLike) -> Mask:
    """Read a P5 file as a mask: pixel value 0 = intact, nonzero = degraded."""
    img = load_pnm(path)
    if img.channels != 1:
        raise PnmError("mask must be a grayscale P5 file")
    return Mask(img.data[:, :, 0] != 0)


def mask_to_pgm(mask: Mask, path: str | os.PathLike) -> None:
    """Write a mask as a P5 file using the 0 = intact, 255 = degraded convention."""
    save_pnm(Image(np.where(mask.degraded, 255.0, 0.0)), path)
