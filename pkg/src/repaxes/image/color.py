"""HSV color ops: conversion, parametric channel shifts, mean factors.

All images are H x W x 3 float arrays in [0, 1]. Conversions use the
standard hexcone model with every channel scaled to [0, 1]; internal math
runs in float64 so round trips stay well inside 1e-5.
"""

from dataclasses import dataclass

import numpy as np

from ..errors import ParameterError
from ..validation import as_image

# Resultant length below which a circular hue mean is reported as 0 with the
# degenerate flag set (antipodal hues cancel to ~float-noise length).
HUE_DEGENERACY_THRESHOLD = 1e-3

HUE_SHIFT_RANGE = (-0.5, 0.5)
SATURATION_SHIFT_RANGE = (-2.0, 2.0)
BRIGHTNESS_SHIFT_RANGE = (-2.0, 2.0)


def _check_param(value: float, low: float, high: float, name: str) -> float:
    v = float(value)
    if not (low <= v <= high) or not np.isfinite(v):
        raise ParameterError(f"{name} must lie in [{low}, {high}], got {value}")
    return v


def rgb_to_hsv(img: np.ndarray) -> np.ndarray:
    """Convert an RGB image in [0,1] to HSV with all channels in [0,1].

    Gray pixels get hue 0 by convention; black pixels get saturation 0.
    """
    rgb = as_image(img).astype(np.float64)
    r, g, b = rgb[..., 0], rgb[..., 1], rgb[..., 2]
    maxc = rgb.max(axis=-1)
    minc = rgb.min(axis=-1)
    delta = maxc - minc

    v = maxc
    s = np.where(maxc > 0, delta / np.where(maxc > 0, maxc, 1.0), 0.0)

    safe = np.where(delta > 0, delta, 1.0)
    h_r = ((g - b) / safe) % 6.0
    h_g = (b - r) / safe + 2.0
    h_b = (r - g) / safe + 4.0
    h = np.select([r == maxc, g == maxc], [h_r, h_g], default=h_b) / 6.0
    h = np.where(delta > 0, h % 1.0, 0.0)

    return np.stack([h, s, v], axis=-1).astype(np.float32)


def hsv_to_rgb(hsv: np.ndarray) -> np.ndarray:
    """Convert an HSV image with channels in [0,1] back to RGB in [0,1]."""
    arr = as_image(hsv, name="hsv").astype(np.float64)
    h, s, v = arr[..., 0], arr[..., 1], arr[..., 2]
    h6 = (h % 1.0) * 6.0
    i = np.floor(h6).astype(np.int64) % 6
    f = h6 - np.floor(h6)
    p = v * (1.0 - s)
    q = v * (1.0 - s * f)
    t = v * (1.0 - s * (1.0 - f))

    r = np.choose(i, [v, q, p, p, t, v])
    g = np.choose(i, [t, v, v, q, p, p])
    b = np.choose(i, [p, p, t, v, v, q])
    rgb = np.stack([r, g, b], axis=-1)
    return np.clip(rgb, 0.0, 1.0).astype(np.float32)


def hue_shift(img: np.ndarray, shift: float) -> np.ndarray:
    """Rotate every pixel's hue by ``shift`` (cyclic, mod 1)."""
    h = _check_param(shift, *HUE_SHIFT_RANGE, name="hue shift")
    hsv = rgb_to_hsv(img)
    hsv[..., 0] = (hsv[..., 0] + np.float32(h)) % np.float32(1.0)
    return hsv_to_rgb(hsv)


def saturation_shift(img: np.ndarray, shift: float) -> np.ndarray:
    """Add ``shift`` to every pixel's saturation, clamped to [0,1]."""
    s = _check_param(shift, *SATURATION_SHIFT_RANGE, name="saturation shift")
    hsv = rgb_to_hsv(img)
    hsv[..., 1] = np.clip(hsv[..., 1] + np.float32(s), 0.0, 1.0)
    return hsv_to_rgb(hsv)


def brightness_shift(img: np.ndarray, shift: float) -> np.ndarray:
    """Add ``shift`` to every pixel's value channel, clamped to [0,1]."""
    b = _check_param(shift, *BRIGHTNESS_SHIFT_RANGE, name="brightness shift")
    hsv = rgb_to_hsv(img)
    hsv[..., 2] = np.clip(hsv[..., 2] + np.float32(b), 0.0, 1.0)
    return hsv_to_rgb(hsv)


@dataclass(frozen=True)
class MeanHsv:
    """Per-image HSV summary used as informativeness ground truth.

    ``hue`` is a circular mean in [0,1). When opposing hues cancel (resultant
    length under HUE_DEGENERACY_THRESHOLD) it is reported as 0.0 with
    ``hue_degenerate`` set.
    """

    hue: float
    saturation: float
    value: float
    hue_degenerate: bool = False


def mean_hsv(img: np.ndarray) -> MeanHsv:
    """Circular-mean hue plus arithmetic mean saturation and value."""
    hsv = rgb_to_hsv(img).astype(np.float64)
    angles = 2.0 * np.pi * hsv[..., 0]
    c = float(np.mean(np.cos(angles)))
    s = float(np.mean(np.sin(angles)))
    resultant = float(np.hypot(c, s))
    if resultant < HUE_DEGENERACY_THRESHOLD:
        hue, degenerate = 0.0, True
    else:
        hue, degenerate = float((np.arctan2(s, c) / (2.0 * np.pi)) % 1.0), False
    return MeanHsv(
        hue=hue,
        saturation=float(np.mean(hsv[..., 1])),
        value=float(np.mean(hsv[..., 2])),
        hue_degenerate=degenerate,
    )
