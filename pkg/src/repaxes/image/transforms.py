"""Estimator-style wrappers over the functional image transforms.

Each class holds its parameter as a constructor argument and exposes
``transform(img)``, mirroring the fit/transform convention (there is nothing
to fit; ``fit`` returns self for pipeline compatibility).
"""

import numpy as np

from ..base import ParamsMixin
from .color import brightness_shift, hue_shift, saturation_shift
from .jpeg import jpeg_compress


class _StatelessImageTransform(ParamsMixin):
    def fit(self, images=None, y=None):
        return self

    def transform(self, img: np.ndarray) -> np.ndarray:
        raise NotImplementedError


class HueShift(_StatelessImageTransform):
    """Cyclic hue rotation by ``shift`` in [-0.5, 0.5]."""

    def __init__(self, shift: float = 0.0):
        self.shift = shift

    def transform(self, img: np.ndarray) -> np.ndarray:
        return hue_shift(img, self.shift)


class SaturationShift(_StatelessImageTransform):
    """Additive saturation change by ``shift`` in [-2, 2], clamped."""

    def __init__(self, shift: float = 0.0):
        self.shift = shift

    def transform(self, img: np.ndarray) -> np.ndarray:
        return saturation_shift(img, self.shift)


class BrightnessShift(_StatelessImageTransform):
    """Additive value-channel change by ``shift`` in [-2, 2], clamped."""

    def __init__(self, shift: float = 0.0):
        self.shift = shift

    def transform(self, img: np.ndarray) -> np.ndarray:
        return brightness_shift(img, self.shift)


class JpegCompression(_StatelessImageTransform):
    """Baseline JPEG encode/decode at ``quality`` in [0, 100]."""

    def __init__(self, quality: float = 100.0):
        self.quality = quality

    def transform(self, img: np.ndarray) -> np.ndarray:
        return jpeg_compress(img, self.quality)
