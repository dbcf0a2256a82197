"""Parametric image transforms and HSV ground-truth factors."""

from .color import (
    BRIGHTNESS_SHIFT_RANGE,
    HUE_SHIFT_RANGE,
    SATURATION_SHIFT_RANGE,
    MeanHsv,
    brightness_shift,
    hsv_to_rgb,
    hue_shift,
    mean_hsv,
    rgb_to_hsv,
    saturation_shift,
)
from .jpeg import JPEG_QUALITY_RANGE, jpeg_compress
from .transforms import BrightnessShift, HueShift, JpegCompression, SaturationShift

__all__ = [
    "BRIGHTNESS_SHIFT_RANGE",
    "HUE_SHIFT_RANGE",
    "SATURATION_SHIFT_RANGE",
    "JPEG_QUALITY_RANGE",
    "MeanHsv",
    "brightness_shift",
    "hsv_to_rgb",
    "hue_shift",
    "mean_hsv",
    "rgb_to_hsv",
    "saturation_shift",
    "jpeg_compress",
    "BrightnessShift",
    "HueShift",
    "JpegCompression",
    "SaturationShift",
]
