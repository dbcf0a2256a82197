"""JPEG round-trip degradation via the baseline codec."""

import io

import numpy as np
from PIL import Image

from ..errors import ParameterError, TransformError
from ..validation import as_image

JPEG_QUALITY_RANGE = (0.0, 100.0)


def jpeg_compress(img: np.ndarray, quality: float) -> np.ndarray:
    """Encode to baseline JPEG at ``quality`` and decode back.

    The continuous parameter is rounded to the nearest integer; 0 maps to 1
    because the codec's quality domain starts at 1. Output dimensions always
    equal input dimensions.
    """
    q = float(quality)
    if not (JPEG_QUALITY_RANGE[0] <= q <= JPEG_QUALITY_RANGE[1]) or not np.isfinite(q):
        raise ParameterError(f"jpeg quality must lie in [0, 100], got {quality}")
    q_int = max(1, int(round(q)))

    rgb = as_image(img)
    as_bytes = np.clip(np.round(rgb * 255.0), 0, 255).astype(np.uint8)
    try:
        buf = io.BytesIO()
        Image.fromarray(as_bytes, mode="RGB").save(buf, format="JPEG", quality=q_int)
        buf.seek(0)
        decoded = np.asarray(Image.open(buf).convert("RGB"), dtype=np.float32) / 255.0
    except Exception as exc:
        raise TransformError(f"jpeg codec failed at quality {q_int}: {exc}") from exc
    if decoded.shape != rgb.shape:
        raise TransformError(
            f"jpeg round trip changed shape {rgb.shape} -> {decoded.shape}"
        )
    return decoded.astype(np.float32)
