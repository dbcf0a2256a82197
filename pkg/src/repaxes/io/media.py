"""Media carriers: 8-bit PNG images and 16-bit PCM WAV audio."""

from pathlib import Path

import numpy as np
from PIL import Image
from scipy.io import wavfile
from scipy.signal import resample_poly

from ..errors import TransformError, ValidationError
from ..validation import as_clip, as_image

DEFAULT_SAMPLE_RATE = 16000


def save_image_png(img: np.ndarray, path) -> None:
    """Write an RGB [0,1] image as 8-bit PNG (lossless carrier)."""
    rgb = as_image(img)
    as_bytes = np.clip(np.round(rgb * 255.0), 0, 255).astype(np.uint8)
    Image.fromarray(as_bytes, mode="RGB").save(path, format="PNG")


def load_image(path) -> np.ndarray:
    """Read an image file into H x W x 3 float32 in [0,1]."""
    file = Path(path)
    if not file.is_file():
        raise ValidationError(f"image not found: {file}")
    try:
        with Image.open(file) as handle:
            arr = np.asarray(handle.convert("RGB"), dtype=np.float32)
    except Exception as exc:
        raise TransformError(f"cannot decode image {file}: {exc}") from exc
    return arr / 255.0


def save_clip_wav(samples: np.ndarray, path, sample_rate: int = DEFAULT_SAMPLE_RATE) -> None:
    """Write a mono clip as 16-bit PCM WAV."""
    clip = as_clip(samples)
    pcm = np.clip(np.round(clip * 32767.0), -32768, 32767).astype(np.int16)
    wavfile.write(path, sample_rate, pcm)


def load_clip(path, target_rate: int = DEFAULT_SAMPLE_RATE) -> np.ndarray:
    """Read a WAV file as mono float32 in [-1,1] at ``target_rate``.

    Multichannel audio is averaged to mono; a differing source rate is
    resampled with a windowed-sinc polyphase filter.
    """
    file = Path(path)
    if not file.is_file():
        raise ValidationError(f"audio file not found: {file}")
    try:
        rate, data = wavfile.read(file)
    except Exception as exc:
        raise TransformError(f"cannot decode WAV {file}: {exc}") from exc

    samples = np.asarray(data, dtype=np.float64)
    if samples.ndim == 2:
        samples = samples.mean(axis=1)
    if np.issubdtype(np.asarray(data).dtype, np.integer):
        samples = samples / float(np.iinfo(np.asarray(data).dtype).max + 1)

    if rate != target_rate:
        from fractions import Fraction

        frac = Fraction(target_rate, int(rate))
        samples = resample_poly(samples, frac.numerator, frac.denominator)
    return np.clip(samples, -1.0, 1.0).astype(np.float32)
