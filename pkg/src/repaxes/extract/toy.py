"""Toy extractors: fixed seeded random-projection pipelines.

These stand in for large pretrained models in self-contained runs. They are
deliberately untrained; what matters is determinism and sensitivity to every
implemented transform.
"""

import numpy as np

from ..errors import ValidationError
from ..seeds import rng_for
from ..validation import as_clip, as_image
from .base import FeatureExtractor

_MEL_BREAK_HZ = 700.0
_MEL_SCALE = 2595.0


def bilinear_resize(img: np.ndarray, height: int, width: int) -> np.ndarray:
    """Bilinear resample of an H x W x C image (align-corners geometry)."""
    src = np.asarray(img, dtype=np.float64)
    src_h, src_w = src.shape[0], src.shape[1]
    ys = np.linspace(0.0, src_h - 1.0, height)
    xs = np.linspace(0.0, src_w - 1.0, width)
    y0 = np.floor(ys).astype(np.int64)
    x0 = np.floor(xs).astype(np.int64)
    y1 = np.minimum(y0 + 1, src_h - 1)
    x1 = np.minimum(x0 + 1, src_w - 1)
    wy = (ys - y0)[:, None, None]
    wx = (xs - x0)[None, :, None]
    top = src[y0][:, x0] * (1 - wx) + src[y0][:, x1] * wx
    bottom = src[y1][:, x0] * (1 - wx) + src[y1][:, x1] * wx
    return (top * (1 - wy) + bottom * wy).astype(np.float32)


def _hz_to_mel(hz):
    return _MEL_SCALE * np.log10(1.0 + np.asarray(hz, dtype=np.float64) / _MEL_BREAK_HZ)


def _mel_to_hz(mel):
    return _MEL_BREAK_HZ * (10.0 ** (np.asarray(mel, dtype=np.float64) / _MEL_SCALE) - 1.0)


def mel_filterbank(n_bands: int, n_fft: int, sample_rate: int) -> np.ndarray:
    """Triangular mel filters: (n_bands, n_fft // 2 + 1)."""
    n_bins = n_fft // 2 + 1
    freqs = np.linspace(0.0, sample_rate / 2.0, n_bins)
    edges = _mel_to_hz(np.linspace(0.0, _hz_to_mel(sample_rate / 2.0), n_bands + 2))
    bank = np.zeros((n_bands, n_bins))
    for band in range(n_bands):
        lo, center, hi = edges[band], edges[band + 1], edges[band + 2]
        rising = (freqs - lo) / max(center - lo, 1e-9)
        falling = (hi - freqs) / max(hi - center, 1e-9)
        bank[band] = np.clip(np.minimum(rising, falling), 0.0, None)
    return bank


class ToyImageExtractor(FeatureExtractor):
    """Downsample to 16x16, flatten, seeded Gaussian projection, ReLU."""

    modality = "image"

    def __init__(self, seed: int = 0, dim: int = 64):
        if dim < 2:
            raise ValidationError(f"dim must be >= 2, got {dim}")
        self.seed = seed
        self.dim = dim
        self.extractor_id = f"toy-image:seed={seed}:dim={dim}"
        flat = 16 * 16 * 3
        self._projection = (
            rng_for(seed, "toy-image-projection").standard_normal((dim, flat)) / np.sqrt(flat)
        ).astype(np.float32)

    def _extract(self, media) -> np.ndarray:
        img = as_image(media)
        small = bilinear_resize(img, 16, 16).reshape(-1)
        return np.maximum(self._projection @ small, 0.0)


class ToyAudioExtractor(FeatureExtractor):
    """64-band log-mel statistics (mean + std per band) under a seeded
    Gaussian projection."""

    modality = "audio"

    N_MELS = 64
    N_FFT = 1024
    HOP = 256
    MIN_DURATION_S = 0.5

    def __init__(self, seed: int = 0, dim: int = 64, sample_rate: int = 16000):
        if dim < 2:
            raise ValidationError(f"dim must be >= 2, got {dim}")
        self.seed = seed
        self.dim = dim
        self.sample_rate = sample_rate
        self.extractor_id = f"toy-audio:seed={seed}:dim={dim}"
        self._window = np.hanning(self.N_FFT)
        self._bank = mel_filterbank(self.N_MELS, self.N_FFT, sample_rate)
        stats = 2 * self.N_MELS
        self._projection = (
            rng_for(seed, "toy-audio-projection").standard_normal((dim, stats)) / np.sqrt(stats)
        ).astype(np.float32)

    def _extract(self, media) -> np.ndarray:
        clip = as_clip(media)
        min_samples = int(self.MIN_DURATION_S * self.sample_rate)
        if clip.size < min_samples:
            raise ValidationError(
                f"clip of {clip.size} samples is shorter than "
                f"{self.MIN_DURATION_S}s at {self.sample_rate} Hz"
            )
        x = clip.astype(np.float64)
        frames = np.lib.stride_tricks.sliding_window_view(x, self.N_FFT)[:: self.HOP]
        power = np.abs(np.fft.rfft(frames * self._window, axis=1)) ** 2
        mel = power @ self._bank.T
        log_mel = np.log(mel + 1e-10)
        stats = np.concatenate([log_mel.mean(axis=0), log_mel.std(axis=0)])
        return self._projection @ stats.astype(np.float32)
