"""Deterministic synthetic media: test images and audio clips."""

import numpy as np

from ..errors import ConfigurationError
from ..image.color import hsv_to_rgb
from ..seeds import rng_for

DEFAULT_SAMPLE_RATE = 16000


def gen_gradient_image(height: int = 64, width: int = 64) -> np.ndarray:
    """Smooth two-axis ramp; red rises left to right, green top to bottom."""
    if height < 1 or width < 1:
        raise ConfigurationError("image dimensions must be >= 1")
    x = np.linspace(0.0, 1.0, width, dtype=np.float32)
    y = np.linspace(0.0, 1.0, height, dtype=np.float32)
    img = np.empty((height, width, 3), dtype=np.float32)
    img[..., 0] = x[None, :]
    img[..., 1] = y[:, None]
    img[..., 2] = 0.5
    return img


def gen_speckle_image(seed: int, height: int = 64, width: int = 64) -> np.ndarray:
    """Noisy image concentrated around one per-seed base color.

    Built in HSV so the hue distribution is tight (circular mean well
    defined) while per-pixel speckle keeps the image non-constant.
    """
    if height < 1 or width < 1:
        raise ConfigurationError("image dimensions must be >= 1")
    rng = rng_for(seed, "speckle-image")
    base_hue = rng.uniform(0.0, 1.0)
    base_sat = rng.uniform(0.4, 0.9)
    base_val = rng.uniform(0.3, 0.8)
    hsv = np.empty((height, width, 3), dtype=np.float32)
    hsv[..., 0] = (base_hue + rng.normal(0.0, 0.02, size=(height, width))) % 1.0
    hsv[..., 1] = np.clip(base_sat + rng.normal(0.0, 0.05, size=(height, width)), 0.0, 1.0)
    hsv[..., 2] = np.clip(base_val + rng.normal(0.0, 0.05, size=(height, width)), 0.0, 1.0)
    return hsv_to_rgb(hsv)


def gen_sine_clip(
    frequency_hz: float,
    duration_s: float = 2.0,
    sample_rate: int = DEFAULT_SAMPLE_RATE,
    amplitude: float = 0.5,
) -> np.ndarray:
    """Pure sine tone, mono float32 in [-1, 1]."""
    if duration_s <= 0 or sample_rate <= 0:
        raise ConfigurationError("duration and sample rate must be positive")
    t = np.arange(int(round(duration_s * sample_rate)), dtype=np.float64) / sample_rate
    return (amplitude * np.sin(2.0 * np.pi * frequency_hz * t)).astype(np.float32)


def _speech_draws(rng):
    # draw order is part of the fixture's identity: a clip and its profile
    # must come from the same stream positions
    f0 = rng.uniform(90.0, 220.0)
    harmonic_phases = tuple(rng.uniform(0, 2 * np.pi) for _ in range(4))
    env_rate = rng.uniform(3.0, 5.0)
    env_phase = rng.uniform(0, 2 * np.pi)
    return f0, harmonic_phases, env_rate, env_phase


def speech_clip_profile(seed: int, duration_s: float = 2.0) -> dict[str, float]:
    """Ground-truth properties of ``gen_speech_like_clip(seed, duration_s)``.

    ``word_count`` treats each envelope cycle as one spoken word, which is
    what the syllable-rate modulation of the clip actually produces.
    """
    if duration_s <= 0:
        raise ConfigurationError("duration must be positive")
    f0, _, env_rate, _ = _speech_draws(rng_for(seed, "speech-like-clip"))
    return {
        "fundamental_hz": f0,
        "syllable_rate_hz": env_rate,
        "word_count": float(round(env_rate * duration_s)),
    }


def gen_speech_like_clip(
    seed: int,
    duration_s: float = 2.0,
    sample_rate: int = DEFAULT_SAMPLE_RATE,
) -> np.ndarray:
    """Harmonic tone bursts with an amplitude envelope and a noise floor.

    Not speech, but shares its gross statistics: a fundamental with
    harmonics, syllable-rate amplitude modulation, and pauses.
    """
    if duration_s <= 0 or sample_rate <= 0:
        raise ConfigurationError("duration and sample rate must be positive")
    rng = rng_for(seed, "speech-like-clip")
    n = int(round(duration_s * sample_rate))
    t = np.arange(n, dtype=np.float64) / sample_rate

    f0, harmonic_phases, env_rate, env_phase = _speech_draws(rng)
    signal = np.zeros(n, dtype=np.float64)
    for k, weight in enumerate((1.0, 0.5, 0.25, 0.12), start=1):
        signal += weight * np.sin(2.0 * np.pi * k * f0 * t + harmonic_phases[k - 1])

    # Syllable-rate envelope around 3-5 Hz, floored so pauses are quiet
    # rather than digitally silent.
    envelope = 0.5 * (1.0 + np.sin(2.0 * np.pi * env_rate * t + env_phase))
    envelope = 0.1 + 0.9 * envelope**2
    signal *= envelope
    signal += 0.01 * rng.standard_normal(n)

    peak = np.max(np.abs(signal))
    return (0.5 * signal / peak).astype(np.float32)
