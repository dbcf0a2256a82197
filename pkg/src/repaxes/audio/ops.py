"""Parametric audio transforms and the speech-rate ground truth.

All ops take and return mono float32 clips in [-1, 1]; outputs are clamped
back into range. Transforms that need randomness take an explicit seed.
"""

import math
from fractions import Fraction

import numpy as np
from scipy.signal import fftconvolve, resample_poly

from ..errors import DegenerateInputError, ParameterError, TransformError, ValidationError
from ..seeds import rng_for
from ..validation import as_clip
from .stft import HOP, WINDOW_SIZE, istft, phase_vocoder, stft

DEFAULT_SAMPLE_RATE = 16000

TIME_STRETCH_RANGE = (0.5, 2.0)
PITCH_SHIFT_RANGE = (-12.0, 12.0)
NOISE_SNR_RANGE = (-30.0, 50.0)
REVERB_RT60_RANGE = (0.0, 3.0)

# Truncate synthetic impulse responses here; the Schroeder fit region
# (-5..-35 dB) ends well before this point.
_IR_LENGTH_FACTOR = 1.5


def _check_param(value: float, low: float, high: float, name: str) -> float:
    v = float(value)
    if not (low <= v <= high) or not math.isfinite(v):
        raise ParameterError(f"{name} must lie in [{low}, {high}], got {value}")
    return v


def time_stretch(samples: np.ndarray, rate: float) -> np.ndarray:
    """Phase-vocoder time stretch; output length = round(input / rate)
    within one hop. Pitch is preserved."""
    r = _check_param(rate, *TIME_STRETCH_RANGE, name="time-stretch rate")
    x = as_clip(samples)
    if x.size < WINDOW_SIZE:
        raise TransformError(
            f"clip of {x.size} samples is shorter than one {WINDOW_SIZE}-sample window"
        )
    target = int(round(x.size / r))
    stretched = istft(phase_vocoder(stft(x), r), length=target)
    return np.clip(stretched, -1.0, 1.0).astype(np.float32)


def pitch_shift(samples: np.ndarray, semitones: float) -> np.ndarray:
    """Shift pitch by resampling (rational approximation of 2^(s/12)) and
    stretching back to the original duration."""
    s = _check_param(semitones, *PITCH_SHIFT_RANGE, name="pitch shift")
    x = as_clip(samples)
    factor = 2.0 ** (s / 12.0)
    frac = Fraction(1.0 / factor).limit_denominator(128)
    if frac == 1:
        resampled = x.astype(np.float64)
    else:
        resampled = resample_poly(x.astype(np.float64), frac.numerator, frac.denominator)
    # The resampled clip plays at pitch x factor and lasts len/factor; the
    # inverse stretch restores the duration without touching pitch.
    restore = float(frac.numerator) / float(frac.denominator)
    if not TIME_STRETCH_RANGE[0] <= restore <= TIME_STRETCH_RANGE[1]:
        raise TransformError(f"internal stretch rate {restore} out of range")
    out = np.clip(resampled, -1.0, 1.0).astype(np.float32)
    return time_stretch(out, restore)


def white_noise_for(
    samples: np.ndarray, snr_db: float, seed: int
) -> np.ndarray:
    """The seeded Gaussian noise realization that, added to ``samples``,
    yields the requested pre-clip SNR."""
    snr = _check_param(snr_db, *NOISE_SNR_RANGE, name="noise SNR")
    x = as_clip(samples)
    signal_rms = float(np.sqrt(np.mean(x.astype(np.float64) ** 2)))
    if signal_rms == 0.0:
        raise DegenerateInputError("cannot set an SNR against a silent clip")
    noise = rng_for(seed, "white-noise").standard_normal(x.size)
    noise_rms = float(np.sqrt(np.mean(noise**2)))
    scale = signal_rms / (noise_rms * 10.0 ** (snr / 20.0))
    return (scale * noise).astype(np.float32)


def add_white_noise(samples: np.ndarray, snr_db: float, seed: int) -> np.ndarray:
    """Add seeded white noise at ``snr_db`` (signal-RMS over noise-RMS, in
    dB, measured before the final clamp)."""
    x = as_clip(samples)
    noise = white_noise_for(x, snr_db, seed)
    return np.clip(x + noise, -1.0, 1.0).astype(np.float32)


def reverb_impulse_response(
    rt60_s: float, seed: int, sample_rate: int = DEFAULT_SAMPLE_RATE
) -> np.ndarray:
    """Unit-energy synthetic impulse response: seeded white noise under an
    exponential envelope that decays 60 dB at t = rt60."""
    rt60 = float(rt60_s)
    if rt60 <= 0 or not math.isfinite(rt60):
        raise ParameterError(f"impulse response needs rt60 > 0, got {rt60_s}")
    n = int(round(_IR_LENGTH_FACTOR * rt60 * sample_rate))
    t = np.arange(n, dtype=np.float64) / sample_rate
    envelope = np.exp(-math.log(1000.0) * t / rt60)
    ir = rng_for(seed, "reverb-ir").standard_normal(n) * envelope
    return (ir / np.sqrt(np.sum(ir**2))).astype(np.float32)


def room_reverb(
    samples: np.ndarray,
    rt60_s: float,
    seed: int,
    sample_rate: int = DEFAULT_SAMPLE_RATE,
) -> np.ndarray:
    """Convolve with a synthetic exponential-decay room response.

    rt60 = 0 is the identity. Output is truncated to the input length.
    """
    rt60 = _check_param(rt60_s, *REVERB_RT60_RANGE, name="reverb RT60")
    x = as_clip(samples)
    if rt60 == 0.0:
        return x.copy()
    ir = reverb_impulse_response(rt60, seed, sample_rate)
    wet = fftconvolve(x.astype(np.float64), ir.astype(np.float64))[: x.size]
    return np.clip(wet, -1.0, 1.0).astype(np.float32)


def speech_rate(transcript: str, duration_s: float) -> float:
    """Words per second: whitespace-separated token count over duration."""
    duration = float(duration_s)
    if not math.isfinite(duration) or duration <= 0:
        raise ValidationError(f"duration must be > 0 seconds, got {duration_s}")
    return len(str(transcript).split()) / duration
