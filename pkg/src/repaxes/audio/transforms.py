"""Estimator-style wrappers over the functional audio transforms."""

import numpy as np

from ..base import ParamsMixin
from .ops import DEFAULT_SAMPLE_RATE, add_white_noise, pitch_shift, room_reverb, time_stretch


class _StatelessAudioTransform(ParamsMixin):
    def fit(self, clips=None, y=None):
        return self

    def transform(self, samples: np.ndarray) -> np.ndarray:
        raise NotImplementedError


class TimeStretch(_StatelessAudioTransform):
    """Phase-vocoder stretch by ``rate`` in [0.5, 2.0]."""

    def __init__(self, rate: float = 1.0):
        self.rate = rate

    def transform(self, samples: np.ndarray) -> np.ndarray:
        return time_stretch(samples, self.rate)


class PitchShift(_StatelessAudioTransform):
    """Pitch shift by ``semitones`` in [-12, 12], duration preserved."""

    def __init__(self, semitones: float = 0.0):
        self.semitones = semitones

    def transform(self, samples: np.ndarray) -> np.ndarray:
        return pitch_shift(samples, self.semitones)


class AdditiveWhiteNoise(_StatelessAudioTransform):
    """Seeded white noise at ``snr_db`` in [-30, 50]."""

    def __init__(self, snr_db: float = 50.0, seed: int = 0):
        self.snr_db = snr_db
        self.seed = seed

    def transform(self, samples: np.ndarray) -> np.ndarray:
        return add_white_noise(samples, self.snr_db, self.seed)


class RoomReverb(_StatelessAudioTransform):
    """Synthetic-room convolution with ``rt60_s`` in [0, 3] seconds."""

    def __init__(self, rt60_s: float = 0.0, seed: int = 0, sample_rate: int = DEFAULT_SAMPLE_RATE):
        self.rt60_s = rt60_s
        self.seed = seed
        self.sample_rate = sample_rate

    def transform(self, samples: np.ndarray) -> np.ndarray:
        return room_reverb(samples, self.rt60_s, self.seed, self.sample_rate)
