"""Parametric audio transforms and speech-rate ground truth."""

from .ops import (
    DEFAULT_SAMPLE_RATE,
    NOISE_SNR_RANGE,
    PITCH_SHIFT_RANGE,
    REVERB_RT60_RANGE,
    TIME_STRETCH_RANGE,
    add_white_noise,
    pitch_shift,
    reverb_impulse_response,
    room_reverb,
    speech_rate,
    time_stretch,
    white_noise_for,
)
from .stft import HOP, WINDOW_SIZE, istft, phase_vocoder, stft
from .transforms import AdditiveWhiteNoise, PitchShift, RoomReverb, TimeStretch

__all__ = [
    "DEFAULT_SAMPLE_RATE",
    "NOISE_SNR_RANGE",
    "PITCH_SHIFT_RANGE",
    "REVERB_RT60_RANGE",
    "TIME_STRETCH_RANGE",
    "add_white_noise",
    "pitch_shift",
    "reverb_impulse_response",
    "room_reverb",
    "speech_rate",
    "time_stretch",
    "white_noise_for",
    "HOP",
    "WINDOW_SIZE",
    "istft",
    "phase_vocoder",
    "stft",
    "AdditiveWhiteNoise",
    "PitchShift",
    "RoomReverb",
    "TimeStretch",
]
