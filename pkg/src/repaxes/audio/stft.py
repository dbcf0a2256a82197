"""STFT analysis/synthesis and the phase vocoder.

Fixed analysis geometry (2048-sample Hann window, 512 hop) keeps every
transform deterministic; the 4x overlap satisfies the overlap-add constraint
so unmodified spectra reconstruct the input nearly exactly.
"""

import numpy as np

WINDOW_SIZE = 2048
HOP = 512

_WINDOW = np.hanning(WINDOW_SIZE).astype(np.float64)


def stft(samples: np.ndarray) -> np.ndarray:
    """Centered STFT: (bins, frames) complex matrix.

    The signal is zero-padded by half a window on both ends so frame t is
    centered on sample t * HOP.
    """
    x = np.asarray(samples, dtype=np.float64)
    pad = WINDOW_SIZE // 2
    padded = np.concatenate([np.zeros(pad), x, np.zeros(pad)])
    n_frames = 1 + (padded.size - WINDOW_SIZE) // HOP
    frames = np.lib.stride_tricks.sliding_window_view(padded, WINDOW_SIZE)[::HOP][:n_frames]
    return np.fft.rfft(frames * _WINDOW, axis=1).T


def istft(spec: np.ndarray, length: int | None = None) -> np.ndarray:
    """Weighted overlap-add inverse of :func:`stft`.

    Output is normalized by the summed squared window; ``length`` trims or
    zero-pads the result (after removing the centering pad).
    """
    frames = np.fft.irfft(spec.T, n=WINDOW_SIZE, axis=1)
    n_frames = frames.shape[0]
    total = WINDOW_SIZE + (n_frames - 1) * HOP
    signal = np.zeros(total)
    weight = np.zeros(total)
    for t in range(n_frames):
        start = t * HOP
        signal[start : start + WINDOW_SIZE] += frames[t] * _WINDOW
        weight[start : start + WINDOW_SIZE] += _WINDOW**2
    signal /= np.maximum(weight, 1e-8)

    pad = WINDOW_SIZE // 2
    out = signal[pad : total - pad]
    if length is not None:
        if out.size >= length:
            out = out[:length]
        else:
            out = np.concatenate([out, np.zeros(length - out.size)])
    return out


def phase_vocoder(spec: np.ndarray, rate: float) -> np.ndarray:
    """Resample an STFT along time by ``rate``, accumulating phase so each
    bin advances at its measured instantaneous frequency."""
    n_bins, n_frames = spec.shape
    steps = np.arange(0.0, n_frames, rate)
    expected = 2.0 * np.pi * HOP * np.arange(n_bins) / WINDOW_SIZE

    padded = np.concatenate([spec, np.zeros((n_bins, 1), dtype=spec.dtype)], axis=1)
    out = np.empty((n_bins, steps.size), dtype=np.complex128)
    phase = np.angle(padded[:, 0])
    for t, step in enumerate(steps):
        i = int(step)
        frac = step - i
        s0 = padded[:, i]
        s1 = padded[:, i + 1]
        mag = (1.0 - frac) * np.abs(s0) + frac * np.abs(s1)
        out[:, t] = mag * np.exp(1j * phase)
        deviation = np.angle(s1) - np.angle(s0) - expected
        deviation -= 2.0 * np.pi * np.round(deviation / (2.0 * np.pi))
        phase = phase + expected + deviation
    return out
