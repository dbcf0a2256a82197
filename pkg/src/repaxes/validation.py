"""Input validation helpers used at every public API boundary."""

import numpy as np

from .errors import DegenerateInputError, ShapeError, ValidationError


def as_matrix(x, name: str = "X", cols: int | None = None) -> np.ndarray:
    """Validate and return a 2-D float32 array with finite entries."""
    arr = np.asarray(x, dtype=np.float32)
    if arr.ndim == 1:
        arr = arr[:, None]
    if arr.ndim != 2:
        raise ShapeError(f"{name} must be 2-D, got shape {arr.shape}")
    if cols is not None and arr.shape[1] != cols:
        raise ShapeError(f"{name} must have {cols} columns, got {arr.shape[1]}")
    if not np.all(np.isfinite(arr)):
        raise ValidationError(f"{name} contains non-finite values")
    return arr


def as_vector(x, name: str = "v") -> np.ndarray:
    arr = np.asarray(x, dtype=np.float32).ravel()
    if arr.size == 0:
        raise ShapeError(f"{name} must be non-empty")
    if not np.all(np.isfinite(arr)):
        raise ValidationError(f"{name} contains non-finite values")
    return arr


def check_same_shape(a: np.ndarray, b: np.ndarray, names: str = "pred/target") -> None:
    if a.shape != b.shape:
        raise ShapeError(f"{names} shapes differ: {a.shape} vs {b.shape}")


def check_positive_int(value: int, name: str) -> int:
    if not isinstance(value, (int, np.integer)) or value < 1:
        raise ValidationError(f"{name} must be a positive integer, got {value!r}")
    return int(value)


def check_in_range(value: float, low: float, high: float, name: str) -> float:
    value = float(value)
    if not np.isfinite(value) or value < low or value > high:
        raise ValidationError(f"{name} must be in [{low}, {high}], got {value}")
    return value


def check_nonzero(v: np.ndarray, name: str = "vector") -> np.ndarray:
    if float(np.linalg.norm(v)) == 0.0:
        raise DegenerateInputError(f"{name} has zero norm")
    return v


def as_clip(samples, name: str = "clip") -> np.ndarray:
    """Validate a mono audio clip: 1-D float32 in [-1, 1], non-empty."""
    arr = np.asarray(samples, dtype=np.float32).ravel()
    if arr.size == 0:
        raise ValidationError(f"{name} must be non-empty")
    if not np.all(np.isfinite(arr)):
        raise ValidationError(f"{name} contains non-finite values")
    if float(np.abs(arr).max()) > 1 + 1e-6:
        raise ValidationError(f"{name} sample values must lie in [-1, 1]")
    return np.clip(arr, -1.0, 1.0)


def as_image(img, name: str = "image") -> np.ndarray:
    """Validate an H x W x 3 float image with channels in [0, 1]."""
    arr = np.asarray(img, dtype=np.float32)
    if arr.ndim != 3 or arr.shape[2] != 3:
        raise ValidationError(f"{name} must be H x W x 3, got shape {arr.shape}")
    if arr.shape[0] < 1 or arr.shape[1] < 1:
        raise ValidationError(f"{name} must have positive height and width")
    if not np.all(np.isfinite(arr)):
        raise ValidationError(f"{name} contains non-finite values")
    if float(arr.min()) < -1e-6 or float(arr.max()) > 1 + 1e-6:
        raise ValidationError(f"{name} channel values must lie in [0, 1]")
    return np.clip(arr, 0.0, 1.0)
