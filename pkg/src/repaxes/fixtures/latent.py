"""Latent-space stand-ins for the media transform pipeline.

These let axis evaluations run against synthetic stores with exactly known
structure: the "transform" is a shift along a chosen latent direction, and
the "embedder" reads rows straight out of a store. Both satisfy the same
interfaces as their media-backed counterparts.
"""

import math
from dataclasses import dataclass

import numpy as np

from ..errors import ConfigurationError, ValidationError
from ..io.container import EmbeddingStore
from ..io.pairs import ParamDraws


@dataclass(frozen=True)
class LatentTransformSpec(ParamDraws):
    """Transform-shaped spec for latent actions; not tied to the media
    transform registry."""

    name: str
    fv_target: str
    range: tuple[float, float]
    neutral: float = 0.0
    seed: int = 0

    def __post_init__(self):
        low, high = (float(self.range[0]), float(self.range[1]))
        object.__setattr__(self, "range", (low, high))
        object.__setattr__(self, "neutral", float(self.neutral))
        if not (math.isfinite(low) and math.isfinite(high)) or low > high:
            raise ConfigurationError(f"invalid range [{low}, {high}]")
        if not (low <= self.neutral <= high):
            raise ConfigurationError(
                f"neutral {self.neutral} outside range [{low}, {high}]"
            )
        if not isinstance(self.seed, int):
            raise ConfigurationError("seed must be an integer")


class LatentShiftEmbedder:
    """Pair embedder over a fixed store: the transform with parameter p
    moves a row by (p - neutral) along one latent direction.

    At the neutral parameter the transformed row is the clean row, bit for
    bit, which is what grounds identity checks.
    """

    def __init__(
        self,
        store: EmbeddingStore,
        direction: np.ndarray,
        neutral: float = 0.0,
        extractor_id: str = "latent:shift",
    ):
        direction = np.asarray(direction, dtype=np.float64).ravel()
        if direction.shape != (store.dim,):
            raise ConfigurationError(
                f"direction has {direction.size} dims but the store has {store.dim}"
            )
        if not np.all(np.isfinite(direction)):
            raise ValidationError("direction contains non-finite values")
        self.store = store
        self.direction = direction
        self.neutral = float(neutral)
        self._extractor_id = extractor_id

    @property
    def dim(self) -> int:
        return self.store.dim

    @property
    def extractor_id(self) -> str:
        return self._extractor_id

    def embed_pair(self, record, param_raw, sample_seed):
        row = self.store.row(record.id)
        shift = float(param_raw) - self.neutral
        if shift == 0.0:
            return row, row.copy()
        moved = (row.astype(np.float64) + shift * self.direction).astype(np.float32)
        return row, moved
