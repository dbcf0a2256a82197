"""Pair embedder backed by media files on disk."""

from pathlib import Path

from ..errors import ConfigurationError, ValidationError
from ..io.media import load_clip, load_image
from ..io.pairs import TransformSpec


class MediaPairEmbedder:
    """Loads each record's media, applies the transform, extracts both.

    The one pair-embedding code path shared by file-based runs and tests:
    ``embed_pair(record, param_raw, sample_seed)`` returns the clean and
    transformed embedding rows.
    """

    def __init__(
        self,
        extractor,
        spec: TransformSpec,
        media_root=None,
        sample_rate: int = 16000,
    ):
        if extractor.modality != spec.modality:
            raise ConfigurationError(
                f"extractor is {extractor.modality} but transform {spec.name} "
                f"is {spec.modality}"
            )
        self.extractor = extractor
        self.spec = spec
        self.media_root = Path(media_root) if media_root is not None else None
        self.sample_rate = sample_rate

    @property
    def dim(self) -> int:
        return self.extractor.dim

    @property
    def extractor_id(self) -> str:
        return self.extractor.extractor_id

    def _resolve(self, media_path: str) -> Path:
        if not media_path:
            raise ValidationError("record has no media_path")
        path = Path(media_path)
        if not path.is_absolute() and self.media_root is not None:
            path = self.media_root / path
        return path

    def _load(self, record):
        path = self._resolve(record.media_path)
        if self.spec.modality == "image":
            return load_image(path)
        return load_clip(path, target_rate=self.sample_rate)

    def embed_pair(self, record, param_raw, sample_seed):
        media = self._load(record)
        clean = self.extractor.extract(media)
        transformed_media = self.spec.entry(
            media, param_raw, seed=sample_seed, sample_rate=self.sample_rate
        )
        transformed = self.extractor.extract(transformed_media)
        return clean, transformed
