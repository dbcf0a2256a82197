"""Manifests, the .emb container, media carriers, and pair materialization."""

from .container import EmbeddingStore, read_embeddings, write_embeddings
from .manifest import (
    ALLOWED_SPLITS,
    SampleRecord,
    load_manifest,
    split_records,
    write_manifest,
)
from .media import load_clip, load_image, save_clip_wav, save_image_png
from .pairs import (
    TRANSFORMS,
    PairedEmbeddingSet,
    TransformEntry,
    TransformSpec,
    materialize_pairs,
    read_param_log,
    write_param_log,
)

__all__ = [
    "EmbeddingStore",
    "read_embeddings",
    "write_embeddings",
    "ALLOWED_SPLITS",
    "SampleRecord",
    "load_manifest",
    "split_records",
    "write_manifest",
    "load_clip",
    "load_image",
    "save_clip_wav",
    "save_image_png",
    "TRANSFORMS",
    "PairedEmbeddingSet",
    "TransformEntry",
    "TransformSpec",
    "materialize_pairs",
    "read_param_log",
    "write_param_log",
]
