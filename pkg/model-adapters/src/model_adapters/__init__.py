"""Embedding exporters for published vision and speech checkpoints."""

from .errors import AdapterError
from .export import export_embeddings
from .librispeech import (
    ClipInfo,
    audio_duration_s,
    corpus_manifest,
    corpus_speech_rate,
    flac_stream_info,
    scan_corpus,
)
from .registry import MODELS, ModelInfo, model_info
from .spec import AdapterSpec, adapter_spec, load_adapter_spec, parse_checkpoint

__all__ = [
    "AdapterError",
    "AdapterSpec",
    "ClipInfo",
    "MODELS",
    "ModelInfo",
    "adapter_spec",
    "audio_duration_s",
    "corpus_manifest",
    "corpus_speech_rate",
    "export_embeddings",
    "flac_stream_info",
    "load_adapter_spec",
    "model_info",
    "parse_checkpoint",
    "scan_corpus",
]
