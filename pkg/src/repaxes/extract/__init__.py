"""Feature extractors and pair-embedding seams."""

from .base import FeatureExtractor
from .external import external_embeddings
from .media_embedder import MediaPairEmbedder
from .toy import ToyAudioExtractor, ToyImageExtractor, bilinear_resize, mel_filterbank

__all__ = [
    "FeatureExtractor",
    "external_embeddings",
    "MediaPairEmbedder",
    "ToyAudioExtractor",
    "ToyImageExtractor",
    "bilinear_resize",
    "mel_filterbank",
]
