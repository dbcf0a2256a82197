"""repaxes: evaluate fixed-dimension embeddings along informativeness,
equivariance, invariance, and disentanglement axes."""

__version__ = "0.1.0"
