"""The feature-extractor interface: media in, fixed-dim embedding out."""

import numpy as np

from ..base import ParamsMixin
from ..errors import ValidationError


class FeatureExtractor(ParamsMixin):
    """Deterministic map from one media sample to a d-dim float32 vector.

    Subclasses set ``extractor_id``, ``dim``, ``modality`` and implement
    ``_extract``; the public ``extract`` enforces the output contract.
    """

    extractor_id: str = ""
    dim: int = 0
    modality: str = ""

    def _extract(self, media) -> np.ndarray:
        raise NotImplementedError

    def extract(self, media) -> np.ndarray:
        z = np.asarray(self._extract(media), dtype=np.float32).ravel()
        if z.size != self.dim:
            raise ValidationError(
                f"{self.extractor_id}: produced {z.size} values, declared dim {self.dim}"
            )
        if not np.all(np.isfinite(z)):
            raise ValidationError(f"{self.extractor_id}: embedding has non-finite values")
        return z

    def transform(self, media_list) -> np.ndarray:
        """Batch extract: list of media -> (n, dim) matrix."""
        if not media_list:
            return np.zeros((0, self.dim), dtype=np.float32)
        return np.vstack([self.extract(m) for m in media_list])

    def fit(self, media_list=None, y=None):
        return self
