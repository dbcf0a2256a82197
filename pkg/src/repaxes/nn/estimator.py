"""Estimator-style wrapper around probe training.

``ProbeRegressor`` follows the common fit/predict convention: constructor
takes hyperparameters, ``fit`` trains from scratch, ``predict`` maps inputs
through the trained probe. It exists so callers that expect that shape can
use probes directly; the axis evaluators use the functional layer below.
"""

import numpy as np

from ..base import ParamsMixin
from ..errors import ValidationError
from ..validation import as_matrix
from .adam import AdamConfig
from .probe import ProbeSpec, probe_forward
from .train import TrainResult, train_probe


class ProbeRegressor(ParamsMixin):
    """Shallow MLP/linear regressor trained with early-stopped Adam.

    Parameters mirror :class:`ProbeSpec` and :class:`AdamConfig`; an empty
    ``hidden_dims`` gives a single linear layer.
    """

    def __init__(
        self,
        hidden_dims: tuple[int, ...] = (),
        seed: int = 0,
        learning_rate: float = 1e-3,
        weight_decay: float = 1e-3,
        batch_size: int = 32,
        max_epochs: int = 100,
        patience: int = 10,
    ):
        self.hidden_dims = hidden_dims
        self.seed = seed
        self.learning_rate = learning_rate
        self.weight_decay = weight_decay
        self.batch_size = batch_size
        self.max_epochs = max_epochs
        self.patience = patience
        self.probe_ = None
        self.result_: TrainResult | None = None

    def fit(
        self,
        x: np.ndarray,
        y: np.ndarray,
        val_x: np.ndarray,
        val_y: np.ndarray,
    ) -> "ProbeRegressor":
        tx = as_matrix(x, "x")
        ty = as_matrix(y, "y")
        spec = ProbeSpec(
            input_dim=tx.shape[1],
            hidden_dims=tuple(self.hidden_dims),
            output_dim=ty.shape[1],
            seed=self.seed,
        )
        cfg = AdamConfig(
            learning_rate=self.learning_rate,
            weight_decay=self.weight_decay,
            batch_size=self.batch_size,
            max_epochs=self.max_epochs,
            patience=self.patience,
        )
        self.probe_, self.result_ = train_probe(spec, tx, ty, val_x, val_y, cfg)
        return self

    def predict(self, x: np.ndarray) -> np.ndarray:
        if self.probe_ is None:
            raise ValidationError("this ProbeRegressor is not fitted yet; call fit first")
        return probe_forward(self.probe_, x)
