"""Minibatch Adam training with early stopping on a held-out split.

The loop is written against a small model protocol rather than the probe
type alone, so a composite model (several parameter blocks trained jointly)
can reuse the same schedule:

- ``parameters() -> list[np.ndarray]``
- ``set_parameters(params)``
- ``copy_parameters() -> list[np.ndarray]``
- ``forward(x) -> np.ndarray``
- ``backward(x, output_grad) -> list[np.ndarray]``  (grads aligned with
  ``parameters()``)
"""

import math
from dataclasses import dataclass, field

import numpy as np

from ..errors import ConfigurationError, NumericDivergenceError
from ..seeds import rng_for
from ..validation import as_matrix
from .adam import AdamConfig, AdamState, adam_step
from .metrics import mse, mse_loss_and_grad
from .probe import Probe, ProbeSpec, probe_init


@dataclass
class TrainResult:
    """Outcome of one training run.

    ``parameters`` are the weights from the epoch with the lowest validation
    loss, which are also the weights left installed on the model.
    """

    parameters: list[np.ndarray]
    best_epoch: int
    epochs_run: int
    best_val_loss: float
    train_history: list[float] = field(default_factory=list)
    val_history: list[float] = field(default_factory=list)
    stopped_early: bool = False


class EarlyStopper:
    """Track the best validation loss; signal a stop after ``patience``
    consecutive epochs without strict improvement."""

    def __init__(self, patience: int):
        if patience < 1:
            raise ConfigurationError(f"patience must be >= 1, got {patience}")
        self.patience = patience
        self.best = math.inf
        self.best_epoch = 0
        self.bad_epochs = 0

    def update(self, epoch: int, val_loss: float) -> bool:
        """Record one epoch's validation loss. Returns True to stop."""
        if val_loss < self.best:
            self.best = val_loss
            self.best_epoch = epoch
            self.bad_epochs = 0
            return False
        self.bad_epochs += 1
        return self.bad_epochs >= self.patience


def _epoch_batches(n: int, batch_size: int, rng: np.random.Generator):
    order = rng.permutation(n)
    for start in range(0, n, batch_size):
        yield order[start : start + batch_size]


def fit_model(
    model,
    train_x: np.ndarray,
    train_y: np.ndarray,
    val_x: np.ndarray,
    val_y: np.ndarray,
    config: AdamConfig,
    seed: int,
) -> TrainResult:
    """Train ``model`` with minibatch Adam and early stopping.

    Epochs are 1-indexed. After every epoch the model is scored on the
    validation split; the parameters from the best epoch are restored before
    returning. A non-finite training loss aborts with
    :class:`NumericDivergenceError`.
    """
    tx = as_matrix(train_x, "train_x")
    ty = as_matrix(train_y, "train_y")
    vx = as_matrix(val_x, "val_x")
    vy = as_matrix(val_y, "val_y")
    if tx.shape[0] != ty.shape[0]:
        raise ConfigurationError(
            f"train_x has {tx.shape[0]} rows but train_y has {ty.shape[0]}"
        )
    if vx.shape[0] != vy.shape[0]:
        raise ConfigurationError(
            f"val_x has {vx.shape[0]} rows but val_y has {vy.shape[0]}"
        )
    if tx.shape[0] == 0 or vx.shape[0] == 0:
        raise ConfigurationError("training and validation splits must be non-empty")

    rng = rng_for(seed, "shuffle")
    state = AdamState.for_parameters(model.parameters())
    stopper = EarlyStopper(config.patience)
    best_params = model.copy_parameters()
    result = TrainResult(
        parameters=best_params,
        best_epoch=0,
        epochs_run=0,
        best_val_loss=math.inf,
    )

    for epoch in range(1, config.max_epochs + 1):
        epoch_loss = 0.0
        seen = 0
        for idx in _epoch_batches(tx.shape[0], config.batch_size, rng):
            xb = tx[idx]
            yb = ty[idx]
            pred = model.forward(xb)
            if not np.all(np.isfinite(pred)):
                raise NumericDivergenceError(
                    f"model output became non-finite at epoch {epoch}"
                )
            loss, grad = mse_loss_and_grad(pred, yb)
            if not math.isfinite(loss):
                raise NumericDivergenceError(
                    f"training loss became non-finite at epoch {epoch}"
                )
            grads = model.backward(xb, grad)
            new_params = adam_step(model.parameters(), grads, state, config)
            model.set_parameters(new_params)
            epoch_loss += loss * xb.shape[0]
            seen += xb.shape[0]

        result.train_history.append(epoch_loss / seen)
        val_pred = model.forward(vx)
        if not np.all(np.isfinite(val_pred)):
            raise NumericDivergenceError(
                f"model output became non-finite at epoch {epoch}"
            )
        val_loss = mse(val_pred, vy)
        if not math.isfinite(val_loss):
            raise NumericDivergenceError(
                f"validation loss became non-finite at epoch {epoch}"
            )
        result.val_history.append(val_loss)
        result.epochs_run = epoch

        if val_loss < stopper.best:
            best_params = model.copy_parameters()
        if stopper.update(epoch, val_loss):
            result.stopped_early = True
            break

    model.set_parameters(best_params)
    result.parameters = best_params
    result.best_epoch = stopper.best_epoch
    result.best_val_loss = stopper.best
    return result


def train_probe(
    spec: ProbeSpec,
    train_x: np.ndarray,
    train_y: np.ndarray,
    val_x: np.ndarray,
    val_y: np.ndarray,
    config: AdamConfig | None = None,
) -> tuple[Probe, TrainResult]:
    """Initialize a probe from ``spec`` and fit it; shuffling reuses the
    probe seed so the whole run is a function of (spec, data, config)."""
    cfg = config if config is not None else AdamConfig()
    probe = probe_init(spec)
    result = fit_model(probe, train_x, train_y, val_x, val_y, cfg, spec.seed)
    return probe, result
