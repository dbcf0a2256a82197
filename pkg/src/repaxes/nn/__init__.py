"""From-scratch numeric core: probes, Adam, training loop, metrics."""

from .adam import AdamConfig, AdamState, adam_step
from .estimator import ProbeRegressor
from .metrics import (
    cosine_similarity,
    l2_normalize,
    l2_normalize_rows,
    mse,
    mse_loss_and_grad,
    rmse,
    rowwise_cosine,
)
from .probe import Probe, ProbeSpec, probe_backward, probe_forward, probe_init
from .train import EarlyStopper, TrainResult, fit_model, train_probe

__all__ = [
    "AdamConfig",
    "AdamState",
    "adam_step",
    "ProbeRegressor",
    "cosine_similarity",
    "l2_normalize",
    "l2_normalize_rows",
    "mse",
    "mse_loss_and_grad",
    "rmse",
    "rowwise_cosine",
    "Probe",
    "ProbeSpec",
    "probe_backward",
    "probe_forward",
    "probe_init",
    "EarlyStopper",
    "TrainResult",
    "fit_model",
    "train_probe",
]
