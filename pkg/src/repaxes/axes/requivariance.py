"""Predicting the transformed embedding from the clean one and the parameter.

The normalized parameter enters through a learned affine projection into a
32-dimensional space; the projection and the probe train jointly end to end
on the same loss.
"""

import numpy as np

from ..io.manifest import SampleRecord
from ..io.pairs import PairedEmbeddingSet
from ..nn.adam import AdamConfig
from ..nn.metrics import l2_normalize_rows, mse, rowwise_cosine
from ..nn.probe import ProbeSpec, probe_backward, probe_forward, probe_init
from ..nn.train import fit_model
from ..seeds import rng_for
from .report import AxisReport
from .training import (
    REPRESENTATION_PROBE_HIDDEN,
    config_snapshot,
    default_train_config,
    pair_splits,
)

PROJECTION_DIM = 32


class ParamProjector:
    """Affine map from the scalar normalized parameter to a vector code."""

    def __init__(self, proj_dim: int, seed: int):
        rng = rng_for(seed, "param-projector")
        self.weight = rng.standard_normal((proj_dim, 1)).astype(np.float32)
        self.bias = np.zeros(proj_dim, dtype=np.float32)

    @property
    def dim(self) -> int:
        return self.weight.shape[0]

    def project(self, params: np.ndarray) -> np.ndarray:
        return (params @ self.weight.T + self.bias).astype(np.float32)


class EquivarianceModel:
    """Projector plus probe, trained as one differentiable model.

    Batches are ``[z | p]`` with the normalized parameter in the last column;
    the probe sees ``[z | projector(p)]``.
    """

    def __init__(self, dim: int, proj_dim: int = PROJECTION_DIM, seed: int = 0):
        self.dim = dim
        self.projector = ParamProjector(proj_dim, seed)
        self.probe = probe_init(
            ProbeSpec(
                input_dim=dim + proj_dim,
                hidden_dims=REPRESENTATION_PROBE_HIDDEN,
                output_dim=dim,
                seed=seed,
            )
        )

    def parameters(self) -> list[np.ndarray]:
        return [self.projector.weight, self.projector.bias, *self.probe.parameters()]

    def set_parameters(self, params: list[np.ndarray]) -> None:
        self.projector.weight = params[0]
        self.projector.bias = params[1]
        self.probe.set_parameters(params[2:])

    def copy_parameters(self) -> list[np.ndarray]:
        return [p.copy() for p in self.parameters()]

    def _probe_input(self, batch: np.ndarray) -> np.ndarray:
        z, p = batch[:, : self.dim], batch[:, self.dim :]
        return np.hstack([z, self.projector.project(p)]).astype(np.float32)

    def forward(self, batch: np.ndarray) -> np.ndarray:
        return probe_forward(self.probe, self._probe_input(batch))

    def backward(self, batch: np.ndarray, output_grad: np.ndarray) -> list[np.ndarray]:
        inner = self._probe_input(batch)
        probe_grads, input_grad = probe_backward(
            self.probe, inner, output_grad, return_input_grad=True
        )
        proj_grad = input_grad[:, self.dim :]
        p = batch[:, self.dim :]
        return [
            (proj_grad.T @ p).astype(np.float32),
            proj_grad.sum(axis=0).astype(np.float32),
            *probe_grads,
        ]


def eval_r_equivariance(
    pairs: PairedEmbeddingSet,
    records: list[SampleRecord],
    config: AdamConfig | None = None,
    probe_seed: int = 0,
    target_name: str = "",
    proj_dim: int = PROJECTION_DIM,
) -> AxisReport:
    """Both embeddings are L2-normalized; the model predicts the transformed
    one. Reports test MSE and the mean cosine between prediction and truth."""
    cfg = config or default_train_config()
    z = l2_normalize_rows(pairs.z_clean.matrix)
    z_true = l2_normalize_rows(pairs.z_transformed.matrix)
    x = np.hstack([z, pairs.params_normalized[:, None].astype(np.float32)])
    rows = pair_splits(pairs, records)

    model = EquivarianceModel(pairs.z_clean.dim, proj_dim=proj_dim, seed=probe_seed)
    result = fit_model(
        model,
        x[rows["train"]],
        z_true[rows["train"]],
        x[rows["val"]],
        z_true[rows["val"]],
        cfg,
        seed=probe_seed,
    )
    pred = model.forward(x[rows["test"]])
    truth = z_true[rows["test"]]
    return AxisReport(
        axis="r_equivariance",
        extractor_id=pairs.z_clean.extractor_id,
        target=target_name,
        probe_kind="mlp",
        metrics={
            "mse": mse(pred, truth),
            "cosine_mean": float(rowwise_cosine(pred, truth).mean()),
            "best_val_loss": result.best_val_loss,
        },
        config={
            "hidden_dims": list(REPRESENTATION_PROBE_HIDDEN),
            "projection_dim": proj_dim,
            "training": config_snapshot(cfg),
            "best_epoch": result.best_epoch,
            "epochs_run": result.epochs_run,
            "split_sizes": {s: int(r.size) for s, r in rows.items()},
            "pair_failures": len(pairs.failures),
        },
        seeds={"probe": probe_seed},
    )
