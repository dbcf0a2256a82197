"""Predicting the transform parameter from clean and transformed embeddings."""

import numpy as np

from ..errors import ShapeError
from ..io.manifest import SampleRecord
from ..io.pairs import PairedEmbeddingSet
from ..nn.adam import AdamConfig
from ..nn.metrics import mse, rmse
from ..nn.probe import ProbeSpec, probe_forward
from ..nn.train import train_probe
from .report import AxisReport
from .training import config_snapshot, default_train_config, hidden_dims_for, pair_splits


def eval_p_equivariance(
    pairs: PairedEmbeddingSet,
    records: list[SampleRecord],
    probe_kind: str = "mlp",
    config: AdamConfig | None = None,
    probe_seed: int = 0,
    target_name: str = "",
) -> AxisReport:
    """Probe input is each pair's embeddings concatenated; the target is the
    normalized parameter. Test RMSE is therefore in normalized units."""
    cfg = config or default_train_config()
    if pairs.z_clean.dim != pairs.z_transformed.dim:
        raise ShapeError(
            f"clean dim {pairs.z_clean.dim} != transformed dim {pairs.z_transformed.dim}"
        )
    x = np.hstack([pairs.z_clean.matrix, pairs.z_transformed.matrix])
    y = pairs.params_normalized[:, None].astype(np.float32)
    rows = pair_splits(pairs, records)
    spec = ProbeSpec(
        input_dim=2 * pairs.z_clean.dim,
        hidden_dims=hidden_dims_for(probe_kind),
        output_dim=1,
        seed=probe_seed,
    )
    probe, result = train_probe(
        spec,
        x[rows["train"]],
        y[rows["train"]],
        x[rows["val"]],
        y[rows["val"]],
        config=cfg,
    )
    pred = probe_forward(probe, x[rows["test"]])
    test_y = y[rows["test"]]
    return AxisReport(
        axis="p_equivariance",
        extractor_id=pairs.z_clean.extractor_id,
        target=target_name,
        probe_kind=probe_kind,
        metrics={
            "rmse": rmse(pred, test_y),
            "mse": mse(pred, test_y),
            "best_val_loss": result.best_val_loss,
        },
        config={
            "hidden_dims": list(hidden_dims_for(probe_kind)),
            "training": config_snapshot(cfg),
            "best_epoch": result.best_epoch,
            "epochs_run": result.epochs_run,
            "split_sizes": {s: int(r.size) for s, r in rows.items()},
            "pair_failures": len(pairs.failures),
        },
        seeds={"probe": probe_seed},
    )
