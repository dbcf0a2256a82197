"""How well a tracked value can be read out of embeddings with a shallow probe."""

import numpy as np

from ..io.container import EmbeddingStore
from ..io.manifest import SampleRecord
from ..nn.adam import AdamConfig
from ..nn.metrics import mse, rmse
from ..nn.probe import Probe, ProbeSpec, probe_forward
from ..nn.train import TrainResult, train_probe
from .report import AxisReport
from .training import config_snapshot, default_train_config, hidden_dims_for, store_splits


def train_fv_probe(
    store: EmbeddingStore,
    records: list[SampleRecord],
    fv: str,
    probe_kind: str = "slp",
    config: AdamConfig | None = None,
    probe_seed: int = 0,
) -> tuple[Probe, TrainResult]:
    """Fit a probe predicting one tracked value from clean embeddings."""
    cfg = config or default_train_config()
    splits = store_splits(store, records, fv)
    spec = ProbeSpec(
        input_dim=store.dim,
        hidden_dims=hidden_dims_for(probe_kind),
        output_dim=1,
        seed=probe_seed,
    )
    return train_probe(spec, *splits["train"], *splits["val"], config=cfg)


def eval_informativeness(
    store: EmbeddingStore,
    records: list[SampleRecord],
    fv: str,
    probe_kind: str = "slp",
    config: AdamConfig | None = None,
    probe_seed: int = 0,
) -> AxisReport:
    """Train a probe on the train split, early-stop on val, report test error."""
    cfg = config or default_train_config()
    splits = store_splits(store, records, fv)
    probe, result = train_fv_probe(store, records, fv, probe_kind, cfg, probe_seed)
    test_x, test_y = splits["test"]
    pred = probe_forward(probe, test_x)
    return AxisReport(
        axis="informativeness",
        extractor_id=store.extractor_id,
        target=fv,
        probe_kind=probe_kind,
        metrics={
            "rmse": rmse(pred, test_y),
            "mse": mse(pred, test_y),
            "best_val_loss": result.best_val_loss,
        },
        config={
            "fv": fv,
            "hidden_dims": list(hidden_dims_for(probe_kind)),
            "training": config_snapshot(cfg),
            "best_epoch": result.best_epoch,
            "epochs_run": result.epochs_run,
            "split_sizes": {s: int(x.shape[0]) for s, (x, _) in splits.items()},
        },
        seeds={"probe": probe_seed},
    )


def best_constant_rmse(values: np.ndarray) -> float:
    """Test error of the best constant predictor: the standard deviation
    around the mean. The floor any trained probe must at least approach."""
    v = np.asarray(values, dtype=np.float64).ravel()
    return float(np.sqrt(np.mean((v - v.mean()) ** 2)))
