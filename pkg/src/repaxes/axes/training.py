"""Split assembly and training defaults shared by the axis evaluations."""

from dataclasses import asdict

import numpy as np

from ..errors import AlignmentError, ConfigurationError, ValidationError
from ..io.container import EmbeddingStore
from ..io.manifest import ALLOWED_SPLITS, SampleRecord
from ..io.pairs import PairedEmbeddingSet
from ..nn.adam import AdamConfig

# The probe protocol pins the optimizer (Adam, lr 1e-3, weight decay 1e-3,
# batch 32) but not the epoch budget; this budget lets shallow probes reach
# their early-stopping plateau on desk-scale data.
AXIS_MAX_EPOCHS = 400
AXIS_PATIENCE = 40

PARAM_PROBE_HIDDEN = (512, 256)
REPRESENTATION_PROBE_HIDDEN = (512, 512)


def default_train_config() -> AdamConfig:
    return AdamConfig(max_epochs=AXIS_MAX_EPOCHS, patience=AXIS_PATIENCE)


def hidden_dims_for(probe_kind: str) -> tuple[int, ...]:
    """Hidden layout for scalar-prediction probes."""
    if probe_kind == "slp":
        return ()
    if probe_kind == "mlp":
        return PARAM_PROBE_HIDDEN
    raise ConfigurationError(f"probe_kind must be 'slp' or 'mlp', got {probe_kind!r}")


def config_snapshot(config: AdamConfig) -> dict:
    return asdict(config)


def records_by_split(records: list[SampleRecord]) -> dict[str, list[SampleRecord]]:
    """Group records by split, requiring every split to be populated."""
    groups: dict[str, list[SampleRecord]] = {split: [] for split in ALLOWED_SPLITS}
    for record in records:
        groups[record.split].append(record)
    empty = [split for split, group in groups.items() if not group]
    if empty:
        raise ValidationError(f"splits {empty} have no samples")
    return groups


def fv_value(record: SampleRecord, fv: str) -> float:
    if fv not in record.fv_values:
        raise ConfigurationError(
            f"record {record.id} has no value for {fv!r}; "
            f"available: {sorted(record.fv_values)}"
        )
    return float(record.fv_values[fv])


def store_splits(
    store: EmbeddingStore, records: list[SampleRecord], fv: str
) -> dict[str, tuple[np.ndarray, np.ndarray]]:
    """Per-split (embeddings, targets) matrices drawn from a store."""
    missing = [r.id for r in records if r.id not in store]
    if missing:
        shown = ", ".join(missing[:10])
        raise AlignmentError(f"{len(missing)} records missing from the store: {shown}")
    out = {}
    for split, group in records_by_split(records).items():
        x = np.vstack([store.row(r.id) for r in group])
        y = np.array([[fv_value(r, fv)] for r in group], dtype=np.float32)
        out[split] = (x, y)
    return out


def pair_splits(
    pairs: PairedEmbeddingSet, records: list[SampleRecord]
) -> dict[str, np.ndarray]:
    """Per-split row indices into a pair set.

    Records absent from the pairs are skipped (they failed materialization);
    pair rows with no covering record are an alignment error.
    """
    index = {sample_id: i for i, sample_id in enumerate(pairs.ids)}
    covered = {r.id for r in records}
    orphans = [sample_id for sample_id in pairs.ids if sample_id not in covered]
    if orphans:
        shown = ", ".join(orphans[:10])
        raise AlignmentError(f"{len(orphans)} pair rows have no record: {shown}")
    out = {}
    for split, group in records_by_split(records).items():
        rows = [index[r.id] for r in group if r.id in index]
        if not rows:
            raise ValidationError(f"split {split!r} has no materialized pairs")
        out[split] = np.array(rows, dtype=np.intp)
    return out
