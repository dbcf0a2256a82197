"""Whether perturbing one tracked value corrupts the readout of another.

A probe for value X is trained on clean embeddings; the transform that moves
value Y is then applied at parameters drawn from four signed sub-ranges
anchored at the transform's neutral point. The reported quantity per bucket
is how much the probe's test error grows, with X's ground truth held at its
clean value throughout.
"""

import numpy as np

from ..errors import ConfigurationError, RepaxesError, TransformError
from ..io.manifest import SampleRecord
from ..nn.metrics import rmse
from ..nn.probe import Probe, probe_forward
from ..seeds import rng_for
from .invariance import test_split
from .report import (
    BUCKET_FRACTIONS,
    BUCKET_LABELS,
    AxisReport,
    BucketResult,
    DisentanglementGrid,
)
from .training import fv_value


def param_for_fraction(spec, fraction: float) -> float:
    """Map a signed fraction to a parameter: positive fractions walk from
    neutral toward the range maximum, negative toward the minimum."""
    low, high = spec.range
    if fraction >= 0.0:
        return spec.neutral + fraction * (high - spec.neutral)
    return spec.neutral + (-fraction) * (low - spec.neutral)


def bucket_fraction(spec, label: str, sample_id: str) -> float:
    lo, hi = BUCKET_FRACTIONS[label]
    return float(rng_for(spec.seed, spec.name, "bucket", label, sample_id).uniform(lo, hi))


def eval_disentanglement(
    probe: Probe,
    probe_fv: str,
    records: list[SampleRecord],
    spec,
    embedder,
    probe_kind: str = "mlp",
    max_failure_fraction: float = 0.01,
) -> AxisReport:
    """``probe`` must have been trained on clean embeddings to predict
    ``probe_fv``; ``spec`` names the transform that moves a different value."""
    if spec.fv_target == probe_fv:
        raise ConfigurationError(
            f"the transform moves {probe_fv!r}, the value the probe predicts; "
            "measuring its own parameter is an equivariance question"
        )
    test = test_split(records)

    clean_rows = []
    bucket_rows: dict[str, list[np.ndarray]] = {label: [] for label in BUCKET_LABELS}
    targets = []
    failures: list[tuple[str, str]] = []
    for record in test:
        try:
            target = fv_value(record, probe_fv)
            clean, _ = embedder.embed_pair(record, spec.neutral, spec.sample_seed(record.id))
            moved = {}
            for label in BUCKET_LABELS:
                fraction = bucket_fraction(spec, label, record.id)
                param = param_for_fraction(spec, fraction)
                moved[label] = embedder.embed_pair(
                    record, param, spec.sample_seed(record.id)
                )[1]
        except ConfigurationError:
            raise
        except RepaxesError as exc:
            failures.append((record.id, str(exc)))
            continue
        clean_rows.append(clean)
        targets.append(target)
        for label in BUCKET_LABELS:
            bucket_rows[label].append(moved[label])

    if len(failures) > max_failure_fraction * len(test):
        preview = "; ".join(f"{i}: {m}" for i, m in failures[:3])
        raise TransformError(
            f"{len(failures)} of {len(test)} test samples failed ({preview})"
        )

    y = np.array(targets, dtype=np.float32)[:, None]
    clean_pred = probe_forward(probe, np.vstack(clean_rows))
    clean_rmse = rmse(clean_pred, y)

    buckets = []
    for label in BUCKET_LABELS:
        pred = probe_forward(probe, np.vstack(bucket_rows[label]))
        bucket_rmse = rmse(pred, y)
        buckets.append(
            BucketResult(
                label=label,
                fraction_range=BUCKET_FRACTIONS[label],
                delta_rmse=bucket_rmse - clean_rmse,
                transformed_rmse=bucket_rmse,
            )
        )
    grid = DisentanglementGrid(
        predicted_fv=probe_fv,
        perturbed_fv=spec.fv_target,
        buckets=tuple(buckets),
    )
    return AxisReport(
        axis="disentanglement",
        extractor_id=embedder.extractor_id,
        target=f"{probe_fv}/{spec.name}",
        probe_kind=probe_kind,
        metrics={"clean_rmse": clean_rmse},
        grid=grid,
        config={
            "probe_fv": probe_fv,
            "perturbed_fv": spec.fv_target,
            "transform": spec.name,
            "range": [spec.range[0], spec.range[1]],
            "neutral": spec.neutral,
            "n_test": len(test),
            "n_failures": len(failures),
        },
        seeds={"transform": spec.seed},
    )
