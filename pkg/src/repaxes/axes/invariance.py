"""How stable embeddings are under a transform, across its parameter range."""

import numpy as np

from ..errors import ConfigurationError, TransformError, ValidationError
from ..errors import RepaxesError
from ..io.manifest import SampleRecord
from ..nn.metrics import cosine_similarity
from .report import AxisReport

DEFAULT_GRID_POINTS = 11


def test_split(records: list[SampleRecord]) -> list[SampleRecord]:
    test = [r for r in records if r.split == "test"]
    if not test:
        raise ValidationError("the test split is empty")
    return test


def eval_invariance(
    records: list[SampleRecord],
    spec,
    embedder,
    grid_points: int = DEFAULT_GRID_POINTS,
    max_failure_fraction: float = 0.01,
) -> AxisReport:
    """Cosine between clean and transformed embeddings of every test sample,
    at each of ``grid_points`` evenly spaced parameters across the range
    (endpoints included). No probe is involved."""
    if grid_points < 1:
        raise ConfigurationError(f"grid_points must be >= 1, got {grid_points}")
    test = test_split(records)
    low, high = spec.range
    grid = np.linspace(low, high, grid_points)

    curve: list[tuple[float, float]] = []
    failures: list[tuple[str, str]] = []
    for param in grid:
        cosines = []
        for record in test:
            try:
                clean, transformed = embedder.embed_pair(
                    record, float(param), spec.sample_seed(record.id)
                )
                cosines.append(cosine_similarity(clean, transformed))
            except RepaxesError as exc:
                failures.append((record.id, f"param {param:g}: {exc}"))
        if not cosines:
            raise TransformError(
                f"every test sample failed at parameter {param:g}"
            )
        curve.append((float(param), float(np.mean(cosines))))

    attempts = grid_points * len(test)
    if len(failures) > max_failure_fraction * attempts:
        preview = "; ".join(f"{i}: {m}" for i, m in failures[:3])
        raise TransformError(
            f"{len(failures)} of {attempts} embeddings failed ({preview})"
        )

    means = [value for _, value in curve]
    return AxisReport(
        axis="invariance",
        extractor_id=embedder.extractor_id,
        target=spec.name,
        probe_kind="none",
        metrics={
            "cosine_mean": float(np.mean(means)),
            "cosine_grid_min": float(np.min(means)),
        },
        curve=curve,
        config={
            "fv_target": spec.fv_target,
            "range": [low, high],
            "neutral": spec.neutral,
            "grid_points": grid_points,
            "n_test": len(test),
            "n_failures": len(failures),
        },
        seeds={"transform": spec.seed},
    )
