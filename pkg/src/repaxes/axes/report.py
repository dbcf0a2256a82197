"""Structured results of a single axis evaluation.

Reports serialize to versioned JSON documents; the loader refuses documents
from a different schema version rather than guessing at field meanings.
"""

import json
import math
from dataclasses import dataclass, field
from pathlib import Path

from ..errors import FormatError, SchemaVersionError, ValidationError

SCHEMA_VERSION = 1

AXES = ("informativeness", "p_equivariance", "r_equivariance", "invariance", "disentanglement")
PROBE_KINDS = ("slp", "mlp", "none")

BUCKET_LABELS = ("--", "-", "+", "++")
BUCKET_FRACTIONS = {
    "--": (-1.0, -0.5),
    "-": (-0.5, 0.0),
    "+": (0.0, 0.5),
    "++": (0.5, 1.0),
}


@dataclass(frozen=True)
class BucketResult:
    """One signed sub-range of the parameter span and its probe-error shift."""

    label: str
    fraction_range: tuple[float, float]
    delta_rmse: float
    transformed_rmse: float

    def __post_init__(self):
        if self.label not in BUCKET_LABELS:
            raise ValidationError(f"unknown bucket label {self.label!r}")
        if not (math.isfinite(self.delta_rmse) and math.isfinite(self.transformed_rmse)):
            raise ValidationError(f"bucket {self.label} has non-finite metrics")


@dataclass(frozen=True)
class DisentanglementGrid:
    """Per-bucket probe-error shifts when a different tracked value moves."""

    predicted_fv: str
    perturbed_fv: str
    buckets: tuple[BucketResult, ...]

    def __post_init__(self):
        labels = tuple(b.label for b in self.buckets)
        if labels != BUCKET_LABELS:
            raise ValidationError(f"expected buckets {BUCKET_LABELS}, got {labels}")

    def bucket(self, label: str) -> BucketResult:
        for b in self.buckets:
            if b.label == label:
                return b
        raise KeyError(label)


@dataclass
class AxisReport:
    """Metrics, curve, and provenance for one axis evaluation.

    ``config`` holds everything needed to rerun the evaluation bit-identically
    (training settings, ranges, split sizes); ``seeds`` names every seed that
    entered the computation.
    """

    axis: str
    extractor_id: str
    target: str
    probe_kind: str
    metrics: dict[str, float]
    curve: list[tuple[float, float]] | None = None
    grid: DisentanglementGrid | None = None
    config: dict = field(default_factory=dict)
    seeds: dict[str, int] = field(default_factory=dict)

    def __post_init__(self):
        if self.axis not in AXES:
            raise ValidationError(f"unknown axis {self.axis!r}; known: {AXES}")
        if self.probe_kind not in PROBE_KINDS:
            raise ValidationError(f"unknown probe kind {self.probe_kind!r}")
        for name, value in self.metrics.items():
            if not math.isfinite(value):
                raise ValidationError(f"metric {name!r} is not finite: {value}")
        if self.curve is not None:
            for param, value in self.curve:
                if not (math.isfinite(param) and math.isfinite(value)):
                    raise ValidationError("curve contains non-finite points")

    def flat_metrics(self) -> dict[str, float]:
        """Every scalar in the report, grid buckets included, keyed for flat
        tables."""
        out = dict(self.metrics)
        if self.grid is not None:
            for b in self.grid.buckets:
                out[f"delta_rmse[{b.label}]"] = b.delta_rmse
        return out


def report_to_dict(report: AxisReport) -> dict:
    doc = {
        "schema_version": SCHEMA_VERSION,
        "axis": report.axis,
        "extractor_id": report.extractor_id,
        "target": report.target,
        "probe_kind": report.probe_kind,
        "metrics": {k: float(v) for k, v in sorted(report.metrics.items())},
        "curve": None
        if report.curve is None
        else [[float(p), float(v)] for p, v in report.curve],
        "grid": None,
        "config": report.config,
        "seeds": {k: int(v) for k, v in sorted(report.seeds.items())},
    }
    if report.grid is not None:
        doc["grid"] = {
            "predicted_fv": report.grid.predicted_fv,
            "perturbed_fv": report.grid.perturbed_fv,
            "buckets": [
                {
                    "label": b.label,
                    "fraction_range": [b.fraction_range[0], b.fraction_range[1]],
                    "delta_rmse": float(b.delta_rmse),
                    "transformed_rmse": float(b.transformed_rmse),
                }
                for b in report.grid.buckets
            ],
        }
    return doc


def report_from_dict(doc: dict) -> AxisReport:
    if not isinstance(doc, dict):
        raise FormatError("report document must be a JSON object")
    version = doc.get("schema_version")
    if version != SCHEMA_VERSION:
        raise SchemaVersionError(
            f"report schema version {version!r} is not supported (expected {SCHEMA_VERSION})"
        )
    required = ("axis", "extractor_id", "target", "probe_kind", "metrics")
    missing = [k for k in required if k not in doc]
    if missing:
        raise FormatError(f"report document is missing fields: {missing}")
    grid = None
    if doc.get("grid") is not None:
        g = doc["grid"]
        try:
            grid = DisentanglementGrid(
                predicted_fv=g["predicted_fv"],
                perturbed_fv=g["perturbed_fv"],
                buckets=tuple(
                    BucketResult(
                        label=b["label"],
                        fraction_range=(float(b["fraction_range"][0]), float(b["fraction_range"][1])),
                        delta_rmse=float(b["delta_rmse"]),
                        transformed_rmse=float(b["transformed_rmse"]),
                    )
                    for b in g["buckets"]
                ),
            )
        except (KeyError, TypeError, IndexError) as exc:
            raise FormatError(f"malformed disentanglement grid: {exc!r}") from None
    curve = doc.get("curve")
    try:
        return AxisReport(
            axis=doc["axis"],
            extractor_id=doc["extractor_id"],
            target=doc["target"],
            probe_kind=doc["probe_kind"],
            metrics={k: float(v) for k, v in doc["metrics"].items()},
            curve=None if curve is None else [(float(p), float(v)) for p, v in curve],
            grid=grid,
            config=doc.get("config", {}),
            seeds={k: int(v) for k, v in doc.get("seeds", {}).items()},
        )
    except (TypeError, AttributeError, ValueError) as exc:
        raise FormatError(f"malformed report document: {exc}") from None
    except ValidationError as exc:
        raise FormatError(str(exc)) from None


def write_report(report: AxisReport, path) -> None:
    text = json.dumps(report_to_dict(report), sort_keys=True, indent=2)
    Path(path).write_text(text + "\n", encoding="utf-8")


def read_report(path) -> AxisReport:
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except FileNotFoundError:
        raise ValidationError(f"report file not found: {path}") from None
    except json.JSONDecodeError as exc:
        raise FormatError(f"report file {path} is not valid JSON: {exc}") from None
    return report_from_dict(doc)
