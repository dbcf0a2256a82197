"""Consolidate report files in a results directory into flat CSV tables.

Output is a pure function of the report set: rows sorted by report
name, columns sorted by metric key, floats rendered via ``repr`` so
identical inputs give identical bytes.
"""

from pathlib import Path

from ..axes import AxisReport, read_report
from ..errors import ValidationError
from .runner import REPORTS_DIR

TABLES_DIR = "tables"

REPORTS_CSV = "reports.csv"
CURVES_CSV = "invariance_curves.csv"
BUCKETS_CSV = "disentanglement_buckets.csv"


def _cell(value) -> str:
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _write_csv(path: Path, header: list[str], rows: list[list]) -> None:
    lines = [",".join(header)]
    lines.extend(",".join(_cell(v) for v in row) for row in rows)
    path.write_text("\n".join(lines) + "\n", encoding="utf-8", newline="\n")


def load_reports(results_dir) -> dict[str, AxisReport]:
    """Read every report in ``<results_dir>/reports``, keyed by file stem."""
    reports_dir = Path(results_dir) / REPORTS_DIR
    files = sorted(reports_dir.glob("*.json")) if reports_dir.is_dir() else []
    if not files:
        raise ValidationError(f"no reports found under {reports_dir}")
    return {file.stem: read_report(file) for file in files}


def cmd_report(results_dir) -> list[Path]:
    """Write the consolidated tables; returns the paths written."""
    reports = load_reports(results_dir)
    tables_dir = Path(results_dir) / TABLES_DIR
    tables_dir.mkdir(parents=True, exist_ok=True)

    metric_keys = sorted({key for r in reports.values() for key in r.flat_metrics()})
    id_columns = ["report", "axis", "extractor_id", "target", "probe_kind"]
    rows = []
    for name, report in sorted(reports.items()):
        flat = report.flat_metrics()
        rows.append(
            [name, report.axis, report.extractor_id, report.target, report.probe_kind]
            + [flat[key] if key in flat else "" for key in metric_keys]
        )
    paths = [tables_dir / REPORTS_CSV]
    _write_csv(paths[0], id_columns + metric_keys, rows)

    curve_rows = []
    for name, report in sorted(reports.items()):
        if report.curve is None:
            continue
        for param, value in report.curve:
            curve_rows.append([name, report.extractor_id, report.target, param, value])
    paths.append(tables_dir / CURVES_CSV)
    _write_csv(paths[1], ["report", "extractor_id", "target", "param", "cosine_mean"], curve_rows)

    bucket_rows = []
    for name, report in sorted(reports.items()):
        if report.grid is None:
            continue
        for bucket in report.grid.buckets:
            bucket_rows.append([
                name, report.grid.predicted_fv, report.grid.perturbed_fv, bucket.label,
                bucket.fraction_range[0], bucket.fraction_range[1],
                bucket.delta_rmse, bucket.transformed_rmse,
            ])
    paths.append(tables_dir / BUCKETS_CSV)
    _write_csv(
        paths[2],
        ["report", "predicted_fv", "perturbed_fv", "bucket",
         "fraction_low", "fraction_high", "delta_rmse", "transformed_rmse"],
        bucket_rows,
    )
    return paths
