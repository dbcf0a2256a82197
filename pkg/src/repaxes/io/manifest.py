"""Dataset manifests: JSON-lines records describing samples and splits."""

import json
from dataclasses import dataclass, field
from pathlib import Path

from ..errors import ManifestError

ALLOWED_SPLITS = ("train", "val", "test")

_REQUIRED_FIELDS = {"id", "split"}
_OPTIONAL_FIELDS = {"media_path", "fv_values", "duration_s", "transcript"}


@dataclass
class SampleRecord:
    """One dataset sample: identity, media location, split, ground truth."""

    id: str
    split: str
    media_path: str = ""
    fv_values: dict[str, float] = field(default_factory=dict)
    duration_s: float | None = None
    transcript: str | None = None


def _parse_record(obj: dict, line_no: int) -> SampleRecord:
    if not isinstance(obj, dict):
        raise ManifestError(f"line {line_no}: record must be an object, got {type(obj).__name__}")
    unknown = set(obj) - _REQUIRED_FIELDS - _OPTIONAL_FIELDS
    if unknown:
        raise ManifestError(f"line {line_no}: unknown fields {sorted(unknown)}")
    missing = _REQUIRED_FIELDS - set(obj)
    if missing:
        raise ManifestError(f"line {line_no}: missing fields {sorted(missing)}")

    sample_id = obj["id"]
    if not isinstance(sample_id, str) or not sample_id:
        raise ManifestError(f"line {line_no}: id must be a non-empty string")
    split = obj["split"]
    if split not in ALLOWED_SPLITS:
        raise ManifestError(
            f"line {line_no}: split {split!r} not allowed; use one of {list(ALLOWED_SPLITS)}"
        )

    fv_values = obj.get("fv_values", {})
    if not isinstance(fv_values, dict):
        raise ManifestError(f"line {line_no}: fv_values must be an object")
    parsed_fv = {}
    for key, value in fv_values.items():
        if not isinstance(value, (int, float)) or isinstance(value, bool):
            raise ManifestError(f"line {line_no}: fv_values[{key!r}] must be a number")
        parsed_fv[str(key)] = float(value)

    media_path = obj.get("media_path", "")
    if not isinstance(media_path, str):
        raise ManifestError(f"line {line_no}: media_path must be a string")

    duration = obj.get("duration_s")
    if duration is not None:
        if not isinstance(duration, (int, float)) or isinstance(duration, bool) or duration <= 0:
            raise ManifestError(f"line {line_no}: duration_s must be a positive number")
        duration = float(duration)

    transcript = obj.get("transcript")
    if transcript is not None and not isinstance(transcript, str):
        raise ManifestError(f"line {line_no}: transcript must be a string")

    return SampleRecord(
        id=sample_id,
        split=split,
        media_path=media_path,
        fv_values=parsed_fv,
        duration_s=duration,
        transcript=transcript,
    )


def load_manifest(path) -> list[SampleRecord]:
    """Parse a JSONL manifest; blank lines are skipped, every other line
    must be one valid record."""
    file = Path(path)
    if not file.is_file():
        raise ManifestError(f"manifest not found: {file}")
    records = []
    seen = set()
    with open(file, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise ManifestError(f"line {line_no}: invalid JSON ({exc.msg})") from exc
            record = _parse_record(obj, line_no)
            if record.id in seen:
                raise ManifestError(f"line {line_no}: duplicate id {record.id!r}")
            seen.add(record.id)
            records.append(record)
    return records


def write_manifest(records: list[SampleRecord], path) -> None:
    """Serialize records to JSONL, omitting unset optional fields."""
    with open(path, "w", encoding="utf-8") as fh:
        for record in records:
            obj = {"id": record.id, "split": record.split}
            if record.media_path:
                obj["media_path"] = record.media_path
            if record.fv_values:
                obj["fv_values"] = record.fv_values
            if record.duration_s is not None:
                obj["duration_s"] = record.duration_s
            if record.transcript is not None:
                obj["transcript"] = record.transcript
            fh.write(json.dumps(obj, sort_keys=True) + "\n")


def split_records(records: list[SampleRecord]) -> dict[str, list[SampleRecord]]:
    """Group records by split label, preserving manifest order."""
    groups: dict[str, list[SampleRecord]] = {name: [] for name in ALLOWED_SPLITS}
    for record in records:
        groups[record.split].append(record)
    return groups
