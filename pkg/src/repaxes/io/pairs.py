"""Transform registry, parameter drawing, and clean/transformed pair sets."""

import json
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from ..audio import ops as audio_ops
from ..errors import (
    ConfigurationError,
    RepaxesError,
    TransformError,
    ValidationError,
)
from ..image import color as image_color
from ..image import jpeg as image_jpeg
from ..seeds import derive_seed, rng_for
from .container import EmbeddingStore
from .manifest import SampleRecord


@dataclass(frozen=True)
class TransformEntry:
    """Registry row: how to apply one named transform to one medium."""

    name: str
    modality: str  # "image" | "audio"
    default_range: tuple[float, float]
    neutral: float
    uses_seed: bool
    apply: object  # callable(media, param, seed, sample_rate) -> media

    def __call__(self, media, param, seed=0, sample_rate=audio_ops.DEFAULT_SAMPLE_RATE):
        return self.apply(media, param, seed, sample_rate)


def _image_op(fn):
    return lambda media, param, seed, sample_rate: fn(media, param)


TRANSFORMS: dict[str, TransformEntry] = {
    "HueShift": TransformEntry(
        "HueShift", "image", image_color.HUE_SHIFT_RANGE, 0.0, False,
        _image_op(image_color.hue_shift),
    ),
    "SaturationShift": TransformEntry(
        "SaturationShift", "image", image_color.SATURATION_SHIFT_RANGE, 0.0, False,
        _image_op(image_color.saturation_shift),
    ),
    "BrightnessShift": TransformEntry(
        "BrightnessShift", "image", image_color.BRIGHTNESS_SHIFT_RANGE, 0.0, False,
        _image_op(image_color.brightness_shift),
    ),
    "JpegCompression": TransformEntry(
        # No in-range identity; neutral sits at the max-quality endpoint.
        "JpegCompression", "image", image_jpeg.JPEG_QUALITY_RANGE, 100.0, False,
        _image_op(image_jpeg.jpeg_compress),
    ),
    "TimeStretch": TransformEntry(
        "TimeStretch", "audio", audio_ops.TIME_STRETCH_RANGE, 1.0, False,
        lambda media, param, seed, sample_rate: audio_ops.time_stretch(media, param),
    ),
    "PitchShift": TransformEntry(
        "PitchShift", "audio", audio_ops.PITCH_SHIFT_RANGE, 0.0, False,
        lambda media, param, seed, sample_rate: audio_ops.pitch_shift(media, param),
    ),
    "AdditiveWhiteNoise": TransformEntry(
        # No silent identity; neutral sits at the max-SNR endpoint.
        "AdditiveWhiteNoise", "audio", audio_ops.NOISE_SNR_RANGE, 50.0, True,
        lambda media, param, seed, sample_rate: audio_ops.add_white_noise(media, param, seed),
    ),
    "RoomReverb": TransformEntry(
        "RoomReverb", "audio", audio_ops.REVERB_RT60_RANGE, 0.0, True,
        lambda media, param, seed, sample_rate: audio_ops.room_reverb(
            media, param, seed, sample_rate
        ),
    ),
}


class ParamDraws:
    """Parameter drawing and normalization shared by transform-like specs.

    Hosts must provide ``name``, ``range``, ``neutral``, and ``seed``.
    """

    def normalized(self, raw: float) -> float:
        low, high = self.range
        if high == low:
            return 0.0
        return (float(raw) - low) / (high - low)

    def raw_from_normalized(self, unit: float) -> float:
        low, high = self.range
        return low + float(unit) * (high - low)

    def draw_param(self, sample_id: str) -> float:
        """Uniform draw from the range, seeded by (spec seed, sample id) so
        subsets and reorderings see identical values."""
        return float(rng_for(self.seed, self.name, sample_id).uniform(*self.range))

    def sample_seed(self, sample_id: str) -> int:
        """Seed for any stochastic part of the transform itself."""
        return derive_seed(self.seed, self.name, "apply", sample_id)


@dataclass(frozen=True)
class TransformSpec(ParamDraws):
    """A named transform with its parameter range and seeding.

    ``range`` may collapse to a single point (a neutral-forced run); the
    normalized parameter is then defined as 0.
    """

    name: str
    fv_target: str
    range: tuple[float, float]
    neutral: float
    seed: int

    def __post_init__(self):
        if self.name not in TRANSFORMS:
            raise ConfigurationError(
                f"unknown transform {self.name!r}; known: {sorted(TRANSFORMS)}"
            )
        low, high = (float(self.range[0]), float(self.range[1]))
        object.__setattr__(self, "range", (low, high))
        object.__setattr__(self, "neutral", float(self.neutral))
        if not (math.isfinite(low) and math.isfinite(high)) or low > high:
            raise ConfigurationError(f"invalid range [{low}, {high}]")
        entry = TRANSFORMS[self.name]
        if low < entry.default_range[0] or high > entry.default_range[1]:
            raise ConfigurationError(
                f"range [{low}, {high}] outside {self.name}'s domain {entry.default_range}"
            )
        if not (low <= self.neutral <= high):
            raise ConfigurationError(
                f"neutral {self.neutral} outside range [{low}, {high}]"
            )
        if not isinstance(self.seed, int):
            raise ConfigurationError("seed must be an integer")

    @classmethod
    def default_for(cls, name: str, fv_target: str, seed: int) -> "TransformSpec":
        entry = TRANSFORMS[name]
        return cls(name=name, fv_target=fv_target, range=entry.default_range,
                   neutral=entry.neutral, seed=seed)

    @property
    def entry(self) -> TransformEntry:
        return TRANSFORMS[self.name]

    @property
    def modality(self) -> str:
        return self.entry.modality


@dataclass
class PairedEmbeddingSet:
    """Aligned clean/transformed embeddings with their drawn parameters."""

    ids: list[str]
    z_clean: EmbeddingStore
    z_transformed: EmbeddingStore
    params_raw: np.ndarray
    params_normalized: np.ndarray
    failures: list[tuple[str, str]] = field(default_factory=list)

    def __post_init__(self):
        self.params_raw = np.asarray(self.params_raw, dtype=np.float64)
        self.params_normalized = np.asarray(self.params_normalized, dtype=np.float64)
        n = len(self.ids)
        if (
            self.z_clean.ids != self.ids
            or self.z_transformed.ids != self.ids
            or self.params_raw.shape != (n,)
            or self.params_normalized.shape != (n,)
        ):
            raise ValidationError("pair set components are not aligned by id")
        if self.z_clean.dim != self.z_transformed.dim:
            raise ValidationError(
                f"clean dim {self.z_clean.dim} != transformed dim {self.z_transformed.dim}"
            )
        if self.params_normalized.size and (
            self.params_normalized.min() < -1e-9 or self.params_normalized.max() > 1 + 1e-9
        ):
            raise ValidationError("normalized parameters must lie in [0, 1]")

    @property
    def count(self) -> int:
        return len(self.ids)


def materialize_pairs(
    records: list[SampleRecord],
    spec: TransformSpec,
    embedder,
    max_failure_fraction: float = 0.01,
) -> PairedEmbeddingSet:
    """Draw one parameter per sample and embed clean/transformed pairs.

    ``embedder`` implements ``embed_pair(record, param_raw, sample_seed) ->
    (clean_row, transformed_row)`` plus ``dim`` and ``extractor_id``.
    Per-sample errors are collected; the run fails once more than
    ``max_failure_fraction`` of samples fail.
    """
    if not records:
        raise ValidationError("cannot materialize pairs from an empty record list")
    ids: list[str] = []
    raws: list[float] = []
    clean_rows: list[np.ndarray] = []
    transformed_rows: list[np.ndarray] = []
    failures: list[tuple[str, str]] = []

    for record in records:
        param = spec.draw_param(record.id)
        try:
            clean, transformed = embedder.embed_pair(record, param, spec.sample_seed(record.id))
        except RepaxesError as exc:
            failures.append((record.id, str(exc)))
            continue
        ids.append(record.id)
        raws.append(param)
        clean_rows.append(np.asarray(clean, dtype=np.float32).ravel())
        transformed_rows.append(np.asarray(transformed, dtype=np.float32).ravel())

    if len(failures) > max_failure_fraction * len(records):
        preview = "; ".join(f"{i}: {m}" for i, m in failures[:3])
        raise TransformError(
            f"{len(failures)} of {len(records)} samples failed materialization ({preview})"
        )

    raw_arr = np.asarray(raws, dtype=np.float64)
    normalized = np.asarray([spec.normalized(r) for r in raws], dtype=np.float64)
    dim = int(getattr(embedder, "dim"))
    extractor_id = str(getattr(embedder, "extractor_id", ""))
    z_clean = EmbeddingStore(
        ids=list(ids),
        matrix=np.vstack(clean_rows) if clean_rows else np.zeros((0, dim), np.float32),
        extractor_id=extractor_id,
        created_by=f"materialize:{spec.name}:clean",
    )
    z_transformed = EmbeddingStore(
        ids=list(ids),
        matrix=np.vstack(transformed_rows) if transformed_rows else np.zeros((0, dim), np.float32),
        extractor_id=extractor_id,
        created_by=f"materialize:{spec.name}:transformed",
    )
    return PairedEmbeddingSet(
        ids=ids,
        z_clean=z_clean,
        z_transformed=z_transformed,
        params_raw=raw_arr,
        params_normalized=normalized,
        failures=failures,
    )


def write_param_log(path, spec: TransformSpec, pairs: PairedEmbeddingSet) -> None:
    """JSONL log: one header line, one line per drawn parameter, one line
    per failed sample."""
    with open(path, "w", encoding="utf-8") as fh:
        header = {
            "record": "header",
            "transform": spec.name,
            "fv_target": spec.fv_target,
            "range": [spec.range[0], spec.range[1]],
            "neutral": spec.neutral,
            "seed": spec.seed,
        }
        fh.write(json.dumps(header, sort_keys=True) + "\n")
        for sample_id, raw, unit in zip(pairs.ids, pairs.params_raw, pairs.params_normalized):
            row = {
                "record": "param",
                "id": sample_id,
                "param_raw": float(raw),
                "param_normalized": float(unit),
            }
            fh.write(json.dumps(row, sort_keys=True) + "\n")
        for sample_id, message in pairs.failures:
            fh.write(
                json.dumps({"record": "failure", "id": sample_id, "error": message},
                           sort_keys=True) + "\n"
            )


def read_param_log(path) -> tuple[dict, dict[str, tuple[float, float]], set[str]]:
    """Parse a parameter log.

    Returns (header, {id: (raw, normalized)}, failed ids). Failed ids were
    dropped at materialization and are legitimately absent from the stores.
    """
    file = Path(path)
    if not file.is_file():
        raise ValidationError(f"param log not found: {file}")
    header = None
    params: dict[str, tuple[float, float]] = {}
    failed: set[str] = set()
    with open(file, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise ValidationError(f"param log line {line_no}: invalid JSON") from exc
            kind = obj.get("record")
            if kind == "header":
                if header is not None:
                    raise ValidationError(f"param log line {line_no}: duplicate header")
                header = obj
            elif kind == "param":
                params[str(obj["id"])] = (float(obj["param_raw"]), float(obj["param_normalized"]))
            elif kind == "failure":
                failed.add(str(obj["id"]))
            else:
                raise ValidationError(f"param log line {line_no}: unknown record {kind!r}")
    if header is None:
        raise ValidationError(f"{file}: param log has no header line")
    return header, params, failed
