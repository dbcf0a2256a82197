"""Run configuration: parsing, cross-referencing, and content hashing.

A run is described by one UTF-8 JSON document.  Relative paths inside it
are resolved against the directory containing the config file.  Every
random seed must be written down explicitly; nothing in a run may draw
entropy from the environment.
"""

import hashlib
import json
from dataclasses import dataclass, field
from pathlib import Path

from ..axes.report import AXES
from ..axes.training import AXIS_MAX_EPOCHS, AXIS_PATIENCE
from ..errors import ConfigurationError
from ..io import TransformSpec, load_manifest
from ..nn.adam import AdamConfig

CONFIG_SCHEMA_VERSION = 1

TOY_KINDS = ("toy_image", "toy_audio")
EXTRACTOR_KINDS = TOY_KINDS + ("external",)

# which job fields each axis needs beyond dataset/extractor
AXES_WITH_FV = ("informativeness", "disentanglement")
AXES_WITH_TRANSFORM = ("p_equivariance", "r_equivariance", "invariance", "disentanglement")
AXES_WITH_PROBE = ("informativeness", "p_equivariance", "r_equivariance", "disentanglement")
# these re-embed media at parameters chosen during evaluation, which a
# fixed pair of externally produced stores cannot provide
AXES_NEEDING_MEDIA = ("invariance", "disentanglement")

_TOP_LEVEL_KEYS = {"schema_version", "output_dir", "datasets", "extractors", "transforms", "jobs", "training"}
_TRAINING_KEYS = {"learning_rate", "weight_decay", "batch_size", "max_epochs", "patience"}


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise ConfigurationError(message)


def _string(obj: dict, key: str, where: str) -> str:
    value = obj.get(key)
    _require(isinstance(value, str) and value != "", f"{where}: {key!r} must be a non-empty string")
    return value


def _seed(obj: dict, key: str, where: str) -> int:
    value = obj.get(key)
    _require(isinstance(value, int) and not isinstance(value, bool) and value >= 0,
             f"{where}: {key!r} must be an explicit non-negative integer")
    return value


@dataclass(frozen=True)
class DatasetConfig:
    name: str
    manifest: Path
    media_root: Path | None


@dataclass(frozen=True)
class ExtractorConfig:
    name: str
    kind: str
    seed: int = 0
    dim: int = 64
    clean_store: Path | None = None
    transformed_store: Path | None = None
    param_log: Path | None = None


@dataclass(frozen=True)
class JobConfig:
    id: str
    axis: str
    dataset: str
    extractor: str
    fv: str = ""
    transform: str = ""
    probe: str = ""
    probe_seed: int = 0
    grid_points: int = 11


@dataclass
class RunConfig:
    base_dir: Path
    output_dir: Path
    datasets: dict[str, DatasetConfig]
    extractors: dict[str, ExtractorConfig]
    transforms: dict[str, TransformSpec]
    jobs: list[JobConfig]
    training: AdamConfig
    raw: dict = field(repr=False, default_factory=dict)


def _parse_dataset(name: str, obj: dict, base: Path) -> DatasetConfig:
    where = f"datasets[{name!r}]"
    _require(isinstance(obj, dict), f"{where} must be an object")
    unknown = set(obj) - {"manifest", "media_root"}
    _require(not unknown, f"{where}: unknown fields {sorted(unknown)}")
    manifest = base / _string(obj, "manifest", where)
    media_root = obj.get("media_root")
    if media_root is not None:
        _require(isinstance(media_root, str) and media_root != "",
                 f"{where}: media_root must be a non-empty string when given")
        media_root = base / media_root
    return DatasetConfig(name=name, manifest=manifest, media_root=media_root)


def _parse_extractor(name: str, obj: dict, base: Path) -> ExtractorConfig:
    where = f"extractors[{name!r}]"
    _require(isinstance(obj, dict), f"{where} must be an object")
    kind = _string(obj, "kind", where)
    _require(kind in EXTRACTOR_KINDS, f"{where}: kind must be one of {list(EXTRACTOR_KINDS)}")
    if kind in TOY_KINDS:
        unknown = set(obj) - {"kind", "seed", "dim"}
        _require(not unknown, f"{where}: unknown fields {sorted(unknown)}")
        seed = _seed(obj, "seed", where)
        dim = obj.get("dim", 64)
        _require(isinstance(dim, int) and not isinstance(dim, bool) and dim >= 2,
                 f"{where}: dim must be an integer >= 2")
        return ExtractorConfig(name=name, kind=kind, seed=seed, dim=dim)
    unknown = set(obj) - {"kind", "clean_store", "transformed_store", "param_log"}
    _require(not unknown, f"{where}: unknown fields {sorted(unknown)}")
    clean = base / _string(obj, "clean_store", where)
    transformed = obj.get("transformed_store")
    log = obj.get("param_log")
    _require((transformed is None) == (log is None),
             f"{where}: transformed_store and param_log must be given together")
    return ExtractorConfig(
        name=name,
        kind=kind,
        clean_store=clean,
        transformed_store=None if transformed is None else base / str(transformed),
        param_log=None if log is None else base / str(log),
    )


def _parse_transform(name: str, obj: dict) -> TransformSpec:
    where = f"transforms[{name!r}]"
    _require(isinstance(obj, dict), f"{where} must be an object")
    unknown = set(obj) - {"name", "fv_target", "range", "neutral", "seed"}
    _require(not unknown, f"{where}: unknown fields {sorted(unknown)}")
    rng = obj.get("range")
    _require(isinstance(rng, (list, tuple)) and len(rng) == 2,
             f"{where}: range must be a [low, high] pair")
    _require("neutral" in obj, f"{where}: neutral must be explicit")
    return TransformSpec(
        name=_string(obj, "name", where),
        fv_target=_string(obj, "fv_target", where),
        range=(float(rng[0]), float(rng[1])),
        neutral=float(obj["neutral"]),
        seed=_seed(obj, "seed", where),
    )


def _parse_job(obj: dict, index: int, config: RunConfig) -> JobConfig:
    where = f"jobs[{index}]"
    _require(isinstance(obj, dict), f"{where} must be an object")
    allowed = {"id", "axis", "dataset", "extractor", "fv", "transform", "probe", "probe_seed", "grid_points"}
    unknown = set(obj) - allowed
    _require(not unknown, f"{where}: unknown fields {sorted(unknown)}")

    job_id = _string(obj, "id", where)
    where = f"jobs[{index}] ({job_id})"
    axis = _string(obj, "axis", where)
    _require(axis in AXES, f"{where}: axis must be one of {list(AXES)}")

    dataset = _string(obj, "dataset", where)
    _require(dataset in config.datasets, f"{where}: dataset {dataset!r} is not declared")
    extractor = _string(obj, "extractor", where)
    _require(extractor in config.extractors, f"{where}: extractor {extractor!r} is not declared")

    fv = ""
    if axis in AXES_WITH_FV:
        fv = _string(obj, "fv", where)
    else:
        _require("fv" not in obj, f"{where}: axis {axis!r} takes no fv")

    transform = ""
    if axis in AXES_WITH_TRANSFORM:
        transform = _string(obj, "transform", where)
        _require(transform in config.transforms, f"{where}: transform {transform!r} is not declared")
    else:
        _require("transform" not in obj, f"{where}: axis {axis!r} takes no transform")

    probe = ""
    probe_seed = 0
    if axis in AXES_WITH_PROBE:
        probe = obj.get("probe", "mlp" if axis == "r_equivariance" else None)
        _require(probe in ("slp", "mlp"), f"{where}: probe must be 'slp' or 'mlp'")
        _require(axis != "r_equivariance" or probe == "mlp",
                 f"{where}: this axis trains a fixed deep probe; probe must be 'mlp'")
        probe_seed = _seed(obj, "probe_seed", where)
    else:
        _require("probe" not in obj and "probe_seed" not in obj,
                 f"{where}: axis {axis!r} trains no probe")

    grid_points = 11
    if axis == "invariance":
        grid_points = obj.get("grid_points", 11)
        _require(isinstance(grid_points, int) and not isinstance(grid_points, bool) and grid_points >= 1,
                 f"{where}: grid_points must be an integer >= 1")
    else:
        _require("grid_points" not in obj, f"{where}: only invariance takes grid_points")

    ext = config.extractors[extractor]
    if ext.kind == "external":
        _require(axis not in AXES_NEEDING_MEDIA,
                 f"{where}: axis {axis!r} re-embeds media at evaluation-chosen parameters, "
                 "which precomputed stores cannot provide; use a toy extractor")
        if axis in ("p_equivariance", "r_equivariance"):
            _require(ext.transformed_store is not None,
                     f"{where}: extractor {extractor!r} declares no transformed_store/param_log")
    else:
        _require(config.datasets[dataset].media_root is not None,
                 f"{where}: dataset {dataset!r} declares no media_root")
        modality = "image" if ext.kind == "toy_image" else "audio"
        if transform:
            spec_modality = config.transforms[transform].modality
            _require(spec_modality == modality,
                     f"{where}: transform {transform!r} is {spec_modality}, extractor is {modality}")

    return JobConfig(
        id=job_id, axis=axis, dataset=dataset, extractor=extractor,
        fv=fv, transform=transform, probe=probe or ("none" if axis == "invariance" else probe),
        probe_seed=probe_seed, grid_points=grid_points,
    )


def _parse_training(obj: dict | None) -> AdamConfig:
    defaults = AdamConfig(max_epochs=AXIS_MAX_EPOCHS, patience=AXIS_PATIENCE)
    if obj is None:
        return defaults
    _require(isinstance(obj, dict), "training must be an object")
    unknown = set(obj) - _TRAINING_KEYS
    _require(not unknown, f"training: unknown fields {sorted(unknown)}")
    merged = {
        "learning_rate": float(obj.get("learning_rate", defaults.learning_rate)),
        "weight_decay": float(obj.get("weight_decay", defaults.weight_decay)),
        "batch_size": int(obj.get("batch_size", defaults.batch_size)),
        "max_epochs": int(obj.get("max_epochs", defaults.max_epochs)),
        "patience": int(obj.get("patience", defaults.patience)),
    }
    return AdamConfig(**merged)


def load_config(path) -> RunConfig:
    """Parse and cross-check a run config; all declared references must resolve."""
    file = Path(path)
    try:
        text = file.read_text(encoding="utf-8")
    except FileNotFoundError:
        raise
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigurationError(f"{file}: not valid JSON ({exc.msg}, line {exc.lineno})") from exc
    _require(isinstance(doc, dict), f"{file}: config must be a JSON object")

    unknown = set(doc) - _TOP_LEVEL_KEYS
    _require(not unknown, f"unknown top-level fields {sorted(unknown)}")
    version = doc.get("schema_version")
    _require(version == CONFIG_SCHEMA_VERSION,
             f"schema_version must be {CONFIG_SCHEMA_VERSION}, got {version!r}")

    base = file.resolve().parent
    output_dir = base / _string(doc, "output_dir", "config")

    datasets_obj = doc.get("datasets")
    _require(isinstance(datasets_obj, dict) and datasets_obj, "datasets must be a non-empty object")
    extractors_obj = doc.get("extractors")
    _require(isinstance(extractors_obj, dict) and extractors_obj, "extractors must be a non-empty object")
    transforms_obj = doc.get("transforms", {})
    _require(isinstance(transforms_obj, dict), "transforms must be an object")
    jobs_obj = doc.get("jobs")
    _require(isinstance(jobs_obj, list) and jobs_obj, "jobs must be a non-empty array")

    config = RunConfig(
        base_dir=base,
        output_dir=output_dir,
        datasets={name: _parse_dataset(name, obj, base) for name, obj in datasets_obj.items()},
        extractors={name: _parse_extractor(name, obj, base) for name, obj in extractors_obj.items()},
        transforms={name: _parse_transform(name, obj) for name, obj in transforms_obj.items()},
        jobs=[],
        training=_parse_training(doc.get("training")),
        raw=doc,
    )
    seen: set[str] = set()
    for index, obj in enumerate(jobs_obj):
        job = _parse_job(obj, index, config)
        _require(job.id not in seen, f"jobs[{index}]: duplicate job id {job.id!r}")
        seen.add(job.id)
        config.jobs.append(job)
    return config


def check_inputs(config: RunConfig) -> None:
    """Verify that every file a run would touch is present and coherent.

    Run before any computation so a bad reference fails the whole run
    up front rather than one job deep into it.
    """
    records_by_dataset = {}
    for name, dataset in sorted(config.datasets.items()):
        records = load_manifest(dataset.manifest)
        records_by_dataset[name] = records
        if dataset.media_root is not None:
            missing = [
                r.id for r in records
                if r.media_path and not (dataset.media_root / r.media_path).is_file()
            ]
            _require(not missing,
                     f"datasets[{name!r}]: media missing for ids {missing[:10]}")

    for name, ext in sorted(config.extractors.items()):
        for label, path in (("clean_store", ext.clean_store),
                            ("transformed_store", ext.transformed_store),
                            ("param_log", ext.param_log)):
            if path is not None and not path.is_file():
                raise ConfigurationError(f"extractors[{name!r}]: {label} not found: {path}")

    for job in config.jobs:
        records = records_by_dataset[job.dataset]
        needed = {job.fv} if job.fv else set()
        if job.axis == "disentanglement":
            needed.add(config.transforms[job.transform].fv_target)
            _require(job.fv != config.transforms[job.transform].fv_target,
                     f"job {job.id!r}: probe value and transform target are both {job.fv!r}; "
                     "measuring a value against its own transform is an equivariance question")
        for fv in sorted(needed):
            lacking = [r.id for r in records if fv not in r.fv_values]
            _require(not lacking,
                     f"job {job.id!r}: manifest records {lacking[:10]} carry no value {fv!r}")


def _digest_file(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


def canonical_config(config: RunConfig) -> dict:
    """The fully resolved numeric content of a config, defaults included.

    Output location is deliberately absent: moving results does not
    change what they contain.
    """
    transforms = {
        name: {
            "name": spec.name,
            "fv_target": spec.fv_target,
            "range": [spec.range[0], spec.range[1]],
            "neutral": spec.neutral,
            "seed": spec.seed,
        }
        for name, spec in config.transforms.items()
    }
    extractors = {}
    for name, ext in config.extractors.items():
        if ext.kind in TOY_KINDS:
            extractors[name] = {"kind": ext.kind, "seed": ext.seed, "dim": ext.dim}
        else:
            extractors[name] = {"kind": ext.kind}
    jobs = [
        {
            "id": job.id, "axis": job.axis, "dataset": job.dataset,
            "extractor": job.extractor, "fv": job.fv, "transform": job.transform,
            "probe": job.probe, "probe_seed": job.probe_seed, "grid_points": job.grid_points,
        }
        for job in config.jobs
    ]
    training = config.training
    return {
        "schema_version": CONFIG_SCHEMA_VERSION,
        "datasets": sorted(config.datasets),
        "extractors": extractors,
        "transforms": transforms,
        "jobs": jobs,
        "training": {
            "learning_rate": training.learning_rate,
            "weight_decay": training.weight_decay,
            "batch_size": training.batch_size,
            "max_epochs": training.max_epochs,
            "patience": training.patience,
        },
    }


def config_hash(config: RunConfig) -> str:
    """SHA-256 over the canonical config plus digests of every input file.

    Datasets contribute their manifest bytes and external extractors
    their store/log bytes, so editing any input invalidates completed
    work even when the config text is unchanged.
    """
    doc = canonical_config(config)
    digests: dict[str, str] = {}
    for name, dataset in sorted(config.datasets.items()):
        digests[f"dataset:{name}"] = _digest_file(dataset.manifest)
    for name, ext in sorted(config.extractors.items()):
        for label, path in (("clean", ext.clean_store),
                            ("transformed", ext.transformed_store),
                            ("params", ext.param_log)):
            if path is not None:
                digests[f"extractor:{name}:{label}"] = _digest_file(path)
    doc["input_digests"] = digests
    payload = json.dumps(doc, sort_keys=True, separators=(",", ":")).encode("utf-8")
    return hashlib.sha256(payload).hexdigest()
