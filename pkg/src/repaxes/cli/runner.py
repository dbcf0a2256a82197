"""Job orchestration: execute a validated config and write reports.

Completed jobs are skipped on rerun as long as the config hash still
matches what produced them; ``force`` reruns everything.  Jobs may run
in a small worker pool, but each job's numerics stay single-threaded,
so results do not depend on the pool size.
"""

import json
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass
from pathlib import Path

import numpy as np

from .. import __version__
from ..axes import (
    eval_disentanglement,
    eval_informativeness,
    eval_invariance,
    eval_p_equivariance,
    eval_r_equivariance,
    train_fv_probe,
    write_report,
)
from ..errors import ConfigurationError
from ..extract import (
    MediaPairEmbedder,
    ToyAudioExtractor,
    ToyImageExtractor,
    external_embeddings,
)
from ..io import EmbeddingStore, load_manifest, materialize_pairs, read_embeddings
from ..io.media import load_clip, load_image
from .config import (
    DatasetConfig,
    ExtractorConfig,
    JobConfig,
    RunConfig,
    check_inputs,
    config_hash,
    load_config,
)

SUMMARY_NAME = "summary.json"
REPORTS_DIR = "reports"


@dataclass
class JobResult:
    job_id: str
    status: str  # done | skipped | failed
    report_path: str
    wall_clock_s: float
    error: str = ""


@dataclass
class RunSummary:
    config_hash: str
    engine_version: str
    jobs: list[JobResult]

    @property
    def failed(self) -> list[JobResult]:
        return [job for job in self.jobs if job.status == "failed"]


class _Workspace:
    """Per-run caches: manifests, extractor instances, clean stores."""

    def __init__(self, config: RunConfig):
        self.config = config
        self._records: dict[str, list] = {}
        self._extractors: dict[str, object] = {}
        self._clean_stores: dict[tuple[str, str], EmbeddingStore] = {}

    def records(self, dataset: str):
        if dataset not in self._records:
            self._records[dataset] = load_manifest(self.config.datasets[dataset].manifest)
        return self._records[dataset]

    def extractor(self, name: str):
        if name not in self._extractors:
            ext = self.config.extractors[name]
            if ext.kind == "toy_image":
                self._extractors[name] = ToyImageExtractor(seed=ext.seed, dim=ext.dim)
            elif ext.kind == "toy_audio":
                self._extractors[name] = ToyAudioExtractor(seed=ext.seed, dim=ext.dim)
            else:
                raise ConfigurationError(f"extractor {name!r} is not a runnable model")
        return self._extractors[name]

    def _load_media(self, dataset: DatasetConfig, record, modality: str):
        path = dataset.media_root / record.media_path
        return load_image(path) if modality == "image" else load_clip(path)

    def clean_store(self, job: JobConfig) -> EmbeddingStore:
        """Embeddings of the untransformed samples, in manifest order."""
        key = (job.dataset, job.extractor)
        if key in self._clean_stores:
            return self._clean_stores[key]
        ext_cfg = self.config.extractors[job.extractor]
        records = self.records(job.dataset)
        if ext_cfg.kind == "external":
            full = read_embeddings(ext_cfg.clean_store)
            rows = np.stack([full.row(r.id) for r in records])
            store = EmbeddingStore(
                ids=[r.id for r in records], matrix=rows,
                extractor_id=full.extractor_id or job.extractor,
                created_by="external",
            )
        else:
            extractor = self.extractor(job.extractor)
            dataset = self.config.datasets[job.dataset]
            modality = "image" if ext_cfg.kind == "toy_image" else "audio"
            rows = np.stack([
                extractor.extract(self._load_media(dataset, record, modality))
                for record in records
            ])
            store = EmbeddingStore(
                ids=[r.id for r in records], matrix=rows,
                extractor_id=extractor.extractor_id, created_by="repaxes-run",
            )
        self._clean_stores[key] = store
        return store

    def pair_set(self, job: JobConfig):
        ext_cfg = self.config.extractors[job.extractor]
        records = self.records(job.dataset)
        spec = self.config.transforms[job.transform]
        if ext_cfg.kind == "external":
            return external_embeddings(
                records, ext_cfg.clean_store, ext_cfg.transformed_store, ext_cfg.param_log
            )
        return materialize_pairs(records, spec, self.media_embedder(job))

    def media_embedder(self, job: JobConfig) -> MediaPairEmbedder:
        spec = self.config.transforms[job.transform]
        dataset = self.config.datasets[job.dataset]
        return MediaPairEmbedder(
            self.extractor(job.extractor), spec, media_root=dataset.media_root
        )


def _job_snapshot(job: JobConfig, config: RunConfig) -> dict:
    doc = asdict(job)
    if job.transform:
        spec = config.transforms[job.transform]
        doc["transform_spec"] = {
            "name": spec.name, "fv_target": spec.fv_target,
            "range": [spec.range[0], spec.range[1]],
            "neutral": spec.neutral, "seed": spec.seed,
        }
    ext = config.extractors[job.extractor]
    doc["extractor_config"] = (
        {"kind": ext.kind, "seed": ext.seed, "dim": ext.dim}
        if ext.kind != "external" else {"kind": ext.kind}
    )
    return doc


def run_job(job: JobConfig, workspace: _Workspace):
    """Execute one axis evaluation and return its report."""
    config = workspace.config
    training = config.training
    if job.axis == "informativeness":
        report = eval_informativeness(
            workspace.clean_store(job), workspace.records(job.dataset), job.fv,
            probe_kind=job.probe, config=training, probe_seed=job.probe_seed,
        )
    elif job.axis == "p_equivariance":
        report = eval_p_equivariance(
            workspace.pair_set(job), workspace.records(job.dataset),
            probe_kind=job.probe, config=training, probe_seed=job.probe_seed,
            target_name=config.transforms[job.transform].name,
        )
    elif job.axis == "r_equivariance":
        report = eval_r_equivariance(
            workspace.pair_set(job), workspace.records(job.dataset),
            config=training, probe_seed=job.probe_seed,
            target_name=config.transforms[job.transform].name,
        )
    elif job.axis == "invariance":
        report = eval_invariance(
            workspace.records(job.dataset), config.transforms[job.transform],
            workspace.media_embedder(job), grid_points=job.grid_points,
        )
    elif job.axis == "disentanglement":
        probe, _ = train_fv_probe(
            workspace.clean_store(job), workspace.records(job.dataset), job.fv,
            probe_kind=job.probe, config=training, probe_seed=job.probe_seed,
        )
        report = eval_disentanglement(
            probe, job.fv, workspace.records(job.dataset),
            config.transforms[job.transform], workspace.media_embedder(job),
            probe_kind=job.probe,
        )
    else:  # unreachable once the config validated
        raise ConfigurationError(f"unknown axis {job.axis!r}")
    report.config = {**report.config, "job": _job_snapshot(job, config)}
    return report


def _prior_hash(summary_path: Path) -> str:
    if not summary_path.is_file():
        return ""
    try:
        doc = json.loads(summary_path.read_text(encoding="utf-8"))
    except (json.JSONDecodeError, OSError):
        return ""
    value = doc.get("config_hash", "")
    return value if isinstance(value, str) else ""


def _execute(job: JobConfig, workspace: _Workspace, report_path: Path) -> JobResult:
    started = time.time()
    try:
        report = run_job(job, workspace)
        write_report(report, report_path)
    except Exception as exc:  # a broken job must not sink its siblings
        return JobResult(
            job_id=job.id, status="failed", report_path="",
            wall_clock_s=time.time() - started,
            error=f"{type(exc).__name__}: {exc}",
        )
    return JobResult(
        job_id=job.id, status="done",
        report_path=str(report_path.relative_to(workspace.config.output_dir)),
        wall_clock_s=time.time() - started,
    )


def write_summary(summary: RunSummary, path: Path) -> None:
    doc = {
        "config_hash": summary.config_hash,
        "engine_version": summary.engine_version,
        "jobs": [asdict(job) for job in summary.jobs],
    }
    path.write_text(json.dumps(doc, sort_keys=True, indent=2) + "\n", encoding="utf-8")


def cmd_run(config_path, force: bool = False, jobs: int = 1) -> RunSummary:
    """Validate, execute every job, and write reports plus a run summary."""
    if jobs < 1:
        raise ConfigurationError("--jobs must be >= 1")
    config = load_config(config_path)
    check_inputs(config)
    current_hash = config_hash(config)

    reports_dir = config.output_dir / REPORTS_DIR
    reports_dir.mkdir(parents=True, exist_ok=True)
    summary_path = config.output_dir / SUMMARY_NAME
    reusable = not force and _prior_hash(summary_path) == current_hash

    workspace = _Workspace(config)
    results: dict[str, JobResult] = {}
    pending: list[JobConfig] = []
    for job in config.jobs:
        report_path = reports_dir / f"{job.id}.json"
        if reusable and report_path.is_file():
            results[job.id] = JobResult(
                job_id=job.id, status="skipped",
                report_path=str(report_path.relative_to(config.output_dir)),
                wall_clock_s=0.0,
            )
        else:
            pending.append(job)

    if jobs == 1 or len(pending) <= 1:
        for job in pending:
            results[job.id] = _execute(job, workspace, reports_dir / f"{job.id}.json")
    else:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            futures = {
                job.id: pool.submit(_execute, job, workspace, reports_dir / f"{job.id}.json")
                for job in pending
            }
            for job_id, future in futures.items():
                results[job_id] = future.result()

    summary = RunSummary(
        config_hash=current_hash,
        engine_version=__version__,
        jobs=[results[job.id] for job in config.jobs],
    )
    write_summary(summary, summary_path)
    return summary


def cmd_validate(config_path) -> RunConfig:
    """Parse, cross-check, and verify inputs without running anything."""
    config = load_config(config_path)
    check_inputs(config)
    return config
