"""Assemble pairs from embedding stores produced by external tools."""

from pathlib import Path

import numpy as np

from ..errors import AlignmentError, FormatError
from ..io.container import EmbeddingStore, read_embeddings
from ..io.manifest import load_manifest
from ..io.pairs import PairedEmbeddingSet, read_param_log


def _missing_report(kind: str, missing: list[str]) -> str:
    shown = ", ".join(missing[:10])
    suffix = "" if len(missing) <= 10 else f" (+{len(missing) - 10} more)"
    return f"{len(missing)} manifest ids missing from {kind}: {shown}{suffix}"


def external_embeddings(
    manifest,
    clean_store_path,
    transformed_store_path,
    param_log_path,
) -> PairedEmbeddingSet:
    """Align externally produced stores and a parameter log by manifest ids.

    ``manifest`` is a path or an already-loaded record list. Ids the param
    log marks as failed are skipped; any other manifest id absent from a
    store or the log is an alignment error.
    """
    records = load_manifest(manifest) if isinstance(manifest, (str, Path)) else manifest
    clean = read_embeddings(clean_store_path)
    transformed = read_embeddings(transformed_store_path)
    if clean.dim != transformed.dim:
        raise FormatError(
            f"clean store dim {clean.dim} != transformed store dim {transformed.dim}"
        )
    _, params, failed = read_param_log(param_log_path)

    usable = [r for r in records if r.id not in failed]
    for kind, have in (("clean store", clean), ("transformed store", transformed)):
        missing = [r.id for r in usable if r.id not in have]
        if missing:
            raise AlignmentError(_missing_report(kind, missing))
    missing_params = [r.id for r in usable if r.id not in params]
    if missing_params:
        raise AlignmentError(_missing_report("param log", missing_params))

    ids = [r.id for r in usable]
    raws = np.array([params[i][0] for i in ids], dtype=np.float64)
    normalized = np.array([params[i][1] for i in ids], dtype=np.float64)
    z_clean = EmbeddingStore(
        ids=ids,
        matrix=np.vstack([clean.row(i) for i in ids]) if ids else np.zeros((0, clean.dim), np.float32),
        extractor_id=clean.extractor_id,
        created_by="external:clean",
    )
    z_transformed = EmbeddingStore(
        ids=ids,
        matrix=np.vstack([transformed.row(i) for i in ids]) if ids else np.zeros((0, transformed.dim), np.float32),
        extractor_id=transformed.extractor_id,
        created_by="external:transformed",
    )
    failures = sorted((i, "failed at export (param log)") for i in failed)
    return PairedEmbeddingSet(
        ids=ids,
        z_clean=z_clean,
        z_transformed=z_transformed,
        params_raw=raws,
        params_normalized=normalized,
        failures=failures,
    )
