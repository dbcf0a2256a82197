"""Export a manifest's media through a checkpoint into an .emb container.

The adapter consumes the evaluation engine's artifacts as-is: it reads
its manifests, embeds whatever media they point at (clean or already
transformed), and writes containers the engine's reader validates. It
never applies transformations itself, so parameter bookkeeping stays
with whoever materialized the media.
"""

from pathlib import Path

from repaxes.io import EmbeddingStore, load_manifest, write_embeddings

from .errors import AdapterError
from .spec import AdapterSpec


def _media_paths(records, root: Path):
    paths = []
    for record in records:
        path = root / record.media_path
        if not path.is_file():
            raise AdapterError(f"media file missing for id {record.id!r}: {path}")
        paths.append(path)
    return paths


def export_embeddings(manifest, adapter: AdapterSpec, out_path, media_root=None):
    """Embed every sample in the manifest and write the container.

    Relative media paths resolve against media_root, defaulting to the
    manifest's own directory. Returns the written path.
    """
    manifest = Path(manifest)
    records = load_manifest(manifest)
    if not records:
        raise AdapterError(f"manifest {manifest} has no records")
    root = Path(media_root) if media_root is not None else manifest.parent
    paths = _media_paths(records, root)

    if adapter.modality == "image":
        from .vision import embed_images

        matrix = embed_images(adapter, paths)
    else:
        from .speech import embed_clips

        matrix = embed_clips(adapter, paths)

    if matrix.shape[1] != adapter.dim:
        raise AdapterError(
            f"{adapter.model} produced dim {matrix.shape[1]}, spec declares {adapter.dim}"
        )
    store = EmbeddingStore(
        ids=[record.id for record in records],
        matrix=matrix,
        extractor_id=adapter.extractor_id,
        created_by="model-adapters",
    )
    write_embeddings(store, out_path)
    return Path(out_path)
