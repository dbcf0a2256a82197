"""Adapter specs: which checkpoint to run, how to pool, what width to expect.

A spec is a small JSON object. ``checkpoint`` takes one of three forms:

* ``pretrained`` downloads the published weights;
* ``random:<seed>`` builds the architecture with seeded random weights,
  useful for offline conformance and determinism checks;
* ``file:<path>`` loads a local ``torch.save``'d state dict.

The declared ``dim`` must equal the width the checkpoint actually
produces; the exporter verifies this against the embeddings it computes.
``layer`` selects which hidden state to pool, ``-1`` meaning the final
one. The pooling choice is baked into the extractor id so containers
carry their own provenance.
"""

import json
from dataclasses import dataclass
from pathlib import Path

from .errors import AdapterError
from .registry import model_info

_SPEC_KEYS = {"model", "checkpoint", "pooling", "dim", "layer", "batch_size"}


@dataclass(frozen=True)
class AdapterSpec:
    model: str
    checkpoint: str
    pooling: str
    dim: int
    layer: int = -1
    batch_size: int = 8

    @property
    def modality(self) -> str:
        return model_info(self.model).modality

    @property
    def extractor_id(self) -> str:
        return f"{self.model}:{self.checkpoint}:{self.pooling}:layer={self.layer}"


def parse_checkpoint(value: str) -> tuple[str, object]:
    """Split a checkpoint field into (kind, detail)."""
    if value == "pretrained":
        return "pretrained", None
    if value.startswith("random:"):
        tail = value[len("random:"):]
        try:
            seed = int(tail)
        except ValueError:
            raise AdapterError(f"random checkpoint needs an integer seed, got {tail!r}") from None
        if seed < 0:
            raise AdapterError(f"random checkpoint seed must be >= 0, got {seed}")
        return "random", seed
    if value.startswith("file:"):
        path = value[len("file:"):]
        if not path:
            raise AdapterError("file checkpoint needs a path after 'file:'")
        return "file", Path(path)
    raise AdapterError(
        f"checkpoint must be 'pretrained', 'random:<seed>', or 'file:<path>', got {value!r}"
    )


def adapter_spec(model, checkpoint="pretrained", pooling=None, dim=None,
                 layer=-1, batch_size=8) -> AdapterSpec:
    """Resolve defaults from the registry and validate every field."""
    info = model_info(model)
    parse_checkpoint(checkpoint)
    if pooling is None:
        pooling = info.default_pooling
    if pooling not in info.poolings:
        allowed = ", ".join(info.poolings)
        raise AdapterError(f"{model} supports pooling {allowed}, not {pooling!r}")
    if dim is None:
        dim = info.dim
    if dim != info.dim:
        raise AdapterError(f"{model} produces dim {info.dim}, spec declares {dim}")
    if not isinstance(layer, int) or isinstance(layer, bool):
        raise AdapterError(f"layer must be an integer, got {layer!r}")
    if not isinstance(batch_size, int) or isinstance(batch_size, bool) or batch_size < 1:
        raise AdapterError(f"batch_size must be a positive integer, got {batch_size!r}")
    return AdapterSpec(model=model, checkpoint=checkpoint, pooling=pooling,
                       dim=dim, layer=layer, batch_size=batch_size)


def load_adapter_spec(path) -> AdapterSpec:
    """Read one JSON object describing an adapter."""
    path = Path(path)
    try:
        raw = json.loads(path.read_text(encoding="utf-8"))
    except OSError as exc:
        raise AdapterError(f"cannot read adapter spec {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise AdapterError(f"adapter spec {path} is not valid JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise AdapterError(f"adapter spec {path} must be a JSON object")
    unknown = set(raw) - _SPEC_KEYS
    if unknown:
        raise AdapterError(f"adapter spec {path} has unknown keys: {sorted(unknown)}")
    if "model" not in raw:
        raise AdapterError(f"adapter spec {path} is missing 'model'")
    kwargs = {
        "model": raw["model"],
        "checkpoint": raw.get("checkpoint", "pretrained"),
        "pooling": raw.get("pooling"),
        "dim": raw.get("dim"),
        "layer": raw.get("layer", -1),
        "batch_size": raw.get("batch_size", 8),
    }
    return adapter_spec(**kwargs)
