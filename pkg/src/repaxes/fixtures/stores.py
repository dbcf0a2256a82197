"""Deterministic synthetic embedding stores with known latent structure.

Each generator is a pure function of its arguments; calling it twice yields
bit-identical stores. The returned bundle carries everything an evaluation
needs: the store itself, split-assigned records with ground-truth values
attached, and the latent direction along which each tracked value moves.
"""

from dataclasses import dataclass
from typing import Mapping

import numpy as np

from ..errors import ConfigurationError, ValidationError
from ..io.container import EmbeddingStore
from ..io.manifest import SampleRecord
from ..io.pairs import PairedEmbeddingSet
from ..seeds import rng_for

# Small enough that probe error floors are set by the construction itself,
# large enough to avoid exact-interpolation degeneracy.
STORE_NOISE_SIGMA = 0.01

TRAIN_FRACTION = 0.70
VAL_FRACTION = 0.15

MIXING_ANGLE_RANGE = (np.pi / 6, np.pi / 3)


@dataclass(frozen=True)
class StoreFixture:
    """A synthetic store plus the ground truth it was built from."""

    store: EmbeddingStore
    records: list[SampleRecord]
    fv_values: dict[str, np.ndarray]
    shift_directions: dict[str, np.ndarray]


def _sample_ids(n: int) -> list[str]:
    return [f"s{i:05d}" for i in range(n)]


def split_for_index(i: int, n: int) -> str:
    """Contiguous 70/15/15 split assignment; rows are i.i.d. so contiguity
    introduces no bias and keeps subsets stable under truncation."""
    n_train = round(TRAIN_FRACTION * n)
    n_val = round(VAL_FRACTION * n)
    if i < n_train:
        return "train"
    if i < n_train + n_val:
        return "val"
    return "test"


def records_for_ids(ids: list[str], fv_values: Mapping[str, np.ndarray] | None = None) -> list[SampleRecord]:
    """Split-assigned records for synthetic samples, ground truth attached."""
    n = len(ids)
    fv_values = fv_values or {}
    records = []
    for i, sample_id in enumerate(ids):
        records.append(
            SampleRecord(
                id=sample_id,
                split=split_for_index(i, n),
                fv_values={name: float(values[i]) for name, values in fv_values.items()},
            )
        )
    return records


def _check_store_shape(n: int, d: int) -> None:
    if n < 10:
        raise ConfigurationError(f"store needs at least 10 samples, got {n}")
    if d < 1:
        raise ConfigurationError(f"store dimension must be >= 1, got {d}")


def gen_disentangled_store(n: int, d: int, fv_dims: Mapping[str, int], seed: int = 0) -> StoreFixture:
    """Store where each tracked value owns a disjoint dimension block.

    Block dims hold the value plus Gaussian noise (sigma 0.01); leftover
    dims are pure noise at the same scale. Perturbing one value therefore
    cannot move any other value's block.
    """
    _check_store_shape(n, d)
    if not fv_dims:
        raise ConfigurationError("fv_dims must name at least one tracked value")
    widths = {name: int(k) for name, k in fv_dims.items()}
    if any(k < 1 for k in widths.values()):
        raise ConfigurationError(f"every block must have width >= 1, got {widths}")
    total = sum(widths.values())
    if total > d:
        raise ConfigurationError(f"blocks need {total} dims but the store has {d}")

    matrix = np.empty((n, d), dtype=np.float64)
    fv_values: dict[str, np.ndarray] = {}
    shift_directions: dict[str, np.ndarray] = {}
    start = 0
    for name, k in widths.items():
        values = rng_for(seed, "fv", name).uniform(0.0, 1.0, size=n)
        noise = rng_for(seed, "block-noise", name).normal(0.0, STORE_NOISE_SIGMA, size=(n, k))
        matrix[:, start : start + k] = values[:, None] + noise
        direction = np.zeros(d)
        direction[start : start + k] = 1.0
        fv_values[name] = values
        shift_directions[name] = direction
        start += k
    if start < d:
        matrix[:, start:] = rng_for(seed, "ambient-noise").normal(
            0.0, STORE_NOISE_SIGMA, size=(n, d - start)
        )

    ids = _sample_ids(n)
    store = EmbeddingStore(
        ids=ids,
        matrix=matrix.astype(np.float32),
        extractor_id="fixture:disentangled",
        created_by="synthetic-fixtures",
    )
    return StoreFixture(
        store=store,
        records=records_for_ids(ids, fv_values),
        fv_values=fv_values,
        shift_directions=shift_directions,
    )


def gen_entangled_store(
    n: int,
    d: int,
    seed: int = 0,
    fv_x: str = "fv_x",
    fv_y: str = "fv_y",
    block_dim: int = 4,
) -> StoreFixture:
    """Store where two tracked values share one dimension block.

    The block holds a seeded rotation of the value pair, cos(a)*x + sin(a)*y,
    and the complementary coordinate is discarded, so the values cannot be
    separated from the store. A probe for x must read the shared block, and
    shifting y then necessarily corrupts its prediction.
    """
    _check_store_shape(n, d)
    if fv_x == fv_y:
        raise ConfigurationError("the two tracked values must have distinct names")
    if not 1 <= block_dim <= d:
        raise ConfigurationError(f"block_dim must be in [1, {d}], got {block_dim}")

    x = rng_for(seed, "fv", fv_x).uniform(0.0, 1.0, size=n)
    y = rng_for(seed, "fv", fv_y).uniform(0.0, 1.0, size=n)
    angle = float(rng_for(seed, "mixing-angle").uniform(*MIXING_ANGLE_RANGE))
    mixed = np.cos(angle) * x + np.sin(angle) * y

    matrix = np.empty((n, d), dtype=np.float64)
    noise = rng_for(seed, "block-noise", "mixed").normal(0.0, STORE_NOISE_SIGMA, size=(n, block_dim))
    matrix[:, :block_dim] = mixed[:, None] + noise
    if block_dim < d:
        matrix[:, block_dim:] = rng_for(seed, "ambient-noise").normal(
            0.0, STORE_NOISE_SIGMA, size=(n, d - block_dim)
        )

    dir_x = np.zeros(d)
    dir_x[:block_dim] = np.cos(angle)
    dir_y = np.zeros(d)
    dir_y[:block_dim] = np.sin(angle)

    ids = _sample_ids(n)
    fv_values = {fv_x: x, fv_y: y}
    store = EmbeddingStore(
        ids=ids,
        matrix=matrix.astype(np.float32),
        extractor_id="fixture:entangled",
        created_by="synthetic-fixtures",
    )
    return StoreFixture(
        store=store,
        records=records_for_ids(ids, fv_values),
        fv_values=fv_values,
        shift_directions={fv_x: dir_x, fv_y: dir_y},
    )


def gen_linear_action_pairs(
    n: int, d: int, seed: int = 0, params: np.ndarray | None = None
) -> PairedEmbeddingSet:
    """Pairs related by a fixed latent translation.

    Clean rows are random unit vectors z; transformed rows are
    normalize(z + p*u) for a seeded unit direction u and p uniform in [0, 1].
    Rows with p exactly 0 are copied verbatim, not renormalized.
    """
    if n < 2 or d < 2:
        raise ConfigurationError(f"need n >= 2 and d >= 2, got n={n}, d={d}")
    z = rng_for(seed, "latent-z").standard_normal((n, d))
    z /= np.linalg.norm(z, axis=1, keepdims=True)
    u = rng_for(seed, "action-direction").standard_normal(d)
    u /= np.linalg.norm(u)
    if params is None:
        p = rng_for(seed, "action-params").uniform(0.0, 1.0, size=n)
    else:
        p = np.asarray(params, dtype=np.float64)
        if p.shape != (n,):
            raise ValidationError(f"params must have shape ({n},), got {p.shape}")
        if not np.all(np.isfinite(p)) or p.min() < 0.0 or p.max() > 1.0:
            raise ValidationError("params must be finite and lie in [0, 1]")

    moved = z + p[:, None] * u
    moved /= np.linalg.norm(moved, axis=1, keepdims=True)
    at_rest = p == 0.0
    moved[at_rest] = z[at_rest]

    ids = _sample_ids(n)
    z_clean = EmbeddingStore(
        ids=ids,
        matrix=z.astype(np.float32),
        extractor_id="fixture:linear-action",
        created_by="synthetic-fixtures",
    )
    z_transformed = EmbeddingStore(
        ids=ids,
        matrix=moved.astype(np.float32),
        extractor_id="fixture:linear-action",
        created_by="synthetic-fixtures",
    )
    return PairedEmbeddingSet(
        ids=ids,
        z_clean=z_clean,
        z_transformed=z_transformed,
        params_raw=p,
        params_normalized=p,
    )


def shuffle_params(pairs: PairedEmbeddingSet, seed: int = 0) -> PairedEmbeddingSet:
    """Pairs with parameters permuted against the embeddings, destroying any
    parameter information while keeping every marginal distribution intact."""
    perm = rng_for(seed, "shuffle-params").permutation(pairs.count)
    return PairedEmbeddingSet(
        ids=pairs.ids,
        z_clean=pairs.z_clean,
        z_transformed=pairs.z_transformed,
        params_raw=pairs.params_raw[perm],
        params_normalized=pairs.params_normalized[perm],
        failures=list(pairs.failures),
    )


def shuffle_transformed(pairs: PairedEmbeddingSet, seed: int = 0) -> PairedEmbeddingSet:
    """Pairs with transformed rows permuted against clean rows, destroying
    the action structure."""
    perm = rng_for(seed, "shuffle-transformed").permutation(pairs.count)
    mixed = EmbeddingStore(
        ids=pairs.ids,
        matrix=np.ascontiguousarray(pairs.z_transformed.matrix[perm]),
        extractor_id=pairs.z_transformed.extractor_id,
        created_by="synthetic-fixtures",
    )
    return PairedEmbeddingSet(
        ids=pairs.ids,
        z_clean=pairs.z_clean,
        z_transformed=mixed,
        params_raw=pairs.params_raw,
        params_normalized=pairs.params_normalized,
        failures=list(pairs.failures),
    )
