"""Deterministic seed derivation.

All randomness in the package flows through explicit 64-bit seeds. Derived
seeds are stable hashes of (parent seed, string tags), so per-sample draws
do not depend on dataset ordering or subsetting.
"""

import hashlib

import numpy as np

_MASK64 = (1 << 64) - 1


def derive_seed(seed: int, *tags: str | int) -> int:
    """Derive a child seed from ``seed`` and a sequence of tags.

    Deterministic across platforms and processes; independent draws for
    distinct tag sequences.
    """
    h = hashlib.blake2b(digest_size=8)
    h.update(int(seed & _MASK64).to_bytes(8, "little"))
    for tag in tags:
        if isinstance(tag, int):
            h.update(b"\x00i" + int(tag & _MASK64).to_bytes(8, "little"))
        else:
            h.update(b"\x00s" + tag.encode("utf-8"))
    return int.from_bytes(h.digest(), "little")


def rng_for(seed: int, *tags: str | int) -> np.random.Generator:
    """A fresh PCG64 generator seeded from ``derive_seed(seed, *tags)``."""
    return np.random.Generator(np.random.PCG64(derive_seed(seed, *tags)))
