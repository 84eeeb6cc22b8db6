"""Defines counter-based random streams and stable seed derivation."""

__all__ = ["child_seed", "generator"]

import hashlib

import numpy as np

_SEED_MASK = (1 << 64) - 1


def generator(seed: int) -> np.random.Generator:
    """A Philox-backed generator for a 64-bit seed."""
    return np.random.Generator(np.random.Philox(int(seed) & _SEED_MASK))


def child_seed(seed: int, *keys) -> int:
    """Derive a 64-bit seed from a parent seed and a path of sub-task keys.

    Keys are hashed by their text so the result does not depend on the
    interpreter's hash randomisation or on the order sub-tasks are run.
    """
    spawn_key = tuple(
        int.from_bytes(hashlib.sha256(str(key).encode("utf8")).digest()[:4], "little")
        for key in keys
    )
    sequence = np.random.SeedSequence(
        entropy=int(seed) & _SEED_MASK, spawn_key=spawn_key
    )
    return int(sequence.generate_state(1, dtype=np.uint64)[0])
