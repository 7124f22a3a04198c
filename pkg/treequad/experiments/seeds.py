"""
Deterministic per-run seeds.

A run's seed is ``root_seed XOR mix(replicate, dim_index, method_hash)``,
where ``mix`` folds the three values through splitmix64 and
``method_hash`` is the first 8 bytes (little-endian) of the BLAKE2b digest
of the method id. Anyone can recompute a single run's seed from those
ingredients.
"""

import hashlib
from typing import Dict

import numpy as np

_MASK = (1 << 64) - 1


def splitmix64(value: int) -> int:
    z = (value + 0x9E3779B97F4A7C15) & _MASK
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
    return z ^ (z >> 31)


def method_hash(method: str) -> int:
    digest = hashlib.blake2b(method.encode("utf-8"), digest_size=8).digest()
    return int.from_bytes(digest, "little")


def run_seed(root_seed: int, replicate: int, dim_index: int, method: str) -> int:
    """64-bit seed of one (replicate, dimension, method) run."""
    mixed = splitmix64(replicate)
    mixed = splitmix64(mixed ^ dim_index)
    mixed = splitmix64(mixed ^ method_hash(method))
    return (root_seed ^ mixed) & _MASK


def run_streams(seed: int) -> Dict[str, int]:
    """Independent child seeds for the stages of one run."""
    children = np.random.SeedSequence(seed).spawn(4)
    names = ("sampling", "active", "leaves", "split")
    return {
        name: int(child.generate_state(1, dtype=np.uint64)[0])
        for name, child in zip(names, children)
    }
