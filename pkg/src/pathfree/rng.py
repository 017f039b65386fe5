"""Reproducible randomness.

Two sources are used throughout the package:

* a SplitMix64 counter stream, ``counter_uniform(key, i)``, giving the i-th
  uniform of stream ``key`` without generating the first i-1. Edge states of
  G(N, p) are read off this stream by pair index, which makes huge graphs
  available lazily (:class:`pathfree.graph.HashedGnp`).
* ``generator(seed, *labels)``: a numpy ``Generator`` over Philox (also
  counter based) for everything sequential (partitions, colorings, picks).

Per-trial seeds are ``derive_seed(seed, trial) = mix64(seed ^ trial)``.
"""

from __future__ import annotations

import numpy as np

MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15
_M1 = 0xBF58476D1CE4E5B9
_M2 = 0x94D049BB133111EB

_U64 = np.uint64
_INV53 = 1.0 / (1 << 53)


def mix64(z: int) -> int:
    """SplitMix64 finalizer on a Python int (taken mod 2**64)."""
    z &= MASK64
    z = ((z ^ (z >> 30)) * _M1) & MASK64
    z = ((z ^ (z >> 27)) * _M2) & MASK64
    return z ^ (z >> 31)


def mix64_array(z: np.ndarray) -> np.ndarray:
    z = np.atleast_1d(np.asarray(z, dtype=_U64))
    with np.errstate(over="ignore"):
        z = (z ^ (z >> _U64(30))) * _U64(_M1)
        z = (z ^ (z >> _U64(27))) * _U64(_M2)
    return z ^ (z >> _U64(31))


def derive_seed(seed: int, trial: int) -> int:
    """Seed of trial ``trial`` in an experiment seeded with ``seed``."""
    return mix64((seed & MASK64) ^ (trial & MASK64))


def stream_key(seed: int, *labels: int) -> int:
    """Fold integer labels into a 64-bit stream key."""
    key = mix64(seed & MASK64)
    for label in labels:
        key = mix64(key ^ ((label * GOLDEN_GAMMA) & MASK64))
    return key


def counter_uniform(key: int, index) -> np.ndarray:
    """Uniforms in [0, 1) at positions ``index`` of the stream ``key``.

    Position i maps to ``mix64(key + (i + 1) * GOLDEN_GAMMA) >> 11``, scaled
    by 2**-53, so values are exact dyadic rationals on every platform.
    """
    idx = np.asarray(index, dtype=_U64)
    shape = idx.shape
    with np.errstate(over="ignore"):
        state = _U64(key & MASK64) + (idx.reshape(-1) + _U64(1)) * _U64(GOLDEN_GAMMA)
    out = (mix64_array(state) >> _U64(11)).astype(np.float64) * _INV53
    return out.reshape(shape)


def generator(seed: int, *labels: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(key=stream_key(seed, *labels)))


# Labels that separate the streams drawn from one seed.
EDGES = 1
SKIP = 2
PARTITION = 3
SELECT = 4
COLORS = 5
BLOCKS = 6
