"""Seeded random streams.

Every generator is a Philox (counter-based) bit generator keyed by a
``SeedSequence`` built from the master seed and an optional stream path.
Distinct stream paths give statistically independent, non-overlapping
streams, so parallel shards can be generated in any order.
"""

from __future__ import annotations

import os
from typing import Sequence

import numpy as np

from .errors import ParameterError

SEED_ENV_VAR = "HEAVYTAIL_SEED"
DEFAULT_SEED = 20170101
_U64 = 2**64


def check_seed(seed: int) -> int:
    if isinstance(seed, bool) or not isinstance(seed, (int, np.integer)):
        raise ParameterError(f"seed must be an integer, got {seed!r}")
    seed = int(seed)
    if not 0 <= seed < _U64:
        raise ParameterError(f"seed must fit in an unsigned 64-bit integer, got {seed}")
    return seed


def make_rng(seed: int, stream: Sequence[int] = ()) -> np.random.Generator:
    """Generator for ``(seed, stream)``; same inputs give the same draws."""
    seed = check_seed(seed)
    spawn_key = tuple(int(s) for s in stream)
    if any(s < 0 for s in spawn_key):
        raise ParameterError("stream indices must be non-negative")
    ss = np.random.SeedSequence(seed, spawn_key=spawn_key)
    return np.random.Generator(np.random.Philox(ss))


def derive_seed(seed: int, stream: Sequence[int]) -> int:
    """A 64-bit child seed, for handing a sub-stream to code that wants an int."""
    seed = check_seed(seed)
    ss = np.random.SeedSequence(seed, spawn_key=tuple(int(s) for s in stream))
    return int(ss.generate_state(1, dtype=np.uint64)[0])


def seed_from_env(default: int = DEFAULT_SEED) -> int:
    raw = os.environ.get(SEED_ENV_VAR)
    if raw is None or raw.strip() == "":
        return default
    try:
        return check_seed(int(raw.strip()))
    except ValueError as exc:
        raise ParameterError(f"{SEED_ENV_VAR}={raw!r} is not a valid 64-bit seed") from exc
