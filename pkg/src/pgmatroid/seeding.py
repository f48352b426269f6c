"""Counter-based seed derivation.

Every randomized sub-call gets a ``SeedSequence`` whose spawn key is the path
of branch indices leading to it, e.g. ``(2, 0)`` for sub-instance 0 of
branch 2.  Children are computed from the path alone, never from how many
siblings were drawn before, so serial and parallel schedules agree.
"""

from __future__ import annotations

import numpy as np


def root(seed: int) -> np.random.SeedSequence:
    if seed < 0:
        raise ValueError("seed must be non-negative")
    return np.random.SeedSequence(entropy=seed)


def child(ss: np.random.SeedSequence, *path: int) -> np.random.SeedSequence:
    return np.random.SeedSequence(ss.entropy, spawn_key=tuple(ss.spawn_key) + tuple(path))


def generator(ss: np.random.SeedSequence) -> np.random.Generator:
    return np.random.default_rng(ss)
