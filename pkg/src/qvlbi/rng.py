"""Deterministic random-number streams.

Every stochastic routine in the package draws from a generator produced
here.  A stream is addressed by a base seed plus an optional lane of
integers (shot index, batch index, ...), so parallel and serial
execution of the same batch decomposition produce identical aggregate
statistics.
"""

from __future__ import annotations

import numpy as np


def rng_for(seed: int, *lane: int) -> np.random.Generator:
    """Generator for (seed, *lane); identical arguments, identical stream."""
    return np.random.default_rng(np.random.SeedSequence([int(seed), *map(int, lane)]))


def derive_seed(seed: int, *lane: int) -> int:
    """Collapse (seed, *lane) into a plain integer seed for APIs that take one."""
    return int(np.random.SeedSequence([int(seed), *map(int, lane)]).generate_state(1)[0])
