"""Named-stream random number generation.

Every stochastic choice in the package flows from one 64-bit seed through
named child streams, so adding work items (trees, stations, epochs) never
perturbs the draws of existing ones.
"""

from __future__ import annotations

import zlib

import numpy as np


def stream_key(*names: str | int) -> list[int]:
    """Map a path of stream names to a stable list of 32-bit integers."""
    key = []
    for name in names:
        if isinstance(name, int):
            key.append(name & 0xFFFFFFFF)
        else:
            key.append(zlib.crc32(name.encode("utf-8")))
    return key


def child_rng(seed: int, *names: str | int) -> np.random.Generator:
    """Generator for the named child stream of ``seed``.

    Same (seed, names) always yields the same stream, on every platform.
    """
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence([seed & 0xFFFFFFFFFFFFFFFF] + stream_key(*names))))
