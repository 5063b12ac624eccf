from typing import Dict

import numpy as np

STREAM_NAMES = ("setup", "inputs", "adversary", "schedule", "coin")


class SeedStreams:
    """
    Splits a single run seed into disjoint, independently seeded numpy generators, one per consumer.
    The same (seed, name) pair always yields the same stream, regardless of which other streams were drawn.

    :param seed: non-negative integer run seed
    """

    def __init__(self, seed: int):
        if seed < 0:
            raise ValueError(f"seed must be non-negative, got {seed}")
        self.seed = seed
        children = np.random.SeedSequence(seed).spawn(len(STREAM_NAMES))
        self._sequences: Dict[str, np.random.SeedSequence] = dict(zip(STREAM_NAMES, children))

    def generator(self, name: str) -> np.random.Generator:
        return np.random.default_rng(self._sequences[name])

    def seed_bytes(self, name: str, size: int = 32) -> bytes:
        words = self._sequences[name].generate_state((size + 3) // 4, dtype=np.uint32)
        return words.astype(">u4").tobytes()[:size]

