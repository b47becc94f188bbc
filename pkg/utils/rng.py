"""
Seeded, splittable random streams for reproducible simulations
"""

import zlib

import numpy as np


def purpose_code(purpose):
    """Stable integer for a stream purpose (the builtin hash is salted per process)"""
    if isinstance(purpose, (int, np.integer)):
        return int(purpose)
    return zlib.crc32(str(purpose).encode('utf-8'))


def derive_rng(seed, replication=0, purpose='default'):
    """Generator for one (seed, replication, purpose) triple.

    Uses the counter-based Philox bit generator keyed by a SeedSequence built from
    the triple, so every stream can be replayed on its own in any process.
    """
    entropy = [int(seed) & 0xFFFFFFFFFFFFFFFF, int(replication), purpose_code(purpose)]
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(entropy)))


class SeededStreams:
    """Factory of independent streams under one master seed"""

    def __init__(self, seed):
        self._seed = int(seed)

    @property
    def seed(self):
        return self._seed

    def stream(self, replication, purpose):
        return derive_rng(self._seed, replication, purpose)

    def child_seed(self, replication, purpose='child'):
        """Integer seed for a sub-task, derived from the same triple"""
        return int(self.stream(replication, purpose).integers(0, 2**31 - 1))

    def __repr__(self):
        return f'<SeededStreams seed={self._seed}>'
