"""Seeded, splittable random-number streams.

Built on numpy's Philox counter-based generator keyed by a SeedSequence
spawn key, so that a stream is fully determined by (master_seed, stream
path) and distinct paths give statistically independent streams.  That is
what makes parallel simulation order-independent: replication l always
consumes stream (seed, cell, l) no matter which worker runs it.
"""

from __future__ import annotations

import numpy as np


class RngStream:
    """A single-owner random stream identified by (master_seed, stream_index).

    Two streams constructed with the same master seed and index produce
    bitwise-identical draw sequences.  ``substream(i)`` derives an
    independent child stream; children are themselves splittable, which is
    how the simulation harness hands one stream to every replication.

    The underlying generator is created lazily and advances as it is
    consumed; do not share one instance across threads.
    """

    __slots__ = ("master_seed", "_key", "_gen")

    def __init__(self, master_seed: int, stream_index: int = 0, _key: tuple[int, ...] | None = None):
        if master_seed < 0:
            raise ValueError("master_seed must be a nonnegative integer")
        self.master_seed = int(master_seed)
        self._key = _key if _key is not None else (int(stream_index),)
        self._gen: np.random.Generator | None = None

    @property
    def stream_index(self) -> int:
        return self._key[-1]

    def substream(self, *indices: int) -> "RngStream":
        """Derive an independent child stream keyed by the given indices."""
        if not indices:
            raise ValueError("substream needs at least one index")
        return RngStream(self.master_seed, _key=self._key + tuple(int(i) for i in indices))

    @property
    def generator(self) -> np.random.Generator:
        if self._gen is None:
            seq = np.random.SeedSequence(self.master_seed, spawn_key=self._key)
            self._gen = np.random.Generator(np.random.Philox(seq))
        return self._gen

    def __repr__(self) -> str:  # pragma: no cover
        return f"RngStream(master_seed={self.master_seed}, key={self._key})"


def as_stream(rng: "RngStream | int") -> RngStream:
    """Accept either a stream or a bare integer seed."""
    if isinstance(rng, RngStream):
        return rng
    return RngStream(int(rng))
