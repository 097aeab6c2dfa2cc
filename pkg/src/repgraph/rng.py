"""Reproducible random streams built on numpy's counter-based Philox generator.

Every draw is addressed by ``(seed, stream, trial, object index)``: the
Philox key is ``(seed, stream id)`` and the counter starts at
``[0, trial, 0, 0]``, so trial ``k`` of a stream yields the same numbers no
matter how many trials ran before it or in which order workers process them.
Within a trial, object ``i`` (edge, vertex, ...) receives the ``i``-th
variate of the trial's block.
"""

from __future__ import annotations

import numpy as np

from .errors import ArgumentError

STREAMS = {"bond": 1, "site": 2, "weights": 3, "misc": 4}
_MASK64 = (1 << 64) - 1


def _stream_id(stream: str | int) -> int:
    if isinstance(stream, str):
        try:
            return STREAMS[stream]
        except KeyError:
            raise ArgumentError(f"unknown random stream {stream!r}") from None
    return int(stream)


def substream(seed: int, stream: str | int, trial: int) -> np.random.Generator:
    """Generator for one trial of a named stream."""
    if trial < 0:
        raise ArgumentError("trial index must be non-negative")
    key = np.array([int(seed) & _MASK64, _stream_id(stream)], dtype=np.uint64)
    counter = np.array([0, trial, 0, 0], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key, counter=counter))


def uniforms(seed: int, stream: str | int, trial: int, n: int) -> np.ndarray:
    """``n`` uniforms on [0, 1) for objects ``0..n-1`` of one trial."""
    return substream(seed, stream, trial).random(n)


def uniform_block(seed: int, stream: str | int, trials: range | int, n: int) -> np.ndarray:
    """Array of shape ``(len(trials), n)``; row ``k`` equals ``uniforms(.., trials[k], n)``."""
    if isinstance(trials, int):
        trials = range(trials)
    out = np.empty((len(trials), n))
    for row, t in enumerate(trials):
        out[row] = uniforms(seed, stream, t, n)
    return out
