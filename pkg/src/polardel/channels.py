"""BEC, adversarial d-deletion channel and their cascade."""

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterator, Tuple, Union

import numpy as np

from .alphabet import ERASURE

DELETION_MODES = ("uniform", "fixed", "sweep")


@dataclass(frozen=True)
class TrialRng:
    """Per-trial random stream derived from ``(master_seed, trial_index)``.

    The stream is numpy's PCG64 seeded through ``SeedSequence`` with the
    trial index as spawn key, so every trial owns an independent stream that
    does not depend on which other trials ran or in what order.
    """

    master_seed: int
    trial_index: int = 0

    def __post_init__(self):
        if self.trial_index < 0:
            raise ValueError("trial index must be non-negative")

    def generator(self) -> np.random.Generator:
        seq = np.random.SeedSequence(self.master_seed & (2**64 - 1), spawn_key=(self.trial_index,))
        return np.random.Generator(np.random.PCG64(seq))


RngLike = Union[TrialRng, np.random.Generator]


def _gen(rng: RngLike) -> np.random.Generator:
    return rng.generator() if isinstance(rng, TrialRng) else rng


@dataclass(frozen=True)
class DeletionParams:
    d: int = 1
    mode: str = "uniform"
    positions: Tuple[int, ...] = field(default=())

    def __post_init__(self):
        if self.d < 0:
            raise ValueError("number of deletions must be non-negative")
        if self.mode not in DELETION_MODES:
            raise ValueError(f"deletion mode must be one of {DELETION_MODES}")
        if self.mode == "fixed":
            if len(self.positions) != self.d or len(set(self.positions)) != self.d:
                raise ValueError("fixed mode needs exactly d distinct positions")


def bec_transmit(x, p: float, rng: RngLike) -> np.ndarray:
    """Erase each symbol independently with probability ``p``."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"erasure probability must lie in [0, 1], got {p}")
    y = np.array(x, dtype=np.uint8, copy=True)
    mask = _gen(rng).random(y.size) < p
    y[mask] = ERASURE
    return y


def delete_symbols(y, positions) -> np.ndarray:
    """Remove the symbols at ``positions`` (0-based, distinct)."""
    y = np.asarray(y, dtype=np.uint8)
    pos = np.asarray(list(positions), dtype=np.int64)
    if pos.size:
        if np.unique(pos).size != pos.size:
            raise ValueError("deletion positions must be distinct")
        if pos.min() < 0 or pos.max() >= y.size:
            raise ValueError("deletion position out of range")
    return np.delete(y, pos)


def deletion_sets(N: int, d: int) -> Iterator[Tuple[int, ...]]:
    """Every d-subset of positions, in lexicographic order."""
    return combinations(range(N), d)


def cascade_transmit(x, p: float, deletion: DeletionParams, rng: RngLike):
    """BEC(p) followed by exactly ``deletion.d`` deletions.

    Returns the shortened vector and the sorted deleted positions. The
    positions are ground truth for instrumentation; decoders never see them.
    ``sweep`` mode is driven by the caller through ``fixed`` positions.
    """
    x = np.asarray(x, dtype=np.uint8)
    N = x.size
    if deletion.d > N:
        raise ValueError(f"cannot delete {deletion.d} symbols from length {N}")
    gen = _gen(rng)
    y = bec_transmit(x, p, gen)
    if deletion.mode == "uniform":
        positions = tuple(sorted(int(i) for i in gen.choice(N, size=deletion.d, replace=False)))
    elif deletion.mode == "fixed":
        positions = tuple(sorted(deletion.positions))
    else:
        raise ValueError("sweep mode must be expanded into fixed positions by the caller")
    return delete_symbols(y, positions), positions
