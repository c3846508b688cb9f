"""Candidate-set list decoding for the BEC / d-deletion cascade.

The received vector is padded back to length N by inserting erasures at
every possible place, each padded vector is SC-decoded, and the distinct
resolved outputs form the list. A redundancy check then filters the list
and a maximum-likelihood rule picks the output message.
"""

from dataclasses import dataclass, field
from itertools import combinations_with_replacement
from math import comb
from typing import List, Optional, Tuple

import numpy as np

from .alphabet import ERASURE
from .polar import PolarCode, Status, polar_transform, sc_decode_batch
from .precode import Precode, check_redundancy_batch, message_part


@dataclass(frozen=True, eq=False)
class CandidateSet:
    """Distinct length-N candidates, one row each.

    ``inserted[m]`` lists the positions (in candidate coordinates) of the
    erasures added to row ``m``.
    """

    candidates: np.ndarray
    inserted: np.ndarray

    def __len__(self) -> int:
        return self.candidates.shape[0]


def _gap_slots(received: np.ndarray) -> np.ndarray:
    # leftmost slot of every maximal erasure run, plus slots after non-erasures;
    # inserting anywhere else inside a run duplicates one of these
    keep = np.ones(received.size + 1, dtype=np.bool_)
    keep[1:] = received != ERASURE
    return np.nonzero(keep)[0]


def _insert(received: np.ndarray, slots: np.ndarray) -> CandidateSet:
    """Insert erasures at sorted slot multisets (one row of ``slots`` per candidate)."""
    M, d = slots.shape
    N = received.size + d
    inserted = slots + np.arange(d)
    mask = np.zeros((M, N), dtype=np.bool_)
    np.put_along_axis(mask, inserted, True, axis=1)
    cands = np.full((M, N), ERASURE, dtype=np.uint8)
    cands[~mask] = np.tile(received, M)
    return CandidateSet(cands, inserted)


def build_candidate_set_d(received, N: int, d: int) -> CandidateSet:
    """All distinct length-N vectors obtained by inserting ``d`` erasures.

    Extra erasures landing in the same erasure run give the same vector, so
    each distinct candidate is generated once, from its leftmost slots.
    There are ``comb(N - alpha, d)`` of them.
    """
    received = np.asarray(received, dtype=np.uint8)
    if d < 1:
        raise ValueError("d must be at least 1")
    if received.ndim != 1 or received.size != N - d:
        raise ValueError(f"received vector must have length N - d = {N - d}")
    gaps = _gap_slots(received)
    if d == 1:
        slots = gaps[:, None]
    else:
        slots = np.array(list(combinations_with_replacement(gaps, d)), dtype=np.int64)
    return _insert(received, slots.reshape(-1, d))


def build_candidate_set(received, N: int) -> CandidateSet:
    return build_candidate_set_d(received, N, 1)


def candidate_set_size(N: int, d: int, alpha: int) -> int:
    """Number of distinct candidates for a length N - d input with alpha erasures."""
    return comb(N - alpha, d)


@dataclass(eq=False)
class ListEntry:
    """One distinct (k + r)-bit SC output and the candidates supporting it."""

    vector: np.ndarray
    u_hat: np.ndarray
    support: int
    first_inserted: Tuple[int, ...]
    likelihood: Optional[int] = None


@dataclass(eq=False)
class DecodeOutcome:
    entries: List[ListEntry] = field(default_factory=list)
    survivors: List[ListEntry] = field(default_factory=list)
    selected: Optional[np.ndarray] = None
    selected_entry: Optional[ListEntry] = None
    candidates: int = 0
    ambiguous: int = 0
    conflicts: int = 0

    @property
    def list(self) -> np.ndarray:
        return _stack([e.vector for e in self.entries])

    @property
    def survivor_vectors(self) -> np.ndarray:
        return _stack([e.vector for e in self.survivors])

    def contains(self, vector) -> bool:
        v = np.asarray(vector, dtype=np.uint8)
        return any(np.array_equal(e.vector, v) for e in self.entries)


def _stack(rows) -> np.ndarray:
    if not rows:
        return np.zeros((0, 0), dtype=np.uint8)
    return np.stack(rows)


def list_decode(received, code: PolarCode, d: int = 1, policy: str = "drop",
                prune_frozen_conflicts: bool = False, backend: Optional[str] = None) -> DecodeOutcome:
    """SC-decode every candidate and merge the resolved outputs into a list."""
    received = np.asarray(received, dtype=np.uint8)
    if d == 0:
        if received.size != code.N:
            raise ValueError(f"received vector must have length {code.N}")
        cset = CandidateSet(received[None, :], np.zeros((1, 0), dtype=np.int64))
    else:
        cset = build_candidate_set_d(received, code.N, d)

    status, U = sc_decode_batch(cset.candidates, code, policy, prune_frozen_conflicts, backend)
    out = DecodeOutcome(candidates=len(cset),
                        ambiguous=int(np.count_nonzero(status == Status.AMBIGUOUS)),
                        conflicts=int(np.count_nonzero(status == Status.FROZEN_CONFLICT)))
    merged = {}
    for m in np.nonzero(status == Status.RESOLVED)[0]:
        vec = U[m, code.info_parity]
        key = vec.tobytes()
        entry = merged.get(key)
        if entry is None:
            merged[key] = ListEntry(vec, U[m].copy(), 1, tuple(int(i) for i in cset.inserted[m]))
        else:
            entry.support += 1
    # candidate order is already sorted by insertion slots
    out.entries = list(merged.values())
    return out


def filter_survivors(entries: List[ListEntry], precode: Precode) -> List[ListEntry]:
    """Keep the entries passing the redundancy check."""
    if not entries:
        return []
    ok = check_redundancy_batch(np.stack([e.vector for e in entries]), precode)
    return [e for e, keep in zip(entries, ok) if keep]


def embedding_count(codeword, received) -> int:
    """Number of deletion patterns turning ``codeword`` into something ``received`` can be.

    Counts index subsets ``K`` of size ``len(received)`` with
    ``codeword[K[j]] == received[j]`` wherever ``received[j]`` is not an
    erasure. Given the codeword, the likelihood of ``received`` under BEC(p)
    plus uniformly placed deletions is this count times a factor that does
    not depend on the codeword.
    """
    x = np.asarray(codeword, dtype=np.uint8)
    y = np.asarray(received, dtype=np.uint8)
    N, L = x.size, y.size
    if L > N:
        return 0
    # ways[j]: matchings of y[:j] into the prefix of x seen so far
    ways = np.zeros(L + 1, dtype=object if comb(N, N - L) > 2**62 else np.int64)
    ways[0] = 1
    free = y == ERASURE
    for i in range(N):
        compat = free | (y == x[i])
        ways[1:] = ways[1:] + ways[:-1] * compat
    return int(ways[L])


def select_message(survivors: List[ListEntry], received, precode: Precode) -> Optional[ListEntry]:
    """Maximum-likelihood choice among the survivors.

    Ranking: larger :func:`embedding_count` of the re-encoded codeword, then
    the smaller first insertion position, then lexicographically smaller
    message.
    """
    if not survivors:
        return None
    if len(survivors) == 1:
        return survivors[0]
    for e in survivors:
        if e.likelihood is None:
            e.likelihood = embedding_count(polar_transform(e.u_hat), received)
    return min(survivors, key=lambda e: (-e.likelihood, e.first_inserted,
                                         tuple(message_part(e.vector, precode))))


def decode_received(received, code: PolarCode, precode: Precode, d: int = 1,
                    policy: str = "drop", prune_frozen_conflicts: bool = False,
                    backend: Optional[str] = None) -> DecodeOutcome:
    """Candidate set, SC list, redundancy filter and ML selection in one call."""
    r = 0 if precode is None else precode.r
    if r != code.r:
        raise ValueError(f"precode adds {r} bits but the code reserves r={code.r}")
    out = list_decode(received, code, d, policy, prune_frozen_conflicts, backend)
    out.survivors = filter_survivors(out.entries, precode)
    best = select_message(out.survivors, received, precode)
    if best is not None:
        out.selected_entry = best
        out.selected = message_part(best.vector, precode)
    return out
