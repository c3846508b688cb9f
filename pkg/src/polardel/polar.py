"""Polar code construction, encoding and erasure-domain SC decoding.

Index sets are 0-based throughout: bit ``u[i]`` is decoded at step ``i``.
"""

from dataclasses import dataclass
from enum import IntEnum
from typing import Optional

import numpy as np

from . import _kernels
from .alphabet import ERASURE

# ternary symbol -> sign-form message (0 -> +1, 1 -> -1, e -> 0)
_TO_SIGN = np.array([1, -1, 0], dtype=np.int8)

POLICIES = ("drop", "zero")


class Status(IntEnum):
    RESOLVED = _kernels.RESOLVED
    AMBIGUOUS = _kernels.AMBIGUOUS
    FROZEN_CONFLICT = _kernels.FROZEN_CONFLICT


def _log2_exact(N: int) -> int:
    if N < 1 or N & (N - 1):
        raise ValueError(f"block length must be a power of two, got {N}")
    return N.bit_length() - 1


def bit_reversal_permutation(n: int) -> np.ndarray:
    """Permutation ``perm`` with ``perm[i]`` = ``i`` with its n-bit expansion reversed."""
    if n < 0:
        raise ValueError("n must be non-negative")
    perm = np.zeros(1, dtype=np.int64)
    for _ in range(n):
        perm = np.concatenate((2 * perm, 2 * perm + 1))
    return perm


def bhattacharyya(N: int, p: float) -> np.ndarray:
    """Exact Bhattacharyya parameters of the N synthesized BEC(p) bit-channels.

    Index ``i`` follows SC decoding order; a parent value ``z`` at index ``i``
    spawns ``2z - z**2`` at ``2i`` and ``z**2`` at ``2i + 1``.
    """
    n = _log2_exact(N)
    z = np.array([p], dtype=np.float64)
    for _ in range(n):
        nxt = np.empty(2 * z.size)
        nxt[0::2] = 2 * z - z * z
        nxt[1::2] = z * z
        z = nxt
    return z


@dataclass(frozen=True, eq=False)
class PolarCode:
    """One polar code instance: block length, index sets and reliabilities.

    ``info_parity`` holds the k + r unfrozen positions in increasing order;
    the precoded (message + redundancy) vector is written there in order.
    """

    N: int
    n: int
    k: int
    r: int
    info_parity: np.ndarray
    frozen: np.ndarray
    reliabilities: Optional[np.ndarray] = None
    design_p: Optional[float] = None

    def __post_init__(self):
        for arr in (self.info_parity, self.frozen, self.reliabilities):
            if arr is not None:
                arr.setflags(write=False)
        mask = np.ones(self.N, dtype=np.bool_)
        mask[self.info_parity] = False
        mask.setflags(write=False)
        object.__setattr__(self, "frozen_mask", mask)

    @property
    def k_plus_r(self) -> int:
        return self.k + self.r

    @property
    def rate(self) -> float:
        return self.k / self.N

    @property
    def polar_rate(self) -> float:
        return (self.k + self.r) / self.N

    @classmethod
    def from_frozen(cls, N: int, frozen, r: int = 0) -> "PolarCode":
        """Build a code from an explicit frozen set (0-based)."""
        n = _log2_exact(N)
        frozen = np.unique(np.asarray(frozen, dtype=np.int64))
        if frozen.size and (frozen[0] < 0 or frozen[-1] >= N):
            raise ValueError("frozen index out of range")
        info = np.setdiff1d(np.arange(N), frozen)
        if r < 0 or r > info.size:
            raise ValueError("redundancy exceeds the number of unfrozen positions")
        return cls(N=N, n=n, k=info.size - r, r=r, info_parity=info, frozen=frozen)


def select_reliable(z: np.ndarray, count: int) -> np.ndarray:
    """Indices of the ``count`` smallest values, ties toward the larger index, sorted."""
    idx = np.arange(z.size)
    return np.sort(np.lexsort((-idx, z))[:count])


def construct_code(N: int, p: float, k_plus_r: int, r: int = 0) -> PolarCode:
    """Select the ``k_plus_r`` most reliable positions for BEC(p).

    Smallest Bhattacharyya values win; equal values prefer the larger index.
    """
    n = _log2_exact(N)
    if not 0.0 < p < 1.0:
        raise ValueError(f"erasure probability must lie in (0, 1), got {p}")
    if not 1 <= k_plus_r <= N:
        raise ValueError(f"k + r must lie in 1..{N}, got {k_plus_r}")
    if not 0 <= r <= k_plus_r:
        raise ValueError("r must lie in 0..k+r")
    z = bhattacharyya(N, p)
    info = select_reliable(z, k_plus_r)
    frozen = np.setdiff1d(np.arange(N), info)
    return PolarCode(N=N, n=n, k=k_plus_r - r, r=r, info_parity=info,
                     frozen=frozen, reliabilities=z, design_p=float(p))


def polar_transform(u: np.ndarray) -> np.ndarray:
    """``u B_N G^{(x)n}`` over F2 along the last axis (batched)."""
    u = np.asarray(u, dtype=np.uint8)
    N = u.shape[-1]
    n = _log2_exact(N)
    x = u.copy()
    flat = x.reshape(-1, N)
    h = 1
    while h < N:
        view = flat.reshape(flat.shape[0], -1, 2, h)
        view[:, :, 0, :] ^= view[:, :, 1, :]
        h *= 2
    return x[..., bit_reversal_permutation(n)]


def place_bits(message_plus_parity, code: PolarCode) -> np.ndarray:
    """Scatter k+r bits into a length-N input vector with frozen zeros."""
    v = np.asarray(message_plus_parity, dtype=np.uint8)
    if v.shape[-1] != code.k_plus_r:
        raise ValueError(f"expected {code.k_plus_r} bits, got {v.shape[-1]}")
    u = np.zeros(v.shape[:-1] + (code.N,), dtype=np.uint8)
    u[..., code.info_parity] = v
    return u


def polar_encode(message_plus_parity, code: PolarCode) -> np.ndarray:
    return polar_transform(place_bits(message_plus_parity, code))


@dataclass(frozen=True, eq=False)
class SCDecodeResult:
    status: Status
    full_estimate: Optional[np.ndarray] = None
    message_plus_parity: Optional[np.ndarray] = None


def _check_policy(policy: str) -> None:
    if policy not in POLICIES:
        raise ValueError(f"ambiguity policy must be one of {POLICIES}, got {policy!r}")


def sc_decode_batch(received, code: PolarCode, policy: str = "drop",
                    prune_frozen_conflicts: bool = False, backend: Optional[str] = None):
    """SC-decode each row of a 2-D ternary array.

    Returns ``(status, u_hat)`` where ``u_hat`` rows are valid only for
    resolved rows.
    """
    _check_policy(policy)
    Y = np.asarray(received, dtype=np.uint8)
    if Y.ndim != 2 or Y.shape[1] != code.N:
        raise ValueError(f"received rows must have length {code.N}")
    if Y.size and Y.max() > ERASURE:
        raise ValueError("received symbols must be 0, 1 or erasure")
    # x = (u G) B with B an involution, so z = u G is x read through B
    signs = _TO_SIGN[Y][:, bit_reversal_permutation(code.n)]
    return _kernels.sc_batch(signs, code.frozen_mask, code.n, policy == "zero",
                             prune_frozen_conflicts, backend=backend)


def sc_decode(received, code: PolarCode, policy: str = "drop",
              prune_frozen_conflicts: bool = False, backend: Optional[str] = None) -> SCDecodeResult:
    received = np.asarray(received, dtype=np.uint8)
    if received.ndim != 1 or received.size != code.N:
        raise ValueError(f"received vector must have length {code.N}")
    status, U = sc_decode_batch(received[None, :], code, policy, prune_frozen_conflicts, backend)
    st = Status(int(status[0]))
    if st is not Status.RESOLVED:
        return SCDecodeResult(st)
    u = U[0]
    return SCDecodeResult(st, u, u[code.info_parity].copy())
