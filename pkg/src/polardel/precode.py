"""CRC and random-parity redundancy on the k-bit message.

CRC convention: non-reflected, zero initial register, no final XOR. The
first bit of a vector is the highest-degree coefficient.
"""

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional, Sequence, Union

import numpy as np

CRC_TABLE_VERSION = "1"

# r -> (generator with leading 1, source). Standardized CRCs where one is in
# common use; otherwise (x + 1) * p(x) with p primitive of degree r - 1,
# which detects all odd-weight errors (primitivity checked in the tests).
CRC_TABLE = {
    1: (0x3, "parity x+1"),
    2: (0x7, "x^2+x+1"),
    3: (0xB, "CRC-3-GSM"),
    4: (0x13, "CRC-4-ITU"),
    5: (0x25, "CRC-5-USB"),
    6: (0x43, "CRC-6-ITU"),
    7: (0x89, "CRC-7-MMC"),
    8: (0x107, "CRC-8-CCITT"),
    9: (0x327, "(x+1)(x^8+x^4+x^3+x^2+1)"),
    10: (0x633, "CRC-10-ATM"),
    11: (0xB85, "CRC-11-FlexRay"),
    12: (0x180F, "CRC-12"),
    13: (0x3CF5, "CRC-13-BBC"),
    14: (0x4805, "CRC-14-DARC"),
    15: (0xC599, "CRC-15-CAN"),
    16: (0x11021, "CRC-16-CCITT"),
    17: (0x3685B, "CRC-17-CAN"),
    18: (0x6001B, "(x+1)(x^17+x^3+1)"),
    19: (0xC0183, "(x+1)(x^18+x^7+1)"),
    20: (0x180069, "(x+1)(x^19+x^5+x^2+x+1)"),
    21: (0x302899, "CRC-21-CAN"),
    22: (0x60000F, "(x+1)(x^21+x^2+1)"),
    23: (0xC00005, "(x+1)(x^22+x+1)"),
    24: (0x1864CFB, "CRC-24-OpenPGP"),
    25: (0x3000189, "(x+1)(x^24+x^7+x^2+x+1)"),
    26: (0x600001B, "(x+1)(x^25+x^3+1)"),
    27: (0xC0000C9, "(x+1)(x^26+x^6+x^2+x+1)"),
    28: (0x18000069, "(x+1)(x^27+x^5+x^2+x+1)"),
    29: (0x3000001B, "(x+1)(x^28+x^3+1)"),
    30: (0x6030B9C7, "CRC-30-CDMA"),
    31: (0xC00000F5, "(x+1)(x^30+x^6+x^4+x+1)"),
    32: (0x104C11DB7, "CRC-32"),
}


@dataclass(frozen=True)
class CrcSpec:
    """Generator polynomial as an integer including the leading 1."""

    generator: int

    def __post_init__(self):
        if self.generator < 2:
            raise ValueError("CRC generator must have degree >= 1")

    @property
    def r(self) -> int:
        return self.generator.bit_length() - 1

    @property
    def hex(self) -> str:
        return f"0x{self.generator:X}"

    @classmethod
    def from_hex(cls, text: str) -> "CrcSpec":
        return cls(int(text, 16))

    @classmethod
    def default(cls, r: int) -> "CrcSpec":
        try:
            return cls(CRC_TABLE[r][0])
        except KeyError:
            raise ValueError(f"no tabulated CRC generator of degree {r}") from None


def _poly_bits(value: int, width: int) -> np.ndarray:
    return np.array([(value >> (width - 1 - i)) & 1 for i in range(width)], dtype=np.uint8)


def crc_remainder(v, spec: CrcSpec) -> np.ndarray:
    """Remainder of ``v(x) * x^r`` modulo the generator, as r bits."""
    r = spec.r
    top = 1 << (r - 1)
    low = spec.generator ^ (1 << r)
    mask = (1 << r) - 1
    reg = 0
    for b in np.asarray(v, dtype=np.uint8):
        feedback = int(b) ^ (1 if reg & top else 0)
        reg = (reg << 1) & mask
        if feedback:
            reg ^= low
    return _poly_bits(reg, r)


@lru_cache(maxsize=256)
def _crc_matrix(generator: int, length: int) -> np.ndarray:
    # row i = remainder contributed by a 1 at position i (degree length-1-i)
    spec = CrcSpec(generator)
    r = spec.r
    low = generator ^ (1 << r)
    rows = np.empty((length, r), dtype=np.uint8)
    unit = low  # x^r mod g
    for i in range(length - 1, -1, -1):
        rows[i] = _poly_bits(unit, r)
        unit <<= 1
        if unit >> r:
            unit = (unit ^ (1 << r)) ^ low
    rows.setflags(write=False)
    return rows


def crc_remainder_batch(V, spec: CrcSpec) -> np.ndarray:
    """Row-wise :func:`crc_remainder` through the linear map of the CRC."""
    V = np.atleast_2d(np.asarray(V, dtype=np.uint8))
    M = _crc_matrix(spec.generator, V.shape[1])
    return ((V.astype(np.int64) @ M) & 1).astype(np.uint8)


def _gf2_inverse(A: np.ndarray) -> Optional[np.ndarray]:
    """Inverse over F2, or None if singular."""
    n = A.shape[0]
    aug = np.concatenate((A.astype(np.uint8) & 1, np.eye(n, dtype=np.uint8)), axis=1)
    for col in range(n):
        pivots = np.nonzero(aug[col:, col])[0]
        if pivots.size == 0:
            return None
        piv = col + pivots[0]
        if piv != col:
            aug[[col, piv]] = aug[[piv, col]]
        hits = np.nonzero(aug[:, col])[0]
        hits = hits[hits != col]
        aug[hits] ^= aug[col]
    return aug[:, n:]


@dataclass(frozen=True, eq=False)
class RandomParitySpec:
    """Parity-check matrix ``H`` (r x (k+r)) with designated parity columns."""

    H: np.ndarray
    parity_columns: np.ndarray
    seed: Optional[int] = None
    _solve: np.ndarray = field(init=False, repr=False)
    _message_columns: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        H = np.asarray(self.H, dtype=np.uint8) & 1
        r, width = H.shape
        cols = np.asarray(self.parity_columns, dtype=np.int64)
        if cols.size != r or np.unique(cols).size != r or cols.min() < 0 or cols.max() >= width:
            raise ValueError("parity columns must be r distinct column indices")
        inv = _gf2_inverse(H[:, cols])
        if inv is None:
            raise ValueError("parity submatrix of H is singular over F2")
        msg_cols = np.setdiff1d(np.arange(width), cols)
        solve = (inv.astype(np.int64) @ H[:, msg_cols]) & 1
        for name, value in (("H", H), ("parity_columns", cols),
                            ("_solve", solve.astype(np.uint8)), ("_message_columns", msg_cols)):
            value.setflags(write=False)
            object.__setattr__(self, name, value)

    @property
    def r(self) -> int:
        return self.H.shape[0]

    @property
    def k(self) -> int:
        return self.H.shape[1] - self.H.shape[0]

    @classmethod
    def draw(cls, k: int, r: int, seed: int, parity_columns: Optional[Sequence[int]] = None):
        """Draw H uniformly from ``seed``, redrawing until the parity block is invertible."""
        if r < 1 or k < 0:
            raise ValueError("need r >= 1 and k >= 0")
        cols = np.arange(k, k + r) if parity_columns is None else np.asarray(parity_columns)
        rng = np.random.default_rng(seed)
        while True:
            H = rng.integers(0, 2, size=(r, k + r), dtype=np.uint8)
            if _gf2_inverse(H[:, cols]) is not None:
                return cls(H, cols, seed)


Precode = Union[CrcSpec, RandomParitySpec, None]


def redundancy(precode: Precode) -> int:
    return 0 if precode is None else precode.r


def attach_redundancy(message, precode: Precode) -> np.ndarray:
    """Return the (k + r)-bit precoded vector for a k-bit message."""
    m = np.asarray(message, dtype=np.uint8)
    if precode is None:
        return m.copy()
    if isinstance(precode, CrcSpec):
        return np.concatenate((m, crc_remainder_batch(m[None, :], precode)[0]))
    if m.size != precode.k:
        raise ValueError(f"message length {m.size} does not match parity spec k={precode.k}")
    out = np.zeros(precode.H.shape[1], dtype=np.uint8)
    out[precode._message_columns] = m
    out[precode.parity_columns] = (precode._solve.astype(np.int64) @ m) & 1
    return out


def message_part(v, precode: Precode) -> np.ndarray:
    """Strip redundancy from a precoded vector (works row-wise)."""
    v = np.asarray(v, dtype=np.uint8)
    if precode is None:
        return v.copy()
    if isinstance(precode, CrcSpec):
        return v[..., : v.shape[-1] - precode.r].copy()
    return v[..., precode._message_columns].copy()


def check_redundancy_batch(V, precode: Precode) -> np.ndarray:
    V = np.atleast_2d(np.asarray(V, dtype=np.uint8))
    if precode is None:
        return np.ones(V.shape[0], dtype=np.bool_)
    if isinstance(precode, CrcSpec):
        if V.shape[1] < precode.r:
            raise ValueError("vector shorter than the CRC")
        return ~crc_remainder_batch(V, precode).any(axis=1)
    if V.shape[1] != precode.H.shape[1]:
        raise ValueError(f"expected length {precode.H.shape[1]}, got {V.shape[1]}")
    return ~((V.astype(np.int64) @ precode.H.T.astype(np.int64)) & 1).any(axis=1)


def check_redundancy(v, precode: Precode) -> bool:
    v = np.asarray(v, dtype=np.uint8)
    if v.ndim != 1:
        raise ValueError("expected a single vector")
    return bool(check_redundancy_batch(v[None, :], precode)[0])
