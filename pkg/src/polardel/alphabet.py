"""Binary and ternary vectors.

Vectors are plain ``numpy.uint8`` arrays. Binary vectors hold 0/1; ternary
vectors additionally use :data:`ERASURE` (value 2) for the erasure symbol.
"""

import numpy as np

ERASURE = 2
_CHARS = {"0": 0, "1": 1, "e": ERASURE, "E": ERASURE}


def ternary(symbols) -> np.ndarray:
    """Build a ternary vector from a string such as ``"01e"`` or a sequence."""
    if isinstance(symbols, str):
        try:
            return np.array([_CHARS[c] for c in symbols], dtype=np.uint8)
        except KeyError as exc:
            raise ValueError(f"invalid ternary symbol {exc.args[0]!r}") from None
    arr = np.asarray(symbols, dtype=np.uint8)
    if arr.ndim != 1 or np.any(arr > ERASURE):
        raise ValueError("ternary vector must be 1-D over {0, 1, 2}")
    return arr


def bits(symbols) -> np.ndarray:
    """Build a binary vector from a string such as ``"1101"`` or a sequence."""
    arr = ternary(symbols)
    if np.any(arr == ERASURE):
        raise ValueError("binary vector may not contain erasures")
    return arr


def to_str(vec) -> str:
    return "".join("01e"[int(s)] for s in vec)


def erasure_count(vec) -> int:
    return int(np.count_nonzero(np.asarray(vec) == ERASURE))
