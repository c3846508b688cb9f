"""Successive-cancellation kernels over the erasure alphabet.

Messages are kept in sign form: +1 means "bit is 0" (LLR = +inf), -1 means
"bit is 1" (LLR = -inf) and 0 means erased (LLR = 0). With that encoding the
check-node update is a product and the variable-node update is the sign of a
sum, which is exactly saturating LLR arithmetic with +inf + -inf = 0.

Inputs are already permuted into natural (non-bit-reversed) order, so the
tree is the plain halving recursion of ``u G^{(x)n}``.
"""

import numpy as np

from ._accel import HAVE_NUMBA, njit

RESOLVED = 0
AMBIGUOUS = 1
FROZEN_CONFLICT = 2


@njit(cache=True)
def _sc_one(y, frozen, n, zero_fill, prune, L, B, u):
    N = 1 << n
    for j in range(N):
        L[n, j] = y[j]
    for i in range(N):
        if i == 0:
            start = n
        else:
            t = 0
            while ((i >> t) & 1) == 0:
                t += 1
            h = 1 << t
            off = i - h
            for j in range(h):
                a = L[t + 1, off + j]
                b = L[t + 1, off + h + j]
                if B[t, off + j]:
                    a = -a
                s = a + b
                if s > 0:
                    L[t, i + j] = 1
                elif s < 0:
                    L[t, i + j] = -1
                else:
                    L[t, i + j] = 0
            start = t
        for s in range(start, 0, -1):
            h = 1 << (s - 1)
            for j in range(h):
                L[s - 1, i + j] = L[s, i + j] * L[s, i + h + j]

        v = L[0, i]
        if frozen[i]:
            if prune and v < 0:
                return FROZEN_CONFLICT
            bit = 0
        elif v > 0:
            bit = 0
        elif v < 0:
            bit = 1
        else:
            if not zero_fill:
                return AMBIGUOUS
            bit = 0
        u[i] = bit
        B[0, i] = bit

        s = 1
        while s <= n and ((i >> (s - 1)) & 1) == 1:
            h = 1 << (s - 1)
            off = i + 1 - (1 << s)
            for j in range(h):
                B[s, off + j] = B[s - 1, off + j] ^ B[s - 1, off + h + j]
                B[s, off + h + j] = B[s - 1, off + h + j]
            s += 1
    return RESOLVED


@njit(cache=True)
def _sc_batch_numba(Y, frozen, n, zero_fill, prune):
    M, N = Y.shape
    status = np.empty(M, np.int8)
    U = np.zeros((M, N), np.uint8)
    L = np.empty((n + 1, N), np.int8)
    B = np.zeros((n + 1, N), np.uint8)
    for m in range(M):
        status[m] = _sc_one(Y[m], frozen, n, zero_fill, prune, L, B, U[m])
    return status, U


def _sc_batch_numpy(Y, frozen, n, zero_fill, prune):
    M, N = Y.shape
    status = np.zeros(M, np.int8)
    U = np.zeros((M, N), np.uint8)
    zeros = np.zeros(M, np.uint8)

    def descend(L, lo):
        size = L.shape[1]
        if size == 1:
            v = L[:, 0]
            if frozen[lo]:
                if prune:
                    status[(status == RESOLVED) & (v < 0)] = FROZEN_CONFLICT
                bit = zeros
            else:
                bit = (v < 0).astype(np.uint8)
                if not zero_fill:
                    status[(status == RESOLVED) & (v == 0)] = AMBIGUOUS
            U[:, lo] = bit
            return bit[:, None]
        h = size // 2
        a, b = L[:, :h], L[:, h:]
        left = descend(a * b, lo)
        right = descend(np.sign(b + np.where(left == 1, -a, a)).astype(np.int8), lo + h)
        return np.concatenate((left ^ right, right), axis=1)

    descend(np.ascontiguousarray(Y, dtype=np.int8), 0)
    return status, U


def sc_batch(Y, frozen, n, zero_fill, prune, backend=None):
    """Decode every row of ``Y`` (sign form, natural order).

    Returns ``(status, U)``. Rows of ``U`` are meaningful only where
    ``status == RESOLVED``.
    """
    if backend is None:
        backend = "numba" if HAVE_NUMBA else "numpy"
    Y = np.ascontiguousarray(Y, dtype=np.int8)
    frozen = np.ascontiguousarray(frozen, dtype=np.bool_)
    if backend == "numba":
        if not HAVE_NUMBA:
            raise RuntimeError("numba backend requested but numba is unavailable")
        return _sc_batch_numba(Y, frozen, n, bool(zero_fill), bool(prune))
    if backend == "numpy":
        return _sc_batch_numpy(Y, frozen, n, bool(zero_fill), bool(prune))
    raise ValueError(f"unknown backend {backend!r}")
