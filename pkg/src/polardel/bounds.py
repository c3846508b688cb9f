"""Error-probability estimates and redundancy sizing.

All scaling-law evaluations drop the o(sqrt(n)) correction, so they are
leading-order estimates only.
"""

import math
from dataclasses import dataclass
from typing import NamedTuple, Optional

MODES = ("closed", "balance")


def q_function(x: float) -> float:
    """Complementary Gaussian CDF."""
    return 0.5 * math.erfc(x / math.sqrt(2.0))


def q_inverse(y: float, tol: float = 1e-12) -> float:
    """Inverse of :func:`q_function`.

    Newton iteration on ``ln Q(x) - ln y`` (nearly linear in the tail),
    falling back to bisection whenever a step leaves the bracket.
    """
    if not 0.0 < y < 1.0:
        raise ValueError(f"Q^-1 argument must lie in (0, 1), got {y}")
    if y > 0.5:
        return -q_inverse(1.0 - y, tol)
    if y == 0.5:
        return 0.0
    lo, hi = 0.0, 38.5  # Q(lo) > y > Q(hi) for every positive double y
    target = math.log(y)
    x = 1.0
    for _ in range(200):
        q = q_function(x)
        if q <= 0.0:
            hi = x
            nxt = 0.5 * (lo + hi)
            x = nxt
            continue
        gx = math.log(q) - target
        if gx > 0:
            lo = x
        else:
            hi = x
        dens = math.exp(-0.5 * x * x) / math.sqrt(2.0 * math.pi)
        nxt = x + gx * q / dens
        if not lo < nxt < hi:
            nxt = 0.5 * (lo + hi)
        if abs(nxt - x) < tol:
            return nxt
        x = nxt
    return x


def _log2_int(N: int) -> int:
    if N < 1 or N & (N - 1):
        raise ValueError(f"N must be a power of two, got {N}")
    return N.bit_length() - 1


def scaling_error_exponent(N: int, k_plus_r: int, capacity: float) -> float:
    """``E`` such that the SC block error estimate is ``2**-E``."""
    n = _log2_int(N)
    ratio = (k_plus_r / N) / capacity
    if not 0.0 < ratio < 1.0:
        raise ValueError(f"R_polar / C must lie in (0, 1), got {ratio}")
    return 2.0 ** (n / 2 + math.sqrt(n) / 2 * q_inverse(ratio))


def scaling_error_estimate(N: int, k_plus_r: int, capacity: float) -> float:
    """Rate-dependent SC block error estimate for the BEC (may underflow to 0)."""
    return 2.0 ** -scaling_error_exponent(N, k_plus_r, capacity)


class Bound(NamedTuple):
    value: float
    clamped: bool


def total_error_bound(list_size: float, r: int, candidate_size: float, pe: float) -> Bound:
    """Union bound ``list_size / 2**r + candidate_size * pe``, clamped to [0, 1]."""
    if list_size < 0 or candidate_size < 0 or r < 0:
        raise ValueError("sizes and r must be non-negative")
    if list_size > candidate_size:
        raise ValueError("list cannot be larger than the candidate set")
    if not 0.0 <= pe <= 1.0:
        raise ValueError("pe must be a probability")
    raw = list_size * 2.0 ** -r + candidate_size * pe
    return Bound(min(raw, 1.0), raw > 1.0)


def simulation_r(N: int) -> int:
    """``ceil(0.7 * sqrt(N))`` in exact integer arithmetic."""
    if N < 1:
        raise ValueError("N must be positive")
    r = math.isqrt(49 * N) // 10
    while 100 * r * r < 49 * N:
        r += 1
    return r


@dataclass(frozen=True)
class OptimalR:
    r: int
    r_continuous: float
    sqrt_n_factor: float
    mode: str


def _closed_form(N: int, delta: float) -> float:
    n = _log2_int(N)
    return math.sqrt(N) * 2.0 ** -math.sqrt(n * math.log(2.0 / delta) / 2.0)


def optimal_r_detail(N: int, delta: float, mode: str = "closed",
                     p: Optional[float] = None, k: Optional[int] = None) -> OptimalR:
    """Redundancy balancing the two terms of the total-error bound.

    ``closed`` evaluates the asymptotic closed form. ``balance`` solves
    ``r = 2**(n/2 + sqrt(n)/2 * Q^-1((k + r) / (N C)))`` by bisection, with
    ``C = 1 - p`` and ``k = ceil((1 - delta) C N)`` unless given, and keeps
    whichever neighbouring integer gives the smaller bound.
    """
    if not 0.0 < delta < 1.0:
        raise ValueError(f"delta must lie in (0, 1), got {delta}")
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}")
    n = _log2_int(N)
    if mode == "closed":
        rc = _closed_form(N, delta)
        return OptimalR(max(1, int(math.floor(rc + 0.5))), rc, rc / math.sqrt(N), mode)

    if p is None or not 0.0 < p < 1.0:
        raise ValueError("balance mode needs an erasure probability p in (0, 1)")
    C = 1.0 - p
    if k is None:
        k = math.ceil((1.0 - delta) * C * N - 1e-9)
    hi = min(float(N - k), N * C - k - 1e-9)
    if hi <= 1.0:
        raise ValueError("no room for redundancy below capacity")

    def gap(r):
        return math.log2(r) - (n / 2 + math.sqrt(n) / 2 * q_inverse((k + r) / (N * C)))

    lo = 1.0
    if gap(lo) > 0 or gap(hi) < 0:
        raise ValueError("exponent balance has no sign change on the bracket")
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if gap(mid) < 0:
            lo = mid
        else:
            hi = mid
        if hi - lo < 1e-10:
            break
    rc = 0.5 * (lo + hi)
    cap = math.floor(min(N - k, N * C - k - 1e-9))
    options = sorted({min(max(1, math.floor(rc)), cap), min(max(1, math.ceil(rc)), cap)})
    size = N * C

    def bound(r):
        return size * (2.0 ** -r + scaling_error_estimate(N, k + r, C))

    best = min(options, key=lambda r: (bound(r), r))
    return OptimalR(best, rc, rc / math.sqrt(N), mode)


def optimal_r(N: int, delta: float, mode: str = "closed",
              p: Optional[float] = None, k: Optional[int] = None) -> int:
    return optimal_r_detail(N, delta, mode, p, k).r
