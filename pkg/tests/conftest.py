import itertools

import numpy as np
import pytest

from polardel._accel import HAVE_NUMBA

BACKENDS = ["numpy"] + (["numba"] if HAVE_NUMBA else [])


def kron_generator(n):
    """Explicit B_N G_2^{(x)n} as an integer matrix (independent of the library)."""
    G = np.array([[1]], dtype=np.int64)
    for _ in range(n):
        G = np.kron(G, np.array([[1, 0], [1, 1]]))
    N = 1 << n
    B = np.zeros((N, N), dtype=np.int64)
    for i in range(N):
        rev = int(format(i, f"0{n}b")[::-1], 2) if n else 0
        B[i, rev] = 1
    return (B @ G) % 2


def all_vectors(length):
    return np.array(list(itertools.product([0, 1], repeat=length)), dtype=np.uint8).reshape(2**length, length)


@pytest.fixture(params=BACKENDS)
def backend(request):
    return request.param


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


ACCEPTANCE = []


def report(number, passed, detail):
    """Record and print one acceptance verdict."""
    line = f"criterion {number:>2}: {'PASS' if passed else 'FAIL'}  {detail}"
    ACCEPTANCE.append(line)
    print(line)
    return passed


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
