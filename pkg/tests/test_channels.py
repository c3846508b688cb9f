import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from polardel.alphabet import ERASURE, bits, erasure_count, ternary, to_str
from polardel.channels import (DeletionParams, TrialRng, bec_transmit, cascade_transmit,
                               delete_symbols, deletion_sets)


def test_bec_degenerate():
    x = np.random.default_rng(0).integers(0, 2, 500, dtype=np.uint8)
    assert np.array_equal(bec_transmit(x, 0.0, TrialRng(1)), x)
    assert np.all(bec_transmit(x, 1.0, TrialRng(1)) == ERASURE)


def test_bec_erasure_fraction():
    n, p = 100_000, 0.3
    y = bec_transmit(np.zeros(n, dtype=np.uint8), p, TrialRng(7))
    sigma = np.sqrt(n * p * (1 - p))
    assert abs(erasure_count(y) - n * p) < 3 * sigma
    assert set(np.unique(y).tolist()) <= {0, ERASURE}


def test_bec_rejects_bad_p():
    with pytest.raises(ValueError):
        bec_transmit(np.zeros(4, np.uint8), 1.5, TrialRng(0))


@pytest.mark.parametrize("y, positions, expected", [
    ("01e1", [1], "0e1"),
    ("1111", [2], "111"),
    ("01e1", [], "01e1"),
    ("01e1", [0, 3], "1e"),
])
def test_delete_symbols(y, positions, expected):
    assert to_str(delete_symbols(ternary(y), positions)) == expected


@pytest.mark.parametrize("positions", [[1, 1], [4], [-1]])
def test_delete_symbols_rejects(positions):
    with pytest.raises(ValueError):
        delete_symbols(ternary("01e1"), positions)


def test_deletion_params_validation():
    with pytest.raises(ValueError):
        DeletionParams(2, "fixed", (1,))
    with pytest.raises(ValueError):
        DeletionParams(2, "fixed", (1, 1))
    with pytest.raises(ValueError):
        DeletionParams(1, "random")
    with pytest.raises(ValueError):
        DeletionParams(-1)


def test_cascade_identity_and_fixed():
    x = bits("1111")
    y, pos = cascade_transmit(x, 0.0, DeletionParams(0), TrialRng(3))
    assert np.array_equal(y, x) and pos == ()
    y, pos = cascade_transmit(x, 0.0, DeletionParams(1, "fixed", (1,)), TrialRng(3))
    assert to_str(y) == "111" and pos == (1,)


def test_cascade_bec_then_one_deletion():
    N = 2048
    x = np.random.default_rng(5).integers(0, 2, N, dtype=np.uint8)
    y, pos = cascade_transmit(x, 0.3, DeletionParams(1), TrialRng(11, 4))
    assert y.size == N - 1 and len(pos) == 1
    sigma = np.sqrt(N * 0.3 * 0.7)
    assert abs(erasure_count(y) - 0.3 * N) < 3 * sigma + 1


def test_cascade_too_many_deletions():
    with pytest.raises(ValueError):
        cascade_transmit(bits("01"), 0.1, DeletionParams(3), TrialRng(0))


def test_sweep_needs_caller():
    with pytest.raises(ValueError):
        cascade_transmit(bits("0101"), 0.1, DeletionParams(1, "sweep"), TrialRng(0))
    assert len(list(deletion_sets(16, 2))) == 120


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**63), st.integers(0, 10_000), st.integers(0, 4), st.floats(0, 1))
def test_cascade_length_subsequence_determinism(seed, trial, d, p):
    x = np.random.default_rng(seed % 1000).integers(0, 2, 64, dtype=np.uint8)
    deletion = DeletionParams(d)
    y1, pos1 = cascade_transmit(x, p, deletion, TrialRng(seed, trial))
    y2, pos2 = cascade_transmit(x, p, deletion, TrialRng(seed, trial))
    assert y1.size == 64 - d
    assert np.array_equal(y1, y2) and pos1 == pos2
    # the BEC draw comes first from the stream, so it can be replayed
    bec = bec_transmit(x, p, TrialRng(seed, trial).generator())
    assert np.array_equal(delete_symbols(bec, pos1), y1)


def test_trial_streams_differ():
    a = TrialRng(1, 0).generator().integers(0, 2**32, 4)
    b = TrialRng(1, 1).generator().integers(0, 2**32, 4)
    c = TrialRng(2, 0).generator().integers(0, 2**32, 4)
    assert not np.array_equal(a, b) and not np.array_equal(a, c)
    with pytest.raises(ValueError):
        TrialRng(1, -1)
