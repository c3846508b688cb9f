import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from polardel.alphabet import ERASURE, ternary
from polardel.polar import (PolarCode, Status, bhattacharyya, bit_reversal_permutation,
                            construct_code, polar_encode, polar_transform, sc_decode,
                            sc_decode_batch, select_reliable)

from conftest import BACKENDS, all_vectors, kron_generator


@pytest.mark.parametrize("n, expected", [(0, [0]), (1, [0, 1]), (2, [0, 2, 1, 3]),
                                         (3, [0, 4, 2, 6, 1, 5, 3, 7])])
def test_bit_reversal_small(n, expected):
    assert bit_reversal_permutation(n).tolist() == expected


@pytest.mark.parametrize("n", range(13))
def test_bit_reversal_is_involution(n):
    perm = bit_reversal_permutation(n)
    assert np.array_equal(perm[perm], np.arange(1 << n))


@pytest.mark.parametrize("n", [0, 1, 2, 3])
def test_encoder_matches_matrix_exhaustive(n):
    U = all_vectors(1 << n)
    expected = (U.astype(np.int64) @ kron_generator(n)) % 2
    assert np.array_equal(polar_transform(U), expected)


@pytest.mark.parametrize("n", [4, 5])
def test_encoder_matches_matrix_random(n, rng):
    U = rng.integers(0, 2, size=(100, 1 << n), dtype=np.uint8)
    expected = (U.astype(np.int64) @ kron_generator(n)) % 2
    assert np.array_equal(polar_transform(U), expected)


def test_encode_toy_code():
    code = PolarCode.from_frozen(4, [0, 1, 2])
    assert polar_encode([1], code).tolist() == [1, 1, 1, 1]
    assert polar_encode([0], code).tolist() == [0, 0, 0, 0]


def test_encode_rejects_wrong_length():
    code = construct_code(8, 0.3, 4)
    with pytest.raises(ValueError):
        polar_encode([0, 1, 1], code)


def test_bhattacharyya_examples():
    assert np.allclose(bhattacharyya(2, 0.3), [0.51, 0.09], atol=1e-15)
    assert np.allclose(bhattacharyya(4, 0.3), [0.7599, 0.2601, 0.1719, 0.0081], atol=1e-15)


def test_construct_code_examples():
    assert construct_code(4, 0.3, 2).info_parity.tolist() == [2, 3]
    assert construct_code(4, 0.3, 4).info_parity.tolist() == [0, 1, 2, 3]
    assert construct_code(4, 0.3, 4).frozen.size == 0


def test_select_reliable_tie_break():
    z = np.array([0.5, 0.1, 0.1, 0.9, 0.1, 0.5])
    assert select_reliable(z, 2).tolist() == [2, 4]
    assert select_reliable(z, 4).tolist() == [1, 2, 4, 5]


@pytest.mark.parametrize("N, p, kr", [(4, 0.0, 2), (4, 1.0, 2), (4, 0.3, 0), (4, 0.3, 5), (6, 0.3, 2)])
def test_construct_code_rejects(N, p, kr):
    with pytest.raises(ValueError):
        construct_code(N, p, kr)


def test_code_invariants():
    code = construct_code(256, 0.3, 140, r=12)
    assert code.k == 128 and code.r == 12 and code.n == 8
    assert np.intersect1d(code.info_parity, code.frozen).size == 0
    assert np.array_equal(np.union1d(code.info_parity, code.frozen), np.arange(256))
    z = code.reliabilities
    assert z[code.info_parity].max() <= z[code.frozen].min()
    assert np.all((z >= 0) & (z <= 1))
    with pytest.raises(ValueError):
        code.info_parity[0] = 5


@pytest.mark.parametrize("n", range(1, 12))
def test_bhattacharyya_conservation(n):
    # Z(W+) + Z(W-) = 2 Z at every node of the recursion
    p = 0.3
    parent = bhattacharyya(1 << (n - 1), p)
    child = bhattacharyya(1 << n, p)
    assert np.allclose(child[0::2] + child[1::2], 2 * parent, rtol=0, atol=1e-14)


@settings(max_examples=50, deadline=None)
@given(st.integers(1, 10), st.floats(0.01, 0.98), st.floats(0.001, 0.01))
def test_bhattacharyya_monotone_in_p(n, p, dp):
    assert np.all(bhattacharyya(1 << n, p + dp) >= bhattacharyya(1 << n, p))


def test_sc_toy_examples(backend):
    code = PolarCode.from_frozen(4, [0, 1, 2])
    res = sc_decode(ternary("1e11"), code, backend=backend)
    assert res.status is Status.RESOLVED
    assert res.message_plus_parity.tolist() == [1]
    assert res.full_estimate.tolist() == [0, 0, 0, 1]
    assert sc_decode(ternary("eeee"), code, backend=backend).status is Status.AMBIGUOUS
    zero = sc_decode(ternary("eeee"), code, policy="zero", backend=backend)
    assert zero.status is Status.RESOLVED and zero.message_plus_parity.tolist() == [0]


def test_sc_clean_exhaustive_n8(backend):
    for kr in range(1, 9):
        code = construct_code(8, 0.3, kr)
        M = all_vectors(kr)
        status, U = sc_decode_batch(polar_encode(M, code), code, backend=backend)
        assert np.all(status == Status.RESOLVED)
        assert np.array_equal(U[:, code.info_parity], M)


@pytest.mark.parametrize("n", [4, 7, 9, 11])
def test_sc_clean_round_trip(n, backend, rng):
    N = 1 << n
    code = construct_code(N, 0.3, N // 2)
    M = rng.integers(0, 2, size=(8, N // 2), dtype=np.uint8)
    status, U = sc_decode_batch(polar_encode(M, code), code, backend=backend)
    assert np.all(status == Status.RESOLVED)
    assert np.array_equal(U[:, code.info_parity], M)


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 8), st.floats(0.05, 0.9), st.integers(0, 2**32 - 1))
def test_sc_erasure_only_soundness(n, frac, seed):
    N = 1 << n
    g = np.random.default_rng(seed)
    code = construct_code(N, 0.3, max(1, N // 2))
    M = g.integers(0, 2, size=(32, code.k_plus_r), dtype=np.uint8)
    Y = polar_encode(M, code)
    Y[g.random(Y.shape) < frac] = ERASURE
    for backend in BACKENDS:
        status, U = sc_decode_batch(Y, code, backend=backend)
        ok = status == Status.RESOLVED
        assert np.array_equal(U[ok][:, code.info_parity], M[ok])


@pytest.mark.skipif(len(BACKENDS) < 2, reason="numba unavailable")
def test_backends_agree_on_garbage(rng):
    # arbitrary ternary rows, including flipped bits, under every option combination
    N = 64
    code = construct_code(N, 0.3, 30)
    Y = rng.integers(0, 3, size=(400, N), dtype=np.uint8)
    for policy in ("drop", "zero"):
        for prune in (False, True):
            s1, U1 = sc_decode_batch(Y, code, policy, prune, backend="numpy")
            s2, U2 = sc_decode_batch(Y, code, policy, prune, backend="numba")
            assert np.array_equal(s1, s2)
            ok = s1 == Status.RESOLVED
            assert np.array_equal(U1[ok], U2[ok])
    assert np.any(s1 == Status.FROZEN_CONFLICT)


def test_frozen_conflict_flag():
    # frozen u1 = 0 but a fully known received word of the wrong coset
    code = PolarCode.from_frozen(2, [0])
    res = sc_decode(ternary("01"), code, prune_frozen_conflicts=True)
    assert res.status is Status.FROZEN_CONFLICT
    # without pruning the contradiction meets u2's variable node and becomes an erasure
    assert sc_decode(ternary("01"), code).status is Status.AMBIGUOUS
    assert sc_decode(ternary("01"), code, policy="zero").status is Status.RESOLVED


def test_sc_decode_errors():
    code = construct_code(8, 0.3, 4)
    with pytest.raises(ValueError):
        sc_decode(ternary("0101"), code)
    with pytest.raises(ValueError):
        sc_decode(ternary("01010101"), code, policy="guess")
