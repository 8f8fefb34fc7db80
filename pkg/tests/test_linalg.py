import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from tiltlab import _kernels
from tiltlab import linalg as la

PRIMES = [2, 3, 5]


@st.composite
def matrices(draw, max_side=6):
    p = draw(st.sampled_from(PRIMES))
    rows = draw(st.integers(1, max_side))
    cols = draw(st.integers(1, max_side))
    A = draw(arrays(np.int64, (rows, cols), elements=st.integers(0, p - 1)))
    return A, p


@given(matrices())
def test_rref_is_idempotent(case):
    A, p = case
    R, r, piv = la.rref(A, p)
    R2, r2, piv2 = la.rref(R, p)
    assert np.array_equal(R, R2) and r == r2 and piv == piv2


@given(matrices())
def test_rank_nullity(case):
    A, p = case
    K = la.kernel_basis(A, p)
    assert la.rank(A, p) + K.shape[1] == A.shape[1]
    assert not la.matmul(A, K, p).any()


@given(matrices())
def test_numba_and_numpy_rref_agree(case):
    A, p = case
    R1, piv1 = _kernels.rref_np(A, p)
    R2, piv2 = _kernels.rref_nb(np.ascontiguousarray(A), p)
    assert np.array_equal(R1, R2)
    assert list(piv1) == list(piv2)


@given(matrices(max_side=5))
def test_solve_right_finds_preimages(case):
    A, p = case
    x = np.arange(A.shape[1], dtype=np.int64) % p
    b = la.matmul(A, x.reshape(-1, 1), p)
    sol = la.solve_right(A, b, p)
    assert sol is not None
    assert np.array_equal(la.matmul(A, sol.reshape(-1, 1), p) % p, b % p)


def test_inverse_round_trip():
    A = np.array([[1, 2], [3, 4]])
    inv = la.inverse(A, 5)
    assert np.array_equal(la.matmul(A, inv, 5), np.eye(2, dtype=np.int64))


def test_singular_inverse_raises():
    with pytest.raises(ValueError):
        la.inverse(np.array([[1, 1], [1, 1]]), 2)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2 ** 31 - 1))
def test_fitting_search_paths_agree(seed):
    rng = np.random.default_rng(seed)
    d, n, p = 3, 3, 2
    basis = rng.integers(0, p, size=(d, n, n)).astype(np.int64)
    stop = p ** d
    assert _kernels.fitting_search_np(basis, p, 0, stop) == int(_kernels.fitting_search_nb(basis, p, 0, stop))


def test_env_flag_disables_numba(monkeypatch):
    monkeypatch.setenv("TILTLAB_NUMBA", "0")
    assert not _kernels.numba_enabled()
    R, piv = _kernels.rref_kernel(np.array([[2, 4], [1, 2]]), 3)
    assert list(piv) == [0]
