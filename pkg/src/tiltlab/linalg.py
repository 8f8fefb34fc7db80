"""Exact linear algebra over a prime field F_p.

Matrices are plain 2-D ``numpy.int64`` arrays whose entries lie in ``[0, p)``.
Vectors are columns; a basis of a subspace of F_p^n is stored as an
``n x k`` matrix whose columns are the basis vectors.
"""

from __future__ import annotations

from typing import Optional

import numpy as np

from ._kernels import rref_kernel


def as_matrix(A, p: int, shape: Optional[tuple] = None) -> np.ndarray:
    """Coerce nested lists / arrays to a reduced int64 matrix."""
    M = np.array(A, dtype=np.int64)
    if shape is not None:
        M = M.reshape(shape)
    if M.ndim != 2:
        raise ValueError(f"expected a 2-D matrix, got shape {M.shape}")
    return M % p


def as_columns(S, n: int) -> np.ndarray:
    """View ``S`` as an ``n x k`` column matrix (handles empty spaces)."""
    S = np.asarray(S, dtype=np.int64)
    if S.ndim == 2 and S.shape[0] == n:
        return S
    if S.size == 0:
        return np.zeros((n, S.shape[1] if S.ndim == 2 and n == 0 else 0), dtype=np.int64)
    return S.reshape(n, -1)


def zeros(rows: int, cols: int) -> np.ndarray:
    return np.zeros((rows, cols), dtype=np.int64)


def identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.int64)


def matmul(A: np.ndarray, B: np.ndarray, p: int) -> np.ndarray:
    """Product of two matrices over F_p."""
    if A.shape[1] != B.shape[0]:
        raise ValueError(f"shape mismatch {A.shape} @ {B.shape}")
    if A.size == 0 or B.size == 0:
        return zeros(A.shape[0], B.shape[1])
    return (A @ B) % p


def rref(A: np.ndarray, p: int):
    """Reduced row echelon form.

    Returns:
        (R, rank, pivots) with ``pivots`` a tuple of pivot column indices.
    """
    A = np.asarray(A, dtype=np.int64)
    if A.ndim != 2:
        raise ValueError("rref expects a matrix")
    R, piv = rref_kernel(A, p)
    return R, len(piv), tuple(int(c) for c in piv)


def rank(A: np.ndarray, p: int) -> int:
    if A.size == 0:
        return 0
    return rref(A, p)[1]


def kernel_basis(A: np.ndarray, p: int) -> np.ndarray:
    """Columns spanning the null space of ``A``."""
    A = np.asarray(A, dtype=np.int64)
    rows, cols = A.shape
    if cols == 0:
        return zeros(0, 0)
    if rows == 0:
        return identity(cols)
    R, r, piv = rref(A, p)
    free = [c for c in range(cols) if c not in set(piv)]
    K = zeros(cols, len(free))
    for k, fc in enumerate(free):
        K[fc, k] = 1
        for i, pc in enumerate(piv):
            K[pc, k] = (-R[i, fc]) % p
    return K


def solve_right(A: np.ndarray, b: np.ndarray, p: int) -> Optional[np.ndarray]:
    """Solve ``A x = b`` with free variables set to zero.

    ``b`` may be a vector or a matrix of right-hand sides.  Returns ``None`` when
    some right-hand side is outside the column span of ``A``.
    """
    A = np.asarray(A, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    vector = b.ndim == 1
    B = b.reshape(-1, 1) if vector else b
    if A.shape[0] != B.shape[0]:
        raise ValueError(f"dimension mismatch: A has {A.shape[0]} rows, b has {B.shape[0]}")
    n = A.shape[1]
    if B.shape[1] == 0:
        return zeros(n, 0)
    if A.shape[0] == 0:
        X = zeros(n, B.shape[1])
        return X[:, 0] if vector else X
    aug = np.concatenate([A % p, B % p], axis=1)
    R, r, piv = rref(aug, p)
    if any(c >= n for c in piv):
        return None
    X = zeros(n, B.shape[1])
    for i, c in enumerate(piv):
        X[c] = R[i, n:]
    return X[:, 0] if vector else X


def inverse(A: np.ndarray, p: int) -> np.ndarray:
    n = A.shape[0]
    if A.shape != (n, n):
        raise ValueError("inverse of a non-square matrix")
    X = solve_right(A, identity(n), p)
    if X is None or rank(A, p) != n:
        raise ValueError("matrix is singular")
    return X


def column_basis(A: np.ndarray, p: int) -> np.ndarray:
    """Columns of ``A`` forming a basis of its column span (pivot columns)."""
    A = np.asarray(A, dtype=np.int64)
    if A.shape[1] == 0:
        return zeros(A.shape[0], 0)
    _, _, piv = rref(A, p)
    return A[:, list(piv)] % p


def complement_columns(B: np.ndarray, n: int, p: int) -> np.ndarray:
    """Standard basis vectors extending the independent columns of ``B`` to F_p^n."""
    B = as_columns(B, n)
    ext = np.concatenate([B % p, identity(n)], axis=1)
    _, _, piv = rref(ext, p)
    k = B.shape[1]
    chosen = [c - k for c in piv if c >= k]
    return identity(n)[:, chosen] if chosen else zeros(n, 0)


def in_span(B: np.ndarray, v: np.ndarray, p: int) -> bool:
    return solve_right(B, v, p) is not None


def sum_spaces(spaces, n: int, p: int) -> np.ndarray:
    """Basis of the sum of subspaces of F_p^n given by column matrices."""
    mats = [as_columns(S, n) for S in spaces if S.size]
    if not mats:
        return zeros(n, 0)
    return column_basis(np.concatenate(mats, axis=1), p)


def intersect_kernels(maps, n: int, p: int) -> np.ndarray:
    """Basis of the common kernel of several matrices with ``n`` columns."""
    rows = [M.reshape(-1, n) for M in maps if M.size]
    if not rows:
        return identity(n)
    return kernel_basis(np.concatenate(rows, axis=0), p)
