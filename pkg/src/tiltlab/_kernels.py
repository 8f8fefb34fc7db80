"""Hot loops of the prime-field linear algebra.

Every kernel exists twice: a plain numpy version and a numba ``@njit``
version.  The numba path is used when numba imports cleanly and the
environment variable ``TILTLAB_NUMBA`` is not set to ``0``.  Both paths
return identical results; ``benchmarks/bench_kernels.py`` compares them.
"""

from __future__ import annotations

import os

import numpy as np

try:  # pragma: no cover - exercised implicitly
    from numba import njit

    HAS_NUMBA = True
except ImportError:  # pragma: no cover
    HAS_NUMBA = False

    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]
        return lambda f: f


def numba_enabled() -> bool:
    """True when the compiled kernels are selected."""
    return HAS_NUMBA and os.environ.get("TILTLAB_NUMBA", "1") != "0"


# ---------------------------------------------------------------------------
# reduced row echelon form


def rref_np(A: np.ndarray, p: int):
    """Reduced row echelon form of ``A`` over F_p (pure numpy).

    Returns ``(R, pivots)`` where ``pivots`` is an int64 array of pivot columns.
    """
    R = np.array(A, dtype=np.int64, copy=True) % p
    rows, cols = R.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(R[r:, c])[0]
        if nz.size == 0:
            continue
        k = r + nz[0]
        if k != r:
            R[[r, k]] = R[[k, r]]
        inv = pow(int(R[r, c]), p - 2, p)
        R[r] = (R[r] * inv) % p
        col = R[:, c].copy()
        col[r] = 0
        hit = np.nonzero(col)[0]
        if hit.size:
            R[hit] = (R[hit] - np.outer(col[hit], R[r])) % p
        pivots.append(c)
        r += 1
    return R, np.array(pivots, dtype=np.int64)


@njit(cache=True)
def _inv_mod(x, p):
    result = 1
    base = x % p
    e = p - 2
    while e > 0:
        if e & 1:
            result = (result * base) % p
        base = (base * base) % p
        e >>= 1
    return result


@njit(cache=True)
def rref_nb(A, p):
    """Numba-compiled version of `rref_np`."""
    R = A.copy()
    rows, cols = R.shape
    for i in range(rows):
        for j in range(cols):
            R[i, j] = R[i, j] % p
            if R[i, j] < 0:
                R[i, j] += p
    pivots = np.empty(min(rows, cols), dtype=np.int64)
    npiv = 0
    r = 0
    for c in range(cols):
        if r == rows:
            break
        k = -1
        for i in range(r, rows):
            if R[i, c] != 0:
                k = i
                break
        if k < 0:
            continue
        if k != r:
            for j in range(cols):
                tmp = R[r, j]
                R[r, j] = R[k, j]
                R[k, j] = tmp
        inv = _inv_mod(R[r, c], p)
        for j in range(cols):
            R[r, j] = (R[r, j] * inv) % p
        for i in range(rows):
            if i != r and R[i, c] != 0:
                f = R[i, c]
                for j in range(cols):
                    R[i, j] = (R[i, j] - f * R[r, j]) % p
        pivots[npiv] = c
        npiv += 1
        r += 1
    return R, pivots[:npiv].copy()


def rref_kernel(A: np.ndarray, p: int):
    """Dispatch to the selected rref implementation."""
    A = np.ascontiguousarray(A, dtype=np.int64)
    if A.size == 0:
        return A.copy() % p, np.zeros(0, dtype=np.int64)
    if numba_enabled():
        return rref_nb(A, p)
    return rref_np(A, p)


# ---------------------------------------------------------------------------
# exhaustive search for a Fitting split inside an endomorphism ring


@njit(cache=True)
def _rank_nb(M, p):
    R = M.copy()
    rows, cols = R.shape
    r = 0
    for c in range(cols):
        if r == rows:
            break
        k = -1
        for i in range(r, rows):
            if R[i, c] != 0:
                k = i
                break
        if k < 0:
            continue
        if k != r:
            for j in range(cols):
                tmp = R[r, j]
                R[r, j] = R[k, j]
                R[k, j] = tmp
        inv = _inv_mod(R[r, c], p)
        for j in range(cols):
            R[r, j] = (R[r, j] * inv) % p
        for i in range(r + 1, rows):
            if R[i, c] != 0:
                f = R[i, c]
                for j in range(cols):
                    R[i, j] = (R[i, j] - f * R[r, j]) % p
        r += 1
    return r


@njit(cache=True)
def _matmul_mod(A, B, p):
    n = A.shape[0]
    m = B.shape[1]
    k = A.shape[1]
    C = np.zeros((n, m), dtype=np.int64)
    for i in range(n):
        for t in range(k):
            a = A[i, t]
            if a != 0:
                for j in range(m):
                    C[i, j] += a * B[t, j]
    for i in range(n):
        for j in range(m):
            C[i, j] %= p
    return C


@njit(cache=True)
def fitting_search_nb(basis, p, start, stop):
    """Scan coefficient vectors ``start..stop-1`` (base-p digits) of ``basis``.

    Returns the first index whose endomorphism has a stable power that is
    neither zero nor invertible, or -1.
    """
    d, n, _ = basis.shape
    coeffs = np.zeros(d, dtype=np.int64)
    for idx in range(start, stop):
        x = idx
        for t in range(d):
            coeffs[t] = x % p
            x //= p
        f = np.zeros((n, n), dtype=np.int64)
        for t in range(d):
            c = coeffs[t]
            if c != 0:
                for i in range(n):
                    for j in range(n):
                        f[i, j] += c * basis[t, i, j]
        for i in range(n):
            for j in range(n):
                f[i, j] %= p
        e = 1
        while e < n:
            f = _matmul_mod(f, f, p)
            e *= 2
        rk = _rank_nb(f, p)
        if rk != 0 and rk != n:
            return idx
    return -1


def fitting_search_np(basis: np.ndarray, p: int, start: int, stop: int, chunk: int = 4096) -> int:
    """Pure numpy version of `fitting_search_nb` working on batches."""
    d, n, _ = basis.shape
    powers = p ** np.arange(d, dtype=np.int64)
    for lo in range(start, stop, chunk):
        hi = min(stop, lo + chunk)
        idx = np.arange(lo, hi, dtype=np.int64)
        coeffs = (idx[:, None] // powers[None, :]) % p
        f = np.einsum("bt,tij->bij", coeffs, basis) % p
        e = 1
        while e < n:
            f = np.matmul(f, f) % p
            e *= 2
        ranks = _batch_rank_np(f, p)
        bad = np.nonzero((ranks != 0) & (ranks != n))[0]
        if bad.size:
            return int(idx[bad[0]])
    return -1


def _batch_rank_np(F: np.ndarray, p: int) -> np.ndarray:
    """Ranks of a stack of square matrices over F_p."""
    F = F.copy() % p
    b, n, m = F.shape
    ranks = np.zeros(b, dtype=np.int64)
    row = np.zeros(b, dtype=np.int64)
    ar = np.arange(b)
    for c in range(m):
        # pivot candidates at or below the current row of each matrix
        mask = (np.arange(n)[None, :] >= row[:, None]) & (F[:, :, c] != 0)
        has = mask.any(axis=1) & (row < n)
        if not has.any():
            continue
        piv = np.argmax(mask, axis=1)
        sel = ar[has]
        pr = piv[has]
        rr = row[has]
        tmp = F[sel, rr].copy()
        F[sel, rr] = F[sel, pr]
        F[sel, pr] = tmp
        invs = np.array([pow(int(v), p - 2, p) for v in F[sel, rr, c]], dtype=np.int64)
        F[sel, rr] = (F[sel, rr] * invs[:, None]) % p
        below = np.arange(n)[None, :] > rr[:, None]
        factors = np.where(below, F[sel, :, c], 0)
        F[sel] = (F[sel] - factors[:, :, None] * F[sel, rr][:, None, :]) % p
        row[has] += 1
        ranks[has] += 1
    return ranks


def fitting_search(basis: np.ndarray, p: int, start: int, stop: int) -> int:
    basis = np.ascontiguousarray(basis, dtype=np.int64)
    if numba_enabled():
        return int(fitting_search_nb(basis, p, start, stop))
    return fitting_search_np(basis, p, start, stop)
