"""Compare the numba kernels with the pure-numpy fallback.

Usage::

    python benchmarks/bench_kernels.py [--repeat 5] [--sizes 8 16 32 64]

The fallback is selected the same way users select it, through the
``TILTLAB_NUMBA`` environment variable, so the end-to-end timings exercise the
real dispatch.  Results of both paths are compared before any timing is shown.
"""

import argparse
import os
import time
from contextlib import contextmanager

import numpy as np

from tiltlab import _kernels
from tiltlab.inventory import enumerate_indecomposables
from tiltlab.io import algebra_from_document, load_document
from tiltlab.repq import TensorAlgebra


@contextmanager
def numba_flag(on: bool):
    old = os.environ.get("TILTLAB_NUMBA")
    os.environ["TILTLAB_NUMBA"] = "1" if on else "0"
    try:
        yield
    finally:
        if old is None:
            del os.environ["TILTLAB_NUMBA"]
        else:
            os.environ["TILTLAB_NUMBA"] = old


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t)
    return min(times)


def bench_rref(sizes, repeat, p=2, count=50):
    rng = np.random.default_rng(0)
    rows = []
    for n in sizes:
        mats = [rng.integers(0, p, size=(n, n)).astype(np.int64) for _ in range(count)]
        for A in mats:
            R1, piv1 = _kernels.rref_np(A, p)
            R2, piv2 = _kernels.rref_nb(A, p)
            assert np.array_equal(R1, R2) and list(piv1) == list(piv2)
        t_np = best_of(lambda: [_kernels.rref_np(A, p) for A in mats], repeat)
        t_nb = best_of(lambda: [_kernels.rref_nb(A, p) for A in mats], repeat)
        rows.append((f"rref {n}x{n} (x{count})", t_np, t_nb))
    return rows


def bench_fitting(repeat, p=2):
    rng = np.random.default_rng(1)
    rows = []
    for d, n in ((8, 4), (12, 5), (14, 6)):
        # nilpotent strictly upper triangular basis: the search never finds a split, so it scans everything
        basis = np.triu(rng.integers(0, p, size=(d, n, n)), k=1).astype(np.int64)
        stop = p ** d
        assert _kernels.fitting_search_np(basis, p, 0, stop) == _kernels.fitting_search_nb(basis, p, 0, stop) == -1
        t_np = best_of(lambda: _kernels.fitting_search_np(basis, p, 0, stop), repeat)
        t_nb = best_of(lambda: _kernels.fitting_search_nb(basis, p, 0, stop), repeat)
        rows.append((f"fitting scan d={d} n={n} ({stop} maps)", t_np, t_nb))
    return rows


def bench_end_to_end(repeat):
    A = algebra_from_document(load_document("a2"))
    square = TensorAlgebra(A, A.quiver).algebra
    rows = []
    for label, alg, cap in (("inventory a3_rad2 cap 2", algebra_from_document(load_document("a3_rad2")), 2),
                            ("inventory commutative square cap 2", square, 2)):
        timings = []
        for flag in (False, True):
            with numba_flag(flag):
                enumerate_indecomposables(alg, cap)  # warm caches and the jit
                timings.append(best_of(lambda: enumerate_indecomposables(alg, cap), repeat))
        rows.append((label, *timings))
    return rows


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--sizes", type=int, nargs="+", default=[8, 16, 32, 64])
    parser.add_argument("--skip-end-to-end", action="store_true")
    args = parser.parse_args(argv)

    if not _kernels.HAS_NUMBA:
        print("numba is not installed; only the numpy path is available")
        return
    # compile once so the timings measure steady state
    _kernels.rref_nb(np.eye(3, dtype=np.int64), 2)
    _kernels.fitting_search_nb(np.zeros((1, 2, 2), dtype=np.int64), 2, 0, 2)

    rows = bench_rref(args.sizes, args.repeat) + bench_fitting(args.repeat)
    if not args.skip_end_to_end:
        rows += bench_end_to_end(args.repeat)
    width = max(len(r[0]) for r in rows)
    print(f"{'case'.ljust(width)}  {'numpy [s]':>10}  {'numba [s]':>10}  {'speedup':>8}")
    for label, t_np, t_nb in rows:
        print(f"{label.ljust(width)}  {t_np:10.4f}  {t_nb:10.4f}  {t_np / t_nb:8.1f}x")


if __name__ == "__main__":
    main()
