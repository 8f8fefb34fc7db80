"""Independent brute-force oracles used by the tests (no shared code with the engine's homological algebra)."""

import itertools
import math

import numpy as np

from tiltlab.modrep import FdModule, ModuleError


def _matrices(rows, cols, p):
    for entries in itertools.product(range(p), repeat=rows * cols):
        yield np.array(entries, dtype=np.int64).reshape(rows, cols)


def _is_module(A, dims, action):
    try:
        FdModule(A, dims, action)
    except ModuleError:
        return False
    return True


def brute_ext1(X: FdModule, Y: FdModule) -> int:
    """dim Ext¹(X, Y) by counting extension cocycles and coboundaries.

    An extension ``0 -> Y -> E -> X -> 0`` is a representation with arrow
    matrices ``[[Y_a, d_a], [0, X_a]]``; the admissible ``d`` (relations hold)
    form Z, and those of the form ``Y_a h_s - h_t X_a`` form B.  Then
    ``|Z| / |B| = p^dim Ext¹``.
    """
    A = X.algebra
    p, q = A.p, A.quiver
    arrows = q.arrows
    shapes = [(Y.dims[a.target], X.dims[a.source]) for a in arrows]
    dims = [y + x for y, x in zip(Y.dims, X.dims)]

    def glue(deltas):
        mats = []
        for k, a in enumerate(arrows):
            top = np.concatenate([Y.action[k], deltas[k]], axis=1)
            bottom = np.concatenate([np.zeros((X.dims[a.target], Y.dims[a.source]), dtype=np.int64), X.action[k]],
                                    axis=1)
            mats.append(np.concatenate([top, bottom], axis=0))
        return mats

    cocycles = set()
    for deltas in itertools.product(*(list(_matrices(r, c, p)) for r, c in shapes)):
        if _is_module(A, dims, glue(deltas)):
            cocycles.add(tuple(d.tobytes() for d in deltas))
    boundaries = set()
    for hs in itertools.product(*(list(_matrices(Y.dims[v], X.dims[v], p)) for v in range(q.n))):
        d = [(Y.action[k] @ hs[a.source] - hs[a.target] @ X.action[k]) % p for k, a in enumerate(arrows)]
        boundaries.add(tuple(m.astype(np.int64).tobytes() for m in d))
    assert boundaries <= cocycles
    return round(math.log(len(cocycles) // len(boundaries), p))


def brute_hom(X: FdModule, Y: FdModule) -> int:
    """dim Hom(X, Y) by enumerating all vertexwise linear maps."""
    A = X.algebra
    p, q = A.p, A.quiver
    count = 0
    for hs in itertools.product(*(list(_matrices(Y.dims[v], X.dims[v], p)) for v in range(q.n))):
        if all(not ((hs[a.target] @ X.action[k] - Y.action[k] @ hs[a.source]) % p).any()
               for k, a in enumerate(q.arrows)):
            count += 1
    return round(math.log(count, p))
