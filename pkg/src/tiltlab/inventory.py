"""Decomposition into indecomposables, isomorphism tests and brute-force inventories."""

from __future__ import annotations

import hashlib
import itertools
import logging
from collections import Counter
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from . import linalg as la
from ._kernels import fitting_search
from .algcore import BoundQuiverAlgebra
from .modrep import (FdModule, ModMorphism, compose, direct_sum, hom_basis, kernel, radical_spaces,
                     submodule, quotient)

log = logging.getLogger(__name__)

EXHAUSTIVE_BUDGET = 2 ** 20

_DEFAULT_SEED = 0


def set_default_seed(seed: int) -> None:
    """Seed used by the randomized searches when no generator is passed."""
    global _DEFAULT_SEED
    _DEFAULT_SEED = int(seed)


class BudgetError(RuntimeError):
    """A search exceeded its configured budget (distinct from a negative answer)."""


# ---------------------------------------------------------------------------
# endomorphisms and the Fitting split


def _block_diag(f: ModMorphism) -> np.ndarray:
    n = f.source.total_dim
    M = la.zeros(n, n)
    pos = 0
    for B in f.blocks:
        d = B.shape[0]
        M[pos:pos + d, pos:pos + d] = B
        pos += d
    return M


def _stable_blocks(f: ModMorphism) -> List[np.ndarray]:
    """Blocks of f^N with N at least every vertex dimension."""
    p = f.p
    out = []
    for B in f.blocks:
        d = B.shape[0]
        M = B.copy()
        e = 1
        while e < d:
            M = la.matmul(M, M, p)
            e *= 2
        out.append(M)
    return out


def _splits(f: ModMorphism) -> bool:
    n = f.source.total_dim
    r = sum(la.rank(B, f.p) for B in _stable_blocks(f))
    return 0 < r < n


def _combine(basis: Sequence[ModMorphism], coeffs) -> ModMorphism:
    p = basis[0].p
    blocks = [sum(int(c) * b.blocks[i] for c, b in zip(coeffs, basis)) % p for i in range(len(basis[0].blocks))]
    return ModMorphism(basis[0].source, basis[0].target, blocks)


def find_splitting_endomorphism(X: FdModule, rng: Optional[np.random.Generator] = None,
                                budget: int = EXHAUSTIVE_BUDGET) -> Optional[ModMorphism]:
    """An endomorphism whose stable power is neither zero nor invertible, or ``None``.

    ``None`` certifies that End(X) is local: either End(X) is one-dimensional or
    every element of End(X) was checked exhaustively.

    Raises:
        BudgetError: End(X) is too large to certify and the basis sweep found nothing.
    """
    E = hom_basis(X, X)
    d = len(E)
    if d <= 1:
        return None
    p = X.p
    for f in E:
        if _splits(f):
            return f
    for i in range(d):
        for j in range(i + 1, d):
            for c in range(1, p):
                coeffs = [0] * d
                coeffs[i], coeffs[j] = 1, c
                f = _combine(E, coeffs)
                if _splits(f):
                    return f
    rng = rng if rng is not None else np.random.default_rng(_DEFAULT_SEED)
    for _ in range(32):
        f = _combine(E, rng.integers(0, p, size=d))
        if _splits(f):
            return f
    total = p ** d
    if total > budget:
        raise BudgetError(f"End(X) has {p}^{d} elements, above the certification budget {budget}")
    stack = np.stack([_block_diag(f) for f in E])
    hit = fitting_search(stack, p, 0, total)
    if hit < 0:
        return None
    coeffs = [(hit // p ** t) % p for t in range(d)]
    return _combine(E, coeffs)


def is_indecomposable(X: FdModule, budget: int = EXHAUSTIVE_BUDGET) -> bool:
    if X.total_dim == 0:
        return False
    return find_splitting_endomorphism(X, budget=budget) is None


def decompose(X: FdModule, budget: int = EXHAUSTIVE_BUDGET) -> List[FdModule]:
    """Indecomposable summands of ``X`` (as submodules in adapted bases)."""
    if X.total_dim == 0:
        return []
    f = find_splitting_endomorphism(X, budget=budget)
    if f is None:
        return [X]
    g = ModMorphism(X, X, _stable_blocks(f))
    p = X.p
    img = [la.column_basis(B, p) if B.size else la.zeros(B.shape[0], 0) for B in g.blocks]
    ker = [la.kernel_basis(B, p) if B.shape[1] else la.zeros(0, 0) for B in g.blocks]
    A, _ = submodule(X, img)
    B, _ = submodule(X, ker)
    return decompose(A, budget) + decompose(B, budget)


def iso_indecomposable(M: FdModule, Y: FdModule) -> bool:
    """Isomorphism test when ``M`` is indecomposable (End(M) local).

    ``M ≅ Y`` iff the dimension vectors agree and some composite g_b o f_a of
    Hom-basis elements is invertible, because the radical of a local ring is a
    subspace containing every non-invertible element.
    """
    if M.dims != Y.dims:
        return False
    if M.total_dim == 0:
        return True
    F = hom_basis(M, Y)
    if not F:
        return False
    G = hom_basis(Y, M)
    for f in F:
        for g in G:
            if compose(g, f).is_injective():
                return True
    return False


def is_isomorphic(X: FdModule, Y: FdModule, rng: Optional[np.random.Generator] = None,
                  budget: int = EXHAUSTIVE_BUDGET) -> bool:
    """Decide ``X ≅ Y``.

    A seeded random search for an invertible morphism runs first; a negative or
    inconclusive outcome is settled exactly by comparing decompositions.
    """
    if X.algebra is not Y.algebra:
        raise ValueError("modules over different algebras")
    if X.dims != Y.dims:
        return False
    if X.total_dim == 0:
        return True
    H = hom_basis(X, Y)
    if not H:
        return False
    rng = rng if rng is not None else np.random.default_rng(_DEFAULT_SEED)
    for f in H:
        if f.is_iso():
            return True
    for _ in range(8):
        if _combine(H, rng.integers(0, X.p, size=len(H))).is_iso():
            return True
    left = decompose(X, budget)
    right = decompose(Y, budget)
    if len(left) != len(right):
        return False
    unmatched = list(right)
    for M in left:
        for k, N in enumerate(unmatched):
            if iso_indecomposable(M, N):
                del unmatched[k]
                break
        else:
            return False
    return True


# ---------------------------------------------------------------------------
# labels


def radical_layers(X: FdModule) -> List[Tuple[int, ...]]:
    """Dimension vectors of rad^k X / rad^{k+1} X."""
    layers = []
    cur = X
    while cur.total_dim:
        rad = radical_spaces(cur)
        R, _ = submodule(cur, rad)
        layers.append(tuple(a - b for a, b in zip(cur.dims, R.dims)))
        cur = R
    return layers


def loewy_label(X: FdModule) -> str:
    """Label like ``1/2`` (top over radical layers) or ``a/bc/d``."""
    if X.total_dim == 0:
        return "0"
    names = X.algebra.vertices
    sep = "" if all(len(v) == 1 for v in names) else ","
    parts = []
    for layer in radical_layers(X):
        parts.append(sep.join(names[i] for i, m in enumerate(layer) for _ in range(m)))
    return "/".join(parts)


# ---------------------------------------------------------------------------
# inventories


class Inventory:
    """Pairwise non-isomorphic indecomposables in canonical order.

    Attributes:
        algebra: the algebra.
        modules: the indecomposables; ``modules[k].name`` is the display name.
        dim_bound: the per-vertex cap used to enumerate (``None`` if assembled by hand).
    """

    def __init__(self, algebra: BoundQuiverAlgebra, modules: Sequence[FdModule], dim_bound=None):
        self.algebra = algebra
        mods = sorted(modules, key=lambda M: (M.total_dim, M.dims, M.key()))
        names: List[str] = []
        for M in mods:
            base = M.name or loewy_label(M)
            name = base
            k = 2
            while name in names:
                name = f"{base}#{k}"
                k += 1
            names.append(name)
        self.modules = [M.with_name(nm) for M, nm in zip(mods, names)]
        self.dim_bound = dim_bound
        self._identify_cache: Dict[bytes, Optional[int]] = {}

    def __len__(self) -> int:
        return len(self.modules)

    def __iter__(self):
        return iter(self.modules)

    def __getitem__(self, k: int) -> FdModule:
        return self.modules[k]

    @property
    def names(self) -> List[str]:
        return [M.name for M in self.modules]

    def index(self, name: str) -> int:
        for k, M in enumerate(self.modules):
            if M.name == name:
                return k
        raise KeyError(f"no inventory member named {name!r}")

    def rename(self, k: int, name: str) -> None:
        if name in self.names and self.modules[k].name != name:
            raise ValueError(f"duplicate module name {name!r}")
        self.modules[k] = self.modules[k].with_name(name)

    def fingerprint(self) -> str:
        h = hashlib.sha256(self.algebra.fingerprint().encode())
        for M in self.modules:
            h.update(M.key())
        return h.hexdigest()[:16]

    def identify(self, Y: FdModule) -> Optional[int]:
        """Index of the member isomorphic to the indecomposable ``Y``."""
        key = Y.key()
        if key in self._identify_cache:
            return self._identify_cache[key]
        found = None
        for k, M in enumerate(self.modules):
            if M.dims == Y.dims and iso_indecomposable(M, Y):
                found = k
                break
        self._identify_cache[key] = found
        return found

    def multiplicities(self, X: FdModule) -> Counter:
        """Multiset of inventory indices of the summands of ``X``.

        Raises:
            LookupError: a summand is missing from the inventory.
        """
        out: Counter = Counter()
        for S in decompose(X):
            k = self.identify(S)
            if k is None:
                raise LookupError(f"summand with dimension vector {S.dims} is not in the inventory")
            out[k] += 1
        return out

    def support(self, X: FdModule) -> List[int]:
        return sorted(self.multiplicities(X))

    def direct_sum(self, indices: Iterable[int]):
        return direct_sum([self.modules[k] for k in indices], self.algebra)


def _connected(A: BoundQuiverAlgebra, dims: Sequence[int]) -> bool:
    sup = [i for i, d in enumerate(dims) if d]
    if not sup:
        return False
    adj = {i: set() for i in sup}
    for a in A.quiver.arrows:
        if dims[a.source] and dims[a.target]:
            adj[a.source].add(a.target)
            adj[a.target].add(a.source)
    seen = {sup[0]}
    stack = [sup[0]]
    while stack:
        i = stack.pop()
        for j in adj[i] - seen:
            seen.add(j)
            stack.append(j)
    return len(seen) == len(sup)


def _rank_profile(A: BoundQuiverAlgebra, X: FdModule) -> tuple:
    return tuple(la.rank(X.path_matrix(b), A.p) for b in A.basis if b[1])


def _normal_form(r: int, rows: int, cols: int) -> np.ndarray:
    M = la.zeros(rows, cols)
    for t in range(r):
        M[t, t] = 1
    return M


def enumerate_indecomposables(A: BoundQuiverAlgebra, dim_bound, budget: int = 2 ** 22,
                              chunk: int = 1 << 14) -> Inventory:
    """All indecomposables with dimension vector below ``dim_bound``, up to isomorphism.

    Arrow matrices are enumerated exhaustively (one non-loop arrow is fixed in
    rank normal form, which loses no isomorphism class), filtered by the
    relations, tested for indecomposability and deduplicated.

    Args:
        dim_bound: an int (same cap at every vertex) or a per-vertex sequence.
        budget: maximal number of candidate representations.

    Raises:
        BudgetError: the enumeration would exceed ``budget`` candidates.
    """
    q, p = A.quiver, A.p
    caps = [int(dim_bound)] * q.n if np.isscalar(dim_bound) else [int(c) for c in dim_bound]
    if len(caps) != q.n:
        raise ValueError("dim_bound has the wrong length")
    dimvecs = [d for d in itertools.product(*[range(c + 1) for c in caps]) if any(d)]
    dimvecs.sort(key=lambda d: (sum(d), d))

    plans = []
    cost = 0
    for d in dimvecs:
        if not _connected(A, d):
            continue
        active = [k for k, a in enumerate(q.arrows) if d[a.source] and d[a.target]]
        if not active:
            if sum(d) == 1:
                plans.append((d, active, None))
                cost += 1
            continue
        fixable = [k for k in active if q.arrows[k].source != q.arrows[k].target]
        fixed = max(fixable, key=lambda k: d[q.arrows[k].source] * d[q.arrows[k].target]) if fixable else None
        free = [k for k in active if k != fixed]
        nfree = sum(d[q.arrows[k].source] * d[q.arrows[k].target] for k in free)
        nranks = min(d[q.arrows[fixed].source], d[q.arrows[fixed].target]) + 1 if fixed is not None else 1
        cost += nranks * p ** nfree
        plans.append((d, active, fixed))
    if cost > budget:
        raise BudgetError(f"indecomposable enumeration needs {cost} candidates (budget {budget})")

    found: List[FdModule] = []
    for d, active, fixed in plans:
        buckets: Dict[tuple, List[FdModule]] = {}
        for X in _candidates(A, d, active, fixed, chunk):
            prof = _rank_profile(A, X)
            bucket = buckets.setdefault(prof, [])
            if any(iso_indecomposable(M, X) for M in bucket):
                continue
            if not is_indecomposable(X):
                continue
            bucket.append(X)
            found.append(X)
    if any(c > 0 for c in caps):
        log.info("inventory complete only up to dimension vector %s", caps)
    return Inventory(A, found, dim_bound=tuple(caps))


def _candidates(A: BoundQuiverAlgebra, d, active, fixed, chunk):
    q, p = A.quiver, A.p
    shapes = {k: (d[q.arrows[k].target], d[q.arrows[k].source]) for k in range(len(q.arrows))}
    if not active:
        yield FdModule(A, d, [la.zeros(*shapes[k]) for k in range(len(q.arrows))], check=False)
        return
    free = [k for k in active if k != fixed]
    sizes = [shapes[k][0] * shapes[k][1] for k in free]
    nfree = sum(sizes)
    ranks = range(min(shapes[fixed]) + 1) if fixed is not None else [None]
    for r in ranks:
        total = p ** nfree
        for lo in range(0, total, chunk):
            idx = np.arange(lo, min(total, lo + chunk), dtype=np.int64)
            digits = (idx[:, None] // (p ** np.arange(nfree, dtype=np.int64))[None, :]) % p if nfree else np.zeros((idx.size, 0), dtype=np.int64)
            mats = {}
            pos = 0
            for k, s in zip(free, sizes):
                mats[k] = digits[:, pos:pos + s].reshape(-1, *shapes[k])
                pos += s
            if fixed is not None:
                mats[fixed] = np.broadcast_to(_normal_form(r, *shapes[fixed]), (idx.size,) + shapes[fixed])
            for k in range(len(q.arrows)):
                if k not in mats:
                    mats[k] = np.zeros((idx.size,) + shapes[k], dtype=np.int64)
            ok = np.ones(idx.size, dtype=bool)
            for rel in A.relations:
                acc = None
                for path, c in rel.items():
                    start, arrows = path
                    M = np.broadcast_to(np.eye(d[start], dtype=np.int64), (idx.size, d[start], d[start]))
                    for k in arrows:
                        M = np.matmul(mats[k], M) % p
                    acc = c * M if acc is None else acc + c * M
                if acc is not None:
                    ok &= ~((acc % p).reshape(idx.size, -1).any(axis=1))
            for t in np.nonzero(ok)[0]:
                yield FdModule(A, d, [np.ascontiguousarray(mats[k][t]) for k in range(len(q.arrows))], check=False)


def inventory_from_modules(A: BoundQuiverAlgebra, modules: Sequence[FdModule]) -> Inventory:
    """Inventory of the distinct indecomposable summands of the given modules."""
    found: List[FdModule] = []
    for X in modules:
        for S in decompose(X):
            if not any(M.dims == S.dims and iso_indecomposable(M, S) for M in found):
                found.append(S)
    return Inventory(A, found)
