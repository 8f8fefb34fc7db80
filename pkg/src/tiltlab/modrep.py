"""Finite-dimensional modules as quiver representations.

Convention: the matrix of an arrow ``alpha: i -> j`` on a module ``X`` has shape
``(dim X_j, dim X_i)`` and acts on column vectors.  A path ``a*b`` (first ``a``,
then ``b``) therefore acts by ``X_b @ X_a``.  A morphism ``f: X -> Y`` is a
tuple of blocks ``f_i`` of shape ``(dim Y_i, dim X_i)`` with
``Y_alpha f_i = f_j X_alpha``.
"""

from __future__ import annotations

from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from . import linalg as la
from .algcore import AlgebraError, BoundQuiverAlgebra, Path


class ModuleError(ValueError):
    pass


class FdModule:
    """A representation of a bound quiver: dimension vector plus arrow matrices."""

    __slots__ = ("algebra", "dims", "action", "name", "_key")

    def __init__(self, algebra: BoundQuiverAlgebra, dims: Sequence[int], action: Sequence[np.ndarray],
                 name: Optional[str] = None, check: bool = True):
        self.algebra = algebra
        self.dims = tuple(int(d) for d in dims)
        p = algebra.p
        q = algebra.quiver
        if len(self.dims) != q.n:
            raise ModuleError("dimension vector has the wrong length")
        mats = []
        for k, a in enumerate(q.arrows):
            M = np.asarray(action[k], dtype=np.int64).reshape(self.dims[a.target], self.dims[a.source]) % p
            mats.append(M)
        self.action = tuple(mats)
        self.name = name
        self._key = None
        if check:
            self.check_relations()

    # -- basic data -------------------------------------------------------
    @property
    def p(self) -> int:
        return self.algebra.p

    @property
    def total_dim(self) -> int:
        return sum(self.dims)

    @property
    def dimvec(self) -> Tuple[int, ...]:
        return self.dims

    def is_zero(self) -> bool:
        return self.total_dim == 0

    def key(self) -> bytes:
        """Bytes identifying the module up to equality of data (not iso)."""
        if self._key is None:
            parts = [np.array(self.dims, dtype=np.int64).tobytes()]
            parts += [M.astype(np.int8 if self.p < 128 else np.int64).tobytes() for M in self.action]
            self._key = b"|".join(parts)
        return self._key

    def path_matrix(self, path: Path) -> np.ndarray:
        start, arrows = path
        M = la.identity(self.dims[start])
        for k in arrows:
            M = la.matmul(self.action[k], M, self.p)
        return M

    def check_relations(self) -> None:
        for rel in self.algebra.relations:
            if not rel:
                continue
            q0 = next(iter(rel))
            s, t = q0[0], self.algebra.quiver.end(q0)
            acc = la.zeros(self.dims[t], self.dims[s])
            for path, c in rel.items():
                acc = (acc + c * self.path_matrix(path)) % self.p
            if acc.any():
                raise ModuleError("module does not satisfy the relations")

    def arrow(self, name: str) -> np.ndarray:
        return self.action[self.algebra.quiver.arrow_index[name]]

    def with_name(self, name: Optional[str]) -> "FdModule":
        return FdModule(self.algebra, self.dims, self.action, name=name, check=False)

    def __repr__(self) -> str:
        label = f"{self.name!r}, " if self.name else ""
        return f"FdModule({label}dims={self.dims})"

    def to_literal(self) -> dict:
        q = self.algebra.quiver
        return {
            "name": self.name,
            "dims": {v: d for v, d in zip(q.vertices, self.dims)},
            "action": {a.name: M.tolist() for a, M in zip(q.arrows, self.action)},
        }


def module_from_literal(algebra: BoundQuiverAlgebra, dims: Dict[str, int], action: Dict[str, list],
                        name: Optional[str] = None) -> FdModule:
    """Build a module from per-name dimensions and arrow matrices (missing arrows are zero)."""
    q = algebra.quiver
    dv = [0] * q.n
    for v, d in dims.items():
        dv[q.vertex(v)] = int(d)
    mats = []
    for a in q.arrows:
        shape = (dv[a.target], dv[a.source])
        if a.name in action:
            M = np.array(action[a.name], dtype=np.int64)
            if M.size == 0:
                M = la.zeros(*shape)
            if M.shape != shape:
                raise ModuleError(f"matrix of arrow {a.name} has shape {M.shape}, expected {shape}")
        else:
            M = la.zeros(*shape)
        mats.append(M)
    unknown = set(action) - set(q.arrow_index)
    if unknown:
        raise ModuleError(f"unknown arrows {sorted(unknown)}")
    return FdModule(algebra, dv, mats, name=name)


class ModMorphism:
    """A morphism of representations given by per-vertex blocks."""

    __slots__ = ("source", "target", "blocks")

    def __init__(self, source: FdModule, target: FdModule, blocks: Sequence[np.ndarray], check: bool = False):
        if source.algebra is not target.algebra:
            raise ModuleError("morphism between modules over different algebras")
        self.source = source
        self.target = target
        p = source.p
        self.blocks = tuple(np.asarray(B, dtype=np.int64).reshape(target.dims[i], source.dims[i]) % p
                            for i, B in enumerate(blocks))
        if check and not self.is_homomorphism():
            raise ModuleError("blocks do not commute with the arrow actions")

    @property
    def p(self) -> int:
        return self.source.p

    def is_homomorphism(self) -> bool:
        X, Y, p = self.source, self.target, self.p
        for k, a in enumerate(X.algebra.quiver.arrows):
            lhs = la.matmul(Y.action[k], self.blocks[a.source], p)
            rhs = la.matmul(self.blocks[a.target], X.action[k], p)
            if not np.array_equal(lhs, rhs):
                return False
        return True

    def is_zero(self) -> bool:
        return all(not B.any() for B in self.blocks)

    def ranks(self) -> Tuple[int, ...]:
        return tuple(la.rank(B, self.p) for B in self.blocks)

    def is_injective(self) -> bool:
        return self.ranks() == self.source.dims

    def is_surjective(self) -> bool:
        return self.ranks() == self.target.dims

    def is_iso(self) -> bool:
        return self.source.dims == self.target.dims and self.is_injective()

    def __matmul__(self, other: "ModMorphism") -> "ModMorphism":
        """``g @ f`` is the composite ``g o f``."""
        return compose(self, other)

    def __add__(self, other: "ModMorphism") -> "ModMorphism":
        return ModMorphism(self.source, self.target, [(A + B) % self.p for A, B in zip(self.blocks, other.blocks)])

    def scale(self, c: int) -> "ModMorphism":
        return ModMorphism(self.source, self.target, [(c * B) % self.p for B in self.blocks])

    def flat(self) -> np.ndarray:
        """Concatenated row-major blocks (the Hom-space coordinates)."""
        if not self.blocks:
            return np.zeros(0, dtype=np.int64)
        return np.concatenate([B.reshape(-1) for B in self.blocks])

    def to_literal(self) -> dict:
        q = self.source.algebra.quiver
        return {v: B.tolist() for v, B in zip(q.vertices, self.blocks)}

    def __repr__(self) -> str:
        return f"ModMorphism({self.source.dims} -> {self.target.dims}, ranks={self.ranks()})"


def compose(g: ModMorphism, f: ModMorphism) -> ModMorphism:
    if f.target.dims != g.source.dims:
        raise ModuleError("composite of non-composable morphisms")
    p = f.p
    return ModMorphism(f.source, g.target, [la.matmul(gb, fb, p) for gb, fb in zip(g.blocks, f.blocks)])


def identity_morphism(X: FdModule) -> ModMorphism:
    return ModMorphism(X, X, [la.identity(d) for d in X.dims])


def zero_morphism(X: FdModule, Y: FdModule) -> ModMorphism:
    return ModMorphism(X, Y, [la.zeros(Y.dims[i], X.dims[i]) for i in range(len(X.dims))])


def zero_module(algebra: BoundQuiverAlgebra) -> FdModule:
    q = algebra.quiver
    return FdModule(algebra, [0] * q.n, [la.zeros(0, 0) for _ in q.arrows], name="0", check=False)


# ---------------------------------------------------------------------------
# Hom spaces

_HOM_CACHE: Dict[tuple, list] = {}
_HOM_CACHE_LIMIT = 200_000


def _hom_system(X: FdModule, Y: FdModule) -> Tuple[np.ndarray, List[int]]:
    """Coefficient matrix of the commuting-square system and block offsets."""
    q = X.algebra.quiver
    sizes = [Y.dims[i] * X.dims[i] for i in range(q.n)]
    offsets = [0]
    for s in sizes:
        offsets.append(offsets[-1] + s)
    nvar = offsets[-1]
    rows = []
    for k, a in enumerate(q.arrows):
        i, j = a.source, a.target
        neq = Y.dims[j] * X.dims[i]
        if neq == 0:
            continue
        E = np.zeros((neq, nvar), dtype=np.int64)
        # vec(Y_a f_i) = (Y_a kron I) vec(f_i)
        E[:, offsets[i]:offsets[i + 1]] += np.kron(Y.action[k], la.identity(X.dims[i]))
        # vec(f_j X_a) = (I kron X_a^T) vec(f_j)
        E[:, offsets[j]:offsets[j + 1]] -= np.kron(la.identity(Y.dims[j]), X.action[k].T)
        rows.append(E % X.p)
    A = np.concatenate(rows, axis=0) if rows else np.zeros((0, nvar), dtype=np.int64)
    return A, offsets


def hom_basis(X: FdModule, Y: FdModule) -> List[ModMorphism]:
    """A basis of Hom(X, Y) solving the commuting-square linear system."""
    if X.algebra is not Y.algebra:
        raise ModuleError("Hom between modules over different algebras")
    key = (X.algebra.uid, X.key(), Y.key())
    cached = _HOM_CACHE.get(key)
    if cached is None:
        A, offsets = _hom_system(X, Y)
        nvar = offsets[-1]
        K = la.kernel_basis(A, X.p) if nvar else la.zeros(0, 0)
        cached = [K[:, c].copy() for c in range(K.shape[1])]
        if len(_HOM_CACHE) > _HOM_CACHE_LIMIT:
            _HOM_CACHE.clear()
        _HOM_CACHE[key] = cached
    return [_unflatten(X, Y, v) for v in cached]


def hom_dim(X: FdModule, Y: FdModule) -> int:
    if X.total_dim == 0 or Y.total_dim == 0:
        return 0
    key = (X.algebra.uid, X.key(), Y.key())
    if key not in _HOM_CACHE:
        hom_basis(X, Y)
    return len(_HOM_CACHE[key])


def _unflatten(X: FdModule, Y: FdModule, v: np.ndarray) -> ModMorphism:
    blocks = []
    pos = 0
    for i in range(len(X.dims)):
        size = Y.dims[i] * X.dims[i]
        blocks.append(v[pos:pos + size].reshape(Y.dims[i], X.dims[i]))
        pos += size
    return ModMorphism(X, Y, blocks)


def hom_matrix(maps: Sequence[ModMorphism], n: int) -> np.ndarray:
    """Stack flattened morphisms as columns of an ``n x len(maps)`` matrix."""
    if not maps:
        return la.zeros(n, 0)
    return np.stack([f.flat() for f in maps], axis=1)


def factors_through(h: ModMorphism, f: ModMorphism, on_left: bool = True) -> Optional[ModMorphism]:
    """Find ``g`` with ``g o f = h`` (``on_left``) or ``f o g = h``; ``None`` if impossible."""
    p = h.p
    if on_left:
        cands = hom_basis(f.target, h.target)
        prods = [compose(g, f) for g in cands]
    else:
        cands = hom_basis(h.source, f.source)
        prods = [compose(f, g) for g in cands]
    n = h.flat().size
    if n == 0:
        return cands[0].scale(0) if cands else (zero_morphism(f.target, h.target) if on_left else zero_morphism(h.source, f.source))
    A = hom_matrix(prods, n)
    sol = la.solve_right(A, h.flat(), p)
    if sol is None:
        return None
    base = zero_morphism(f.target, h.target) if on_left else zero_morphism(h.source, f.source)
    acc = base
    for c, g in zip(sol, cands):
        if c:
            acc = acc + g.scale(int(c))
    return acc


# ---------------------------------------------------------------------------
# submodules, kernels, cokernels


def submodule(X: FdModule, spaces: Sequence[np.ndarray]) -> Tuple[FdModule, ModMorphism]:
    """Submodule spanned vertex-wise by independent columns ``spaces[i]``.

    Returns the submodule and its inclusion into ``X``.
    """
    q, p = X.algebra.quiver, X.p
    B = [la.as_columns(S, X.dims[i]) for i, S in enumerate(spaces)]
    dims = [b.shape[1] for b in B]
    mats = []
    for k, a in enumerate(q.arrows):
        img = la.matmul(X.action[k], B[a.source], p)
        if dims[a.source] == 0:
            mats.append(la.zeros(dims[a.target], 0))
            continue
        C = la.solve_right(B[a.target], img, p) if dims[a.target] else (la.zeros(0, dims[a.source]) if not img.any() else None)
        if C is None:
            raise ModuleError("subspaces are not closed under the arrow actions")
        mats.append(C)
    S = FdModule(X.algebra, dims, mats, check=False)
    return S, ModMorphism(S, X, B)


def quotient(X: FdModule, spaces: Sequence[np.ndarray]) -> Tuple[FdModule, ModMorphism]:
    """Quotient of ``X`` by the submodule spanned by ``spaces`` with the projection."""
    q, p = X.algebra.quiver, X.p
    proj, sect = [], []
    for i, S in enumerate(spaces):
        n = X.dims[i]
        Bi = la.column_basis(la.as_columns(S, n), p) if n else la.zeros(0, 0)
        Ci = la.complement_columns(Bi, n, p) if n else la.zeros(0, 0)
        full = np.concatenate([Bi, Ci], axis=1) if n else la.zeros(0, 0)
        inv = la.inverse(full, p) if n else la.zeros(0, 0)
        proj.append(inv[Bi.shape[1]:, :] if n else la.zeros(0, 0))
        sect.append(Ci)
    dims = [P.shape[0] for P in proj]
    mats = []
    for k, a in enumerate(q.arrows):
        mats.append(la.matmul(proj[a.target], la.matmul(X.action[k], sect[a.source], p), p))
    Q = FdModule(X.algebra, dims, mats, check=False)
    return Q, ModMorphism(X, Q, proj)


def kernel(f: ModMorphism) -> Tuple[FdModule, ModMorphism]:
    spaces = [la.kernel_basis(B, f.p) if B.shape[1] else la.zeros(0, 0) for B in f.blocks]
    return submodule(f.source, spaces)


def image(f: ModMorphism) -> Tuple[FdModule, ModMorphism]:
    spaces = [la.column_basis(B, f.p) if B.size else la.zeros(B.shape[0], 0) for B in f.blocks]
    return submodule(f.target, spaces)


def cokernel(f: ModMorphism) -> Tuple[FdModule, ModMorphism]:
    spaces = [la.column_basis(B, f.p) if B.size else la.zeros(B.shape[0], 0) for B in f.blocks]
    return quotient(f.target, spaces)


def direct_sum(mods: Sequence[FdModule], algebra: Optional[BoundQuiverAlgebra] = None):
    """Direct sum with canonical inclusions and projections.

    Returns:
        (S, inclusions, projections)
    """
    if not mods:
        if algebra is None:
            raise ModuleError("empty direct sum needs an algebra")
        Z = zero_module(algebra)
        return Z, [], []
    A = mods[0].algebra
    q, p = A.quiver, A.p
    dims = [sum(M.dims[i] for M in mods) for i in range(q.n)]
    mats = []
    for k, a in enumerate(q.arrows):
        M = la.zeros(dims[a.target], dims[a.source])
        r = c = 0
        for X in mods:
            M[r:r + X.dims[a.target], c:c + X.dims[a.source]] = X.action[k]
            r += X.dims[a.target]
            c += X.dims[a.source]
        mats.append(M)
    S = FdModule(A, dims, mats, check=False)
    incs, projs = [], []
    offs = [0] * q.n
    for X in mods:
        ib, pb = [], []
        for i in range(q.n):
            I = la.zeros(dims[i], X.dims[i])
            I[offs[i]:offs[i] + X.dims[i], :] = la.identity(X.dims[i])
            ib.append(I)
            pb.append(I.T.copy())
            offs[i] += X.dims[i]
        incs.append(ModMorphism(X, S, ib))
        projs.append(ModMorphism(S, X, pb))
    return S, incs, projs


def block_morphism(sources: Sequence[FdModule], targets: Sequence[FdModule], entries) -> ModMorphism:
    """Morphism ``⊕ sources -> ⊕ targets`` from a grid ``entries[r][c]`` (target r, source c).

    ``None`` entries are zero.
    """
    A = (sources or targets)[0].algebra
    S, _, _ = direct_sum(list(sources), A)
    T, _, _ = direct_sum(list(targets), A)
    blocks = []
    for i in range(A.n):
        B = la.zeros(T.dims[i], S.dims[i])
        r = 0
        for ti, Tm in enumerate(targets):
            c = 0
            for si, Sm in enumerate(sources):
                f = entries[ti][si]
                if f is not None:
                    B[r:r + Tm.dims[i], c:c + Sm.dims[i]] = f.blocks[i]
                c += Sm.dims[i]
            r += Tm.dims[i]
        blocks.append(B)
    return ModMorphism(S, T, blocks)


def conjugate(X: FdModule, changes: Sequence[np.ndarray]) -> FdModule:
    """Transport ``X`` along invertible base changes ``g_i`` (new action g_j X_a g_i^-1)."""
    p = X.p
    inv = [la.inverse(g, p) if g.size else g for g in changes]
    mats = []
    for k, a in enumerate(X.algebra.quiver.arrows):
        mats.append(la.matmul(changes[a.target], la.matmul(X.action[k], inv[a.source], p), p))
    return FdModule(X.algebra, X.dims, mats, name=X.name)


# ---------------------------------------------------------------------------
# standard modules and duality


def projective(A: BoundQuiverAlgebra, i) -> FdModule:
    """``P_i = e_i Λ``: basis paths starting at ``i``; arrows act by right multiplication."""
    i = A.quiver.vertex(i)
    key = ("projective", i)
    if key in A._cache:
        return A._cache[key]
    q, p = A.quiver, A.p
    bases = [A.basis_between(i, j) for j in range(q.n)]
    mats = []
    for k, a in enumerate(q.arrows):
        src, tgt = bases[a.source], bases[a.target]
        M = la.zeros(len(tgt), len(src))
        pos = {b: r for r, b in enumerate(tgt)}
        for c, b in enumerate(src):
            for w, coeff in A.reduce((b[0], b[1] + (k,))).items():
                M[pos[w], c] = (M[pos[w], c] + coeff) % p
        mats.append(M)
    P = FdModule(A, [len(b) for b in bases], mats, name=f"P{q.vertices[i]}")
    A._cache[key] = P
    return P


def injective(A: BoundQuiverAlgebra, i) -> FdModule:
    """``I_i = D(Λ e_i)``, the dual of the projective of the opposite algebra."""
    i = A.quiver.vertex(i)
    key = ("injective", i)
    if key not in A._cache:
        I = k_dual(projective(A.opposite(), i))
        A._cache[key] = I.with_name(f"I{A.quiver.vertices[i]}")
    return A._cache[key]


def simple(A: BoundQuiverAlgebra, i) -> FdModule:
    i = A.quiver.vertex(i)
    dims = [1 if j == i else 0 for j in range(A.n)]
    mats = [la.zeros(dims[a.target], dims[a.source]) for a in A.quiver.arrows]
    return FdModule(A, dims, mats, name=f"S{A.quiver.vertices[i]}")


def k_dual(X: FdModule) -> FdModule:
    """``D X = Hom_k(X, k)`` as a module over the opposite algebra (transposed matrices)."""
    op = X.algebra.opposite()
    return FdModule(op, X.dims, [M.T.copy() for M in X.action], name=X.name, check=False)


def k_dual_morphism(f: ModMorphism) -> ModMorphism:
    """``D f: D Y -> D X``."""
    return ModMorphism(k_dual(f.target), k_dual(f.source), [B.T.copy() for B in f.blocks])


def free_module(A: BoundQuiverAlgebra, vertices: Sequence[int]) -> FdModule:
    """``⊕ P_v`` over the listed vertex indices (repetition allowed)."""
    S, _, _ = direct_sum([projective(A, v) for v in vertices], A)
    return S


def map_from_free(A: BoundQuiverAlgebra, vertices: Sequence[int], X: FdModule, images: Sequence[np.ndarray]) -> ModMorphism:
    """Morphism ``⊕ P_v -> X`` sending the k-th generator ``e_v`` to ``images[k] ∈ X_v``."""
    F = free_module(A, vertices)
    p = A.p
    blocks = []
    for j in range(A.n):
        cols = []
        for v, x in zip(vertices, images):
            for b in A.basis_between(v, j):
                cols.append(la.matmul(X.path_matrix(b), np.asarray(x, dtype=np.int64).reshape(-1, 1), p)[:, 0])
        blocks.append(np.stack(cols, axis=1) if cols else la.zeros(X.dims[j], 0))
    return ModMorphism(F, X, blocks)


def radical_spaces(X: FdModule) -> List[np.ndarray]:
    """Vertex-wise basis of rad X = sum of the images of all arrows."""
    q, p = X.algebra.quiver, X.p
    out = []
    for j in range(q.n):
        imgs = [X.action[k] for k in q.in_arrows(j)]
        out.append(la.sum_spaces(imgs, X.dims[j], p))
    return out


def socle_spaces(X: FdModule) -> List[np.ndarray]:
    """Vertex-wise basis of soc X = common kernel of all outgoing arrows."""
    q, p = X.algebra.quiver, X.p
    return [la.intersect_kernels([X.action[k] for k in q.out_arrows(i)], X.dims[i], p) for i in range(q.n)]


def top_dims(X: FdModule) -> Tuple[int, ...]:
    return tuple(d - r.shape[1] for d, r in zip(X.dims, radical_spaces(X)))


def is_projective(X: FdModule) -> bool:
    """``X`` is projective iff its projective cover has the same dimension."""
    A = X.algebra
    top = top_dims(X)
    cover_dim = sum(m * projective(A, i).total_dim for i, m in enumerate(top))
    return cover_dim == X.total_dim
