"""Quivers and bound quiver algebras over F_p.

A path is a pair ``(start, arrows)`` where ``start`` is a vertex index and
``arrows`` a tuple of arrow indices read left to right: ``a*b`` means first
``a`` then ``b``.  The trivial path at vertex ``i`` is ``(i, ())``.

Modules are representations in which a basis path from ``i`` to ``j`` of the
projective ``P_i`` sits at vertex ``j`` (so ``P_1`` of ``1 -> 2`` has dimension
vector ``(1, 1)``).
"""

from __future__ import annotations

import hashlib
import itertools
import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from . import linalg as la

log = logging.getLogger(__name__)

Path = Tuple[int, Tuple[int, ...]]

_SERIAL = itertools.count()


class AlgebraError(ValueError):
    """Raised for malformed quivers, relations, or infinite algebras."""


@dataclass(frozen=True)
class Arrow:
    name: str
    source: int
    target: int


class Quiver:
    """A finite quiver with named vertices and arrows."""

    def __init__(self, vertices: Sequence[str], arrows: Iterable[Tuple[str, str, str]] = ()):
        self.vertices: Tuple[str, ...] = tuple(str(v) for v in vertices)
        if len(set(self.vertices)) != len(self.vertices):
            raise AlgebraError("duplicate vertex names")
        self.vertex_index: Dict[str, int] = {v: i for i, v in enumerate(self.vertices)}
        arr = []
        for name, s, t in arrows:
            if s not in self.vertex_index or t not in self.vertex_index:
                raise AlgebraError(f"arrow {name!r} uses an unknown vertex")
            arr.append(Arrow(str(name), self.vertex_index[s], self.vertex_index[t]))
        self.arrows: Tuple[Arrow, ...] = tuple(arr)
        if len({a.name for a in self.arrows}) != len(self.arrows):
            raise AlgebraError("duplicate arrow names")
        self.arrow_index: Dict[str, int] = {a.name: k for k, a in enumerate(self.arrows)}

    @property
    def n(self) -> int:
        return len(self.vertices)

    def out_arrows(self, i: int) -> List[int]:
        return [k for k, a in enumerate(self.arrows) if a.source == i]

    def in_arrows(self, i: int) -> List[int]:
        return [k for k, a in enumerate(self.arrows) if a.target == i]

    def vertex(self, v) -> int:
        """Index of a vertex given by name or index."""
        if isinstance(v, (int, np.integer)) and 0 <= int(v) < self.n:
            return int(v)
        if str(v) in self.vertex_index:
            return self.vertex_index[str(v)]
        raise AlgebraError(f"unknown vertex {v!r}")

    def is_acyclic(self) -> bool:
        order = self.topological_order()
        return order is not None

    def topological_order(self) -> Optional[List[int]]:
        indeg = [0] * self.n
        for a in self.arrows:
            indeg[a.target] += 1
        ready = [i for i in range(self.n) if indeg[i] == 0]
        order = []
        while ready:
            i = ready.pop(0)
            order.append(i)
            for k in self.out_arrows(i):
                t = self.arrows[k].target
                indeg[t] -= 1
                if indeg[t] == 0:
                    ready.append(t)
        return order if len(order) == self.n else None

    def longest_path_length(self) -> int:
        order = self.topological_order()
        if order is None:
            raise AlgebraError("quiver has an oriented cycle")
        best = [0] * self.n
        for i in order:
            for k in self.out_arrows(i):
                t = self.arrows[k].target
                best[t] = max(best[t], best[i] + 1)
        return max(best, default=0)

    def end(self, path: Path) -> int:
        start, arrows = path
        return self.arrows[arrows[-1]].target if arrows else start

    def paths_up_to(self, length: int) -> List[Path]:
        """All paths of length at most ``length`` ordered by length."""
        layer = [(i, ()) for i in range(self.n)]
        out = list(layer)
        for _ in range(length):
            nxt = []
            for path in layer:
                for k in self.out_arrows(self.end(path)):
                    nxt.append((path[0], path[1] + (k,)))
            out.extend(nxt)
            layer = nxt
            if not layer:
                break
        return out

    def paths_between(self, i: int, j: int) -> List[Path]:
        """All paths from ``i`` to ``j`` (the quiver must be acyclic)."""
        if not self.is_acyclic():
            raise AlgebraError("path sets are infinite for cyclic quivers")
        return [q for q in self.paths_up_to(self.n) if q[0] == i and self.end(q) == j]

    def path_name(self, path: Path) -> str:
        start, arrows = path
        if not arrows:
            return f"e_{self.vertices[start]}"
        return "*".join(self.arrows[k].name for k in arrows)

    def parse_path(self, text: str) -> Path:
        text = text.strip()
        if text.startswith("e_") and text[2:] in self.vertex_index:
            return (self.vertex_index[text[2:]], ())
        names = [t.strip() for t in text.split("*") if t.strip()]
        if not names:
            raise AlgebraError(f"empty path {text!r}")
        ks = []
        for nm in names:
            if nm not in self.arrow_index:
                raise AlgebraError(f"unknown arrow {nm!r} in path {text!r}")
            ks.append(self.arrow_index[nm])
        for k1, k2 in zip(ks, ks[1:]):
            if self.arrows[k1].target != self.arrows[k2].source:
                raise AlgebraError(f"path {text!r} is not composable")
        return (self.arrows[ks[0]].source, tuple(ks))

    def opposite(self) -> "Quiver":
        return Quiver(self.vertices, [(a.name, self.vertices[a.target], self.vertices[a.source]) for a in self.arrows])


def reverse_path(q: Quiver, path: Path) -> Path:
    """The reversed path, read in the opposite quiver."""
    start, arrows = path
    return (q.end(path), tuple(reversed(arrows)))


Relation = Dict[Path, int]


def parse_relation(quiver: Quiver, terms, p: int) -> Relation:
    """Parse a relation given as a list of ``coeff*path`` strings (or one string).

    A leading integer token is the coefficient; ``-c*d`` means coefficient -1.
    """
    if isinstance(terms, str):
        terms = [t for t in terms.replace("-", "+-").split("+") if t.strip()]
    rel: Relation = {}
    for term in terms:
        term = term.strip()
        coeff = 1
        if term.startswith("-"):
            coeff, term = -1, term[1:].strip()
        head, _, rest = term.partition("*")
        if head.strip().lstrip("-").isdigit():
            coeff *= int(head)
            term = rest
        path = quiver.parse_path(term)
        rel[path] = (rel.get(path, 0) + coeff) % p
    rel = {k: v for k, v in rel.items() if v}
    ends = {(k[0], quiver.end(k)) for k in rel}
    if len(ends) > 1:
        raise AlgebraError("relation terms are not parallel paths")
    return rel


def _path_key(path: Path):
    return (len(path[1]), path[0], path[1])


class BoundQuiverAlgebra:
    """The algebra kQ/I with an explicit residue-path basis.

    Attributes:
        quiver: the underlying quiver.
        relations: list of relations, each a dict path -> coefficient.
        p: the characteristic.
        basis: residue paths forming a basis, sorted by (length, start, arrows).
    """

    def __init__(self, quiver: Quiver, relations: List[Relation], p: int, length_bound: int,
                 basis: List[Path], pivot_rows: Dict[Path, Dict[Path, int]]):
        self.quiver = quiver
        self.relations = relations
        self.p = p
        self.length_bound = length_bound
        self.basis = basis
        self.basis_index = {b: k for k, b in enumerate(basis)}
        self._rewrite = pivot_rows
        self._opposite: Optional["BoundQuiverAlgebra"] = None
        self._cache: dict = {}
        self.uid = next(_SERIAL)

    # -- basic data -------------------------------------------------------
    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def n(self) -> int:
        return self.quiver.n

    @property
    def vertices(self):
        return self.quiver.vertices

    def basis_between(self, i: int, j: int) -> List[Path]:
        """Basis paths from vertex ``i`` to vertex ``j`` (cached, ordered)."""
        key = ("between", i, j)
        if key not in self._cache:
            self._cache[key] = [b for b in self.basis if b[0] == i and self.quiver.end(b) == j]
        return self._cache[key]

    def reduce(self, path: Path) -> Dict[Path, int]:
        """Normal form of a path as a dict basis path -> coefficient."""
        if len(path[1]) >= self.length_bound:
            return {}
        if path in self.basis_index:
            return {path: 1}
        return dict(self._rewrite.get(path, {}))

    def reduce_vector(self, path: Path) -> np.ndarray:
        v = np.zeros(self.dim, dtype=np.int64)
        for b, c in self.reduce(path).items():
            v[self.basis_index[b]] = c
        return v

    def concat(self, x: Path, y: Path) -> Optional[Path]:
        if self.quiver.end(x) != y[0]:
            return None
        return (x[0], x[1] + y[1])

    @cached_property
    def mult(self) -> np.ndarray:
        """``mult[i, j]`` is the coordinate vector of ``basis[i] * basis[j]``."""
        d = self.dim
        M = np.zeros((d, d, d), dtype=np.int64)
        for i, x in enumerate(self.basis):
            for j, y in enumerate(self.basis):
                xy = self.concat(x, y)
                if xy is not None:
                    M[i, j] = self.reduce_vector(xy)
        return M

    def multiply(self, u: np.ndarray, v: np.ndarray) -> np.ndarray:
        return np.einsum("i,j,ijk->k", u, v, self.mult) % self.p

    def fingerprint(self) -> str:
        h = hashlib.sha256()
        h.update(repr((self.vertices, [(a.name, a.source, a.target) for a in self.quiver.arrows],
                       sorted((sorted(r.items())) for r in self.relations), self.p)).encode())
        return h.hexdigest()[:16]

    def __repr__(self) -> str:
        return f"BoundQuiverAlgebra(vertices={list(self.vertices)}, arrows={len(self.quiver.arrows)}, dim={self.dim}, p={self.p})"

    # -- duality ------------------------------------------------------------
    def opposite(self) -> "BoundQuiverAlgebra":
        """The opposite algebra; ``A.opposite().opposite() is A``."""
        if self._opposite is None:
            qop = self.quiver.opposite()
            rels = [{reverse_path(self.quiver, q): c for q, c in r.items()} for r in self.relations]
            op = _build(qop, rels, self.p, self.length_bound)
            op._opposite = self
            self._opposite = op
        return self._opposite

    # -- standard modules (implemented in modrep) -------------------------
    def projective(self, i):
        from .modrep import projective

        return projective(self, i)

    def injective(self, i):
        from .modrep import injective

        return injective(self, i)

    def simple(self, i):
        from .modrep import simple

        return simple(self, i)


def build_algebra(quiver: Quiver, relations=(), length_bound: Optional[int] = None, p: int = 2) -> BoundQuiverAlgebra:
    """Build kQ/I for relations given as strings/term lists or parsed dicts.

    Args:
        quiver: the quiver.
        relations: each relation a list of ``coeff*path`` terms, a string, or a
            dict path -> coefficient.
        length_bound: every path of this length must lie in the ideal.  When
            omitted it is the longest path length plus one for acyclic quivers
            and the smallest working value (at most 16) otherwise.
        p: the prime.

    Raises:
        AlgebraError: "not finite-dimensional within bound" when some path of
            length ``length_bound`` survives modulo the relations.
    """
    if p < 2 or any(p % q == 0 for q in range(2, int(p ** 0.5) + 1)):
        raise AlgebraError(f"{p} is not a prime")
    rels = []
    for r in relations:
        if isinstance(r, dict):
            parsed: Relation = {}
            for k, v in r.items():
                path = quiver.parse_path(k) if isinstance(k, str) else k
                parsed[path] = (parsed.get(path, 0) + v) % p
            rels.append({k: v for k, v in parsed.items() if v})
        else:
            rels.append(parse_relation(quiver, r, p))
    rels = [r for r in rels if r]
    max_rel = max((len(q[1]) for r in rels for q in r), default=0)
    if length_bound is not None:
        if length_bound < max_rel:
            raise AlgebraError("length_bound is shorter than a relation path")
        return _build(quiver, rels, p, length_bound)
    if quiver.is_acyclic():
        return _build(quiver, rels, p, max(quiver.longest_path_length() + 1, max_rel, 1))
    last = None
    for bound in range(max(max_rel, 1), 17):
        try:
            return _build(quiver, rels, p, bound)
        except AlgebraError as err:
            last = err
    raise last


def _build(quiver: Quiver, rels: List[Relation], p: int, N: int) -> BoundQuiverAlgebra:
    paths_N = quiver.paths_up_to(N)
    idx_N = {q: k for k, q in enumerate(paths_N)}

    def products(max_len: int, truncate: bool):
        """Vectors u*r*v; with ``truncate`` terms longer than max_len are dropped."""
        vecs = []
        for r in rels:
            lengths = [len(q[1]) for q in r]
            s = next(iter(r))[0]
            t = quiver.end(next(iter(r)))
            shortest, longest = min(lengths), max(lengths)
            for u in paths_N:
                if quiver.end(u) != s:
                    continue
                for v in paths_N:
                    if v[0] != t:
                        continue
                    extra = len(u[1]) + len(v[1])
                    if truncate and extra + shortest > max_len:
                        continue
                    if not truncate and extra + longest > max_len:
                        continue
                    vec = {}
                    for q, c in r.items():
                        w = (u[0], u[1] + q[1] + v[1])
                        if len(w[1]) <= max_len:
                            vec[w] = (vec.get(w, 0) + c) % p
                    vecs.append(vec)
        return vecs

    # every path of length N must lie in the ideal generated inside V_N
    top = [q for q in paths_N if len(q[1]) == N]
    if top:
        gens = products(N, truncate=False)
        J = la.zeros(len(gens), len(paths_N))
        for r_, vec in enumerate(gens):
            for q, c in vec.items():
                J[r_, idx_N[q]] = c
        span = J.T
        for q in top:
            e = np.zeros(len(paths_N), dtype=np.int64)
            e[idx_N[q]] = 1
            if span.shape[1] == 0 or not la.in_span(span, e, p):
                raise AlgebraError(f"not finite-dimensional within bound {N}: path "
                                   f"{quiver.path_name(q)} survives")

    # the quotient of V_{N-1} by the truncated ideal
    low = sorted([q for q in paths_N if len(q[1]) < N], key=_path_key, reverse=True)
    col = {q: k for k, q in enumerate(low)}
    gens = products(N - 1, truncate=True)
    rewrite: Dict[Path, Dict[Path, int]] = {}
    basis: List[Path]
    if gens:
        I = la.zeros(len(gens), len(low))
        for r_, vec in enumerate(gens):
            for q, c in vec.items():
                I[r_, col[q]] = c
        R, rk, piv = la.rref(I, p)
        pivset = set(piv)
        basis = [q for q in low if col[q] not in pivset]
        for i, pc in enumerate(piv):
            rewrite[low[pc]] = {low[c]: (-R[i, c]) % p for c in range(len(low))
                                if c not in pivset and R[i, c] % p}
    else:
        basis = list(low)
    basis.sort(key=_path_key)
    log.debug("built algebra of dimension %d with length bound %d", len(basis), N)
    return BoundQuiverAlgebra(quiver, rels, p, N, basis, rewrite)


def path_algebra(vertices, arrows, relations=(), p: int = 2, length_bound: Optional[int] = None) -> BoundQuiverAlgebra:
    """Convenience wrapper: ``arrows`` as ``(name, source, target)`` triples."""
    return build_algebra(Quiver(vertices, arrows), relations, length_bound=length_bound, p=p)


def linear_quiver(n: int, prefix: str = "a") -> Quiver:
    """``1 -> 2 -> ... -> n`` with arrows ``a1, a2, ...``."""
    vs = [str(i + 1) for i in range(n)]
    return Quiver(vs, [(f"{prefix}{i + 1}", vs[i], vs[i + 1]) for i in range(n - 1)])
