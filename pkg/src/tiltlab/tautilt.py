"""Support τ-tilting subcategories of mod-Λ evaluated over an indecomposable inventory.

A subcategory ``add(T_1 ⊕ ... ⊕ T_r)`` is stored as a :class:`Subcat`, the sorted
tuple of inventory indices of its indecomposables.  Everything quantified over
"all modules" (Fac, perpendicular categories, rigidity against Fac) is evaluated
over the inventory, so verdicts are only as complete as the inventory is.
"""

from __future__ import annotations

import itertools
import logging
from collections import Counter
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from . import linalg as la
from .homcore import ar_translate, ext_dim, projective_dimension
from .inventory import Inventory, decompose
from .modrep import (FdModule, ModMorphism, block_morphism, cokernel, compose, direct_sum, factors_through,
                     hom_basis, hom_dim, injective, k_dual, kernel, projective)

log = logging.getLogger(__name__)

CONTRAVARIANT_FINITENESS = "automatic (finite add)"
SUBSET_LIMIT = 24


@dataclass(frozen=True)
class Subcat:
    """``add`` of a set of inventory members."""

    inventory: Inventory = field(compare=False, hash=False, repr=False)
    members: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "members", tuple(sorted(set(self.members))))

    @classmethod
    def from_names(cls, inventory: Inventory, names: Iterable[str]) -> "Subcat":
        return cls(inventory, tuple(inventory.index(n) for n in names))

    @property
    def names(self) -> List[str]:
        return [self.inventory.names[k] for k in self.members]

    @property
    def modules(self) -> List[FdModule]:
        return [self.inventory[k] for k in self.members]

    def __contains__(self, k: int) -> bool:
        return k in self.members

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def as_set(self) -> FrozenSet[int]:
        return frozenset(self.members)

    def sum_module(self) -> FdModule:
        S, _, _ = self.inventory.direct_sum(self.members)
        return S

    def __repr__(self) -> str:
        return "add(" + " ⊕ ".join(self.names) + ")" if self.members else "add(0)"


class Catalog:
    """Cached Hom/Ext data and derived subcategories over one inventory.

    Args:
        inventory: the indecomposables standing in for mod-Λ.
        complete: whether the caller asserts the inventory lists every
            indecomposable; recorded in every report.
    """

    def __init__(self, inventory: Inventory, complete: bool = True):
        self.inventory = inventory
        self.algebra = inventory.algebra
        self.complete = complete
        self.n = len(inventory)
        self._hom: Dict[Tuple[int, int], int] = {}
        self._ext: Dict[Tuple[int, int], int] = {}
        self._tau: Dict[int, FdModule] = {}
        self._images: Dict[Tuple[int, int], List[np.ndarray]] = {}
        self._kernels: Dict[Tuple[int, int], List[np.ndarray]] = {}
        self.warnings: List[str] = []
        self._check_standard_modules()

    # -- basic data -------------------------------------------------------
    def _check_standard_modules(self) -> None:
        A = self.algebra
        for i in range(A.n):
            if self.inventory.identify(projective(A, i)) is None:
                self.warnings.append(f"projective P{A.quiver.vertices[i]} is missing from the inventory")
            if self.inventory.identify(injective(A, i)) is None:
                self.warnings.append(f"injective I{A.quiver.vertices[i]} is missing from the inventory")
        for w in self.warnings:
            log.warning(w)

    def module(self, k: int) -> FdModule:
        return self.inventory[k]

    def subcat(self, members: Iterable[int]) -> Subcat:
        return Subcat(self.inventory, tuple(members))

    def all(self) -> Subcat:
        return self.subcat(range(self.n))

    def hom(self, i: int, j: int) -> int:
        key = (i, j)
        if key not in self._hom:
            self._hom[key] = hom_dim(self.inventory[i], self.inventory[j])
        return self._hom[key]

    def ext1(self, i: int, j: int) -> int:
        key = (i, j)
        if key not in self._ext:
            self._ext[key] = ext_dim(1, self.inventory[i], self.inventory[j])
        return self._ext[key]

    def tau(self, i: int) -> FdModule:
        if i not in self._tau:
            self._tau[i] = ar_translate(self.inventory[i])
        return self._tau[i]

    def projective_indices(self) -> List[int]:
        A = self.algebra
        return [k for k in (self.inventory.identify(projective(A, i)) for i in range(A.n)) if k is not None]

    def injective_indices(self) -> List[int]:
        A = self.algebra
        return [k for k in (self.inventory.identify(injective(A, i)) for i in range(A.n)) if k is not None]

    # -- Fac and Sub ------------------------------------------------------
    def _trace_spaces(self, i: int, x: int) -> List[np.ndarray]:
        key = (i, x)
        if key not in self._images:
            self._images[key] = trace_spaces([self.inventory[i]], self.inventory[x])
        return self._images[key]

    def _reject_rows(self, x: int, i: int) -> List[np.ndarray]:
        key = (x, i)
        if key not in self._kernels:
            X = self.inventory[x]
            maps = hom_basis(X, self.inventory[i])
            rows = []
            for v in range(self.algebra.n):
                blocks = [f.blocks[v] for f in maps if f.blocks[v].size]
                rows.append(np.concatenate(blocks, axis=0) if blocks else la.zeros(0, X.dims[v]))
            self._kernels[key] = rows
        return self._kernels[key]

    def in_fac(self, x: int, S: Iterable[int]) -> bool:
        X = self.inventory[x]
        S = list(S)
        for v in range(self.algebra.n):
            if X.dims[v] == 0:
                continue
            spaces = [self._trace_spaces(i, x)[v] for i in S]
            if la.sum_spaces(spaces, X.dims[v], X.p).shape[1] < X.dims[v]:
                return False
        return True

    def in_sub(self, x: int, S: Iterable[int]) -> bool:
        X = self.inventory[x]
        S = list(S)
        for v in range(self.algebra.n):
            if X.dims[v] == 0:
                continue
            rows = [self._reject_rows(x, i)[v] for i in S]
            if la.intersect_kernels(rows, X.dims[v], X.p).shape[1] > 0:
                return False
        return True

    def fac(self, S: Iterable[int]) -> Subcat:
        S = list(S)
        return self.subcat(x for x in range(self.n) if self.in_fac(x, S))

    def sub(self, S: Iterable[int]) -> Subcat:
        S = list(S)
        return self.subcat(x for x in range(self.n) if self.in_sub(x, S))

    def right_perp(self, S: Iterable[int], degree: int) -> Subcat:
        """``S^⊥n = {X : Ext^n(S, X) = 0}`` for ``n`` in {0, 1}."""
        S = list(S)
        rel = self.hom if degree == 0 else self.ext1
        return self.subcat(x for x in range(self.n) if all(rel(i, x) == 0 for i in S))

    def left_perp(self, S: Iterable[int], degree: int) -> Subcat:
        """``⊥n S = {X : Ext^n(X, S) = 0}`` for ``n`` in {0, 1}."""
        S = list(S)
        rel = self.hom if degree == 0 else self.ext1
        return self.subcat(x for x in range(self.n) if all(rel(x, i) == 0 for i in S))

    def in_add(self, X: FdModule, S: Iterable[int]) -> bool:
        """Whether every indecomposable summand of ``X`` is (isomorphic to) a member of ``S``."""
        if X.total_dim == 0:
            return True
        try:
            mult = self.inventory.multiplicities(X)
        except LookupError:
            return False
        return set(mult) <= set(S)

    def fingerprint(self) -> str:
        return self.inventory.fingerprint()


def trace_spaces(gens: Sequence[FdModule], X: FdModule) -> List[np.ndarray]:
    """Vertex-wise span of the images of all maps from the generators into ``X``."""
    out = []
    maps = [f for T in gens for f in hom_basis(T, X)]
    for v in range(X.algebra.n):
        imgs = [f.blocks[v] for f in maps if f.blocks[v].size]
        out.append(la.sum_spaces(imgs, X.dims[v], X.p))
    return out


def fac_membership(X: FdModule, gens: Sequence[FdModule]) -> bool:
    """True iff the evaluation map from copies of the generators onto ``X`` is surjective."""
    return all(s.shape[1] == d for s, d in zip(trace_spaces(gens, X), X.dims))


def sub_membership(X: FdModule, gens: Sequence[FdModule]) -> bool:
    """True iff the maps from ``X`` into the generators are jointly injective."""
    maps = [f for T in gens for f in hom_basis(X, T)]
    for v in range(X.algebra.n):
        if X.dims[v] == 0:
            continue
        rows = [f.blocks[v] for f in maps if f.blocks[v].size]
        if la.intersect_kernels(rows, X.dims[v], X.p).shape[1] > 0:
            return False
    return True


# ---------------------------------------------------------------------------
# approximations


@dataclass
class Approximation:
    """A map to (left) or from (right) a direct sum of labelled inventory members.

    ``summands[k]`` is the inventory index of the k-th direct summand of the
    target (left) or source (right); ``components[k]`` the matching component map.
    """

    map: ModMorphism
    summands: List[int]
    components: List[ModMorphism]
    side: str = "left"

    @property
    def module(self) -> FdModule:
        """The add(S) end of the map: target for left, source for right approximations."""
        return self.map.target if self.side == "left" else self.map.source

    def multiset(self) -> Counter:
        return Counter(self.summands)


def _assemble_left(X: FdModule, inventory: Inventory, labelled: List[Tuple[int, ModMorphism]]) -> Approximation:
    A = X.algebra
    if not labelled:
        Z, _, _ = direct_sum([], A)
        return Approximation(ModMorphism(X, Z, [la.zeros(0, d) for d in X.dims]), [], [], "left")
    targets = [inventory[k] for k, _ in labelled]
    f = block_morphism([X], targets, [[h] for _, h in labelled])
    return Approximation(f, [k for k, _ in labelled], [h for _, h in labelled], "left")


def _assemble_right(X: FdModule, inventory: Inventory, labelled: List[Tuple[int, ModMorphism]]) -> Approximation:
    A = X.algebra
    if not labelled:
        Z, _, _ = direct_sum([], A)
        return Approximation(ModMorphism(Z, X, [la.zeros(d, 0) for d in X.dims]), [], [], "right")
    sources = [inventory[k] for k, _ in labelled]
    g = block_morphism(sources, [X], [[h for _, h in labelled]])
    return Approximation(g, [k for k, _ in labelled], [h for _, h in labelled], "right")


def gathered_left_approximation(X: FdModule, S: Subcat) -> Approximation:
    """``X -> ⊕ T_i`` with one copy of ``T_i`` per element of a Hom(X, T_i) basis."""
    labelled = [(k, h) for k in S for h in hom_basis(X, S.inventory[k])]
    return _assemble_left(X, S.inventory, labelled)


def gathered_right_approximation(S: Subcat, X: FdModule) -> Approximation:
    """``⊕ T_i -> X`` with one copy of ``T_i`` per element of a Hom(T_i, X) basis."""
    labelled = [(k, g) for k in S for g in hom_basis(S.inventory[k], X)]
    return _assemble_right(X, S.inventory, labelled)


def _left_redundant(X: FdModule, inventory: Inventory, labelled, k: int) -> bool:
    rest = labelled[:k] + labelled[k + 1:]
    h = labelled[k][1]
    if h.is_zero():
        return True
    if not rest:
        return False
    return factors_through(h, _assemble_left(X, inventory, rest).map, on_left=True) is not None


def _right_redundant(X: FdModule, inventory: Inventory, labelled, k: int) -> bool:
    rest = labelled[:k] + labelled[k + 1:]
    g = labelled[k][1]
    if g.is_zero():
        return True
    if not rest:
        return False
    return factors_through(g, _assemble_right(X, inventory, rest).map, on_left=False) is not None


def minimal_left_approximation(X: FdModule, S: Subcat) -> Approximation:
    """Left-minimal left add(S)-approximation.

    Components of the gathered approximation are dropped while one of them
    factors through the remaining ones.  When no component factors through the
    others the map is left minimal: an endomorphism ``φ`` with ``φ f = f`` that is
    not invertible would give an entry of ``1 - φ`` that is an isomorphism
    between summands, and the corresponding row expresses one component through
    the others.
    """
    inv = S.inventory
    labelled = [(k, h) for k in S for h in hom_basis(X, inv[k])]
    changed = True
    while changed:
        changed = False
        for idx in range(len(labelled) - 1, -1, -1):
            if _left_redundant(X, inv, labelled, idx):
                del labelled[idx]
                changed = True
                break
    return _assemble_left(X, inv, labelled)


def minimal_right_approximation(S: Subcat, X: FdModule) -> Approximation:
    """Right-minimal right add(S)-approximation (dual of :func:`minimal_left_approximation`)."""
    inv = S.inventory
    labelled = [(k, g) for k in S for g in hom_basis(inv[k], X)]
    changed = True
    while changed:
        changed = False
        for idx in range(len(labelled) - 1, -1, -1):
            if _right_redundant(X, inv, labelled, idx):
                del labelled[idx]
                changed = True
                break
    return _assemble_right(X, inv, labelled)


def is_left_approximation(f: ModMorphism, gens: Sequence[FdModule]) -> bool:
    """Every map from ``f.source`` into a generator factors through ``f``."""
    for T in gens:
        for h in hom_basis(f.source, T):
            if factors_through(h, f, on_left=True) is None:
                return False
    return True


def is_right_approximation(g: ModMorphism, gens: Sequence[FdModule]) -> bool:
    """Every map from a generator into ``g.target`` factors through ``g``."""
    for T in gens:
        for h in hom_basis(T, g.target):
            if factors_through(h, g, on_left=False) is None:
                return False
    return True


def right_add_approximation(S: Subcat, X: FdModule, minimal: bool = False) -> Approximation:
    return minimal_right_approximation(S, X) if minimal else gathered_right_approximation(S, X)


def left_add_approximation(X: FdModule, S: Subcat, minimal: bool = False) -> Approximation:
    return minimal_left_approximation(X, S) if minimal else gathered_left_approximation(X, S)


# ---------------------------------------------------------------------------
# support τ-tilting


@dataclass
class SequenceWitness:
    """``P -> T0 -> T1 -> 0`` for one indecomposable projective (or its dual)."""

    vertex: str
    T0: List[str]
    T1: List[str]
    approximation: Approximation
    certified_approximation: bool
    cokernel_in_add: bool
    nonzero: bool

    @property
    def ok(self) -> bool:
        return self.certified_approximation and self.cokernel_in_add

    def to_json(self) -> dict:
        return {
            "vertex": self.vertex,
            "T0": self.T0,
            "T1": self.T1,
            "f_blocks": [B.tolist() for B in self.approximation.map.blocks],
            "left_approximation": self.certified_approximation,
            "cokernel_in_add": self.cokernel_in_add,
            "nonzero": self.nonzero,
        }


@dataclass
class STiltReport:
    subcat: List[str]
    rigid: bool
    rigidity_witness: Optional[Tuple[str, str]]
    sequences: List[SequenceWitness]
    count_rigid: bool
    count_matches: bool
    contravariant_finiteness: str = CONTRAVARIANT_FINITENESS
    inventory_complete: bool = True
    inventory_hash: str = ""
    warnings: List[str] = field(default_factory=list)

    @property
    def weak(self) -> bool:
        return self.rigid and all(s.ok for s in self.sequences)

    @property
    def support(self) -> bool:
        # contravariant finiteness of add of finitely many modules always holds
        return self.weak

    @property
    def tau_tilting(self) -> bool:
        return self.support and all(s.nonzero for s in self.sequences)

    @property
    def count_support(self) -> bool:
        return self.count_rigid and self.count_matches

    def verdict(self) -> dict:
        return {
            "weak_support_tau_tilting": self.weak,
            "support_tau_tilting": self.support,
            "tau_tilting": self.tau_tilting,
            "rigid": self.rigid,
            "rank_count_cross_check": self.count_support,
            "contravariantly_finite": self.contravariant_finiteness,
        }

    def to_json(self) -> dict:
        return {
            "subcat": self.subcat,
            "verdict": self.verdict(),
            "rigidity_witness": list(self.rigidity_witness) if self.rigidity_witness else None,
            "witnesses": {s.vertex: s.to_json() for s in self.sequences},
            "inventory_complete": self.inventory_complete,
            "inventory_hash": self.inventory_hash,
            "warnings": self.warnings,
        }


def rigidity_violation(cat: Catalog, S: Subcat) -> Optional[Tuple[int, int]]:
    """First pair ``(T, X)`` with ``T`` in S, ``X`` in Fac(S) and Ext¹(T, X) ≠ 0."""
    facS = cat.fac(S)
    for x in facS:
        for t in S:
            if cat.ext1(t, x):
                return (t, x)
    return None


def is_tau_rigid(cat: Catalog, S: Iterable[int]) -> bool:
    """``Hom(M, τM) = 0`` for ``M`` the sum of the members."""
    S = list(S)
    for j in S:
        tj = cat.tau(j)
        if tj.total_dim == 0:
            continue
        for i in S:
            if hom_dim(cat.module(i), tj):
                return False
    return True


def support_vertices(cat: Catalog, S: Iterable[int]) -> List[int]:
    dims = np.zeros(cat.algebra.n, dtype=np.int64)
    for k in S:
        dims += np.asarray(cat.module(k).dims)
    return [i for i in range(cat.algebra.n) if dims[i]]


def projective_sequence(cat: Catalog, S: Subcat, vertex: int) -> SequenceWitness:
    A = cat.algebra
    P = projective(A, vertex)
    approx = gathered_left_approximation(P, S)
    certified = is_left_approximation(approx.map, S.modules)
    C, _ = cokernel(approx.map)
    try:
        mult = cat.inventory.multiplicities(C) if C.total_dim else Counter()
        in_add = set(mult) <= set(S.members)
    except LookupError:
        mult, in_add = Counter(), False
    names = cat.inventory.names
    return SequenceWitness(
        vertex=A.quiver.vertices[vertex],
        T0=[names[k] for k in approx.summands],
        T1=[names[k] for k in sorted(mult.elements())],
        approximation=approx,
        certified_approximation=certified,
        cokernel_in_add=in_add,
        nonzero=not approx.map.is_zero(),
    )


def is_support_tau_tilting(cat: Catalog, S: Subcat) -> STiltReport:
    """Check both clauses of the definition over the inventory plus the rank-count cross-check."""
    viol = rigidity_violation(cat, S)
    names = cat.inventory.names
    seqs = [projective_sequence(cat, S, v) for v in range(cat.algebra.n)]
    count_rigid = is_tau_rigid(cat, S)
    count_matches = len(S) == len(support_vertices(cat, S))
    rep = STiltReport(
        subcat=S.names,
        rigid=viol is None,
        rigidity_witness=(names[viol[0]], names[viol[1]]) if viol else None,
        sequences=seqs,
        count_rigid=count_rigid,
        count_matches=count_matches,
        inventory_complete=cat.complete,
        inventory_hash=cat.fingerprint(),
        warnings=list(cat.warnings) + ([] if cat.complete else ["inventory completeness not asserted"]),
    )
    if rep.support != rep.count_support:
        rep.warnings.append("definition verdict disagrees with the rank-count criterion (tau-rigid with as many summands as support vertices)")
        log.warning("definition verdict disagrees with the rank-count criterion (tau-rigid with as many summands as support vertices) for %s", S)
    return rep


def recheck_witnesses(cat: Catalog, S: Subcat, data: dict) -> Dict[str, bool]:
    """Re-verify serialized projective sequences from their morphism matrices alone.

    For every vertex the map ``P -> ⊕ T0`` is rebuilt from ``f_blocks`` and
    checked to be a homomorphism, a left add(S)-approximation and to have its
    cokernel in add(S).
    """
    A = cat.algebra
    out = {}
    for v, w in data.get("witnesses", {}).items():
        P = projective(A, A.quiver.vertex(v))
        T0, _, _ = direct_sum([cat.module(cat.inventory.index(n)) for n in w["T0"]], A)
        try:
            f = ModMorphism(P, T0, [np.array(B, dtype=np.int64) for B in w["f_blocks"]], check=True)
        except Exception:
            out[v] = False
            continue
        C, _ = cokernel(f)
        try:
            in_add = set(cat.inventory.multiplicities(C)) <= set(S.members) if C.total_dim else True
        except LookupError:
            in_add = False
        out[v] = is_left_approximation(f, S.modules) and in_add
    return out


def enumerate_support_tau_tilting(cat: Catalog, limit: int = SUBSET_LIMIT) -> List[Subcat]:
    """All subsets of the inventory that pass :func:`is_support_tau_tilting`.

    Subsets are generated among pairwise τ-rigid members only (rigidity is a
    necessary condition), then each candidate is checked against the definition.

    Raises:
        ValueError: the inventory has more than ``limit`` members.
    """
    n = cat.n
    if n > limit:
        raise ValueError(f"subset budget exceeded: {n} indecomposables (limit {limit})")
    ok_pair = np.zeros((n, n), dtype=bool)
    for i in range(n):
        for j in range(n):
            ok_pair[i, j] = is_tau_rigid(cat, [i, j]) if i <= j else ok_pair[j, i]
    out = []
    for mask in range(1 << n):
        S = [i for i in range(n) if mask >> i & 1]
        if any(not ok_pair[i, j] for i in S for j in S):
            continue
        sub = cat.subcat(S)
        if is_support_tau_tilting(cat, sub).support:
            out.append(sub)
    out.sort(key=lambda s: (len(s), s.members))
    return out


def enumerate_by_rank_count(cat: Catalog) -> List[Subcat]:
    """Support τ-tilting sets by the τ-rigid plus ``|M| = |supp M|`` criterion."""
    n = cat.n
    out = []
    for mask in range(1 << n):
        S = [i for i in range(n) if mask >> i & 1]
        if len(S) == len(support_vertices(cat, S)) and is_tau_rigid(cat, S):
            out.append(cat.subcat(S))
    out.sort(key=lambda s: (len(s), s.members))
    return out


# ---------------------------------------------------------------------------
# support τ⁻-tilting


def dual_inventory(inventory: Inventory) -> Inventory:
    """The k-duals of the members, as an inventory of the opposite algebra (names kept)."""
    op = inventory.algebra.opposite()
    return Inventory(op, [k_dual(M) for M in inventory], inventory.dim_bound)


@dataclass
class STiltMinusReport:
    subcat: List[str]
    dual: STiltReport
    rigid: bool
    rigidity_witness: Optional[Tuple[str, str]]
    sequences: List[dict]

    @property
    def direct_support(self) -> bool:
        return self.rigid and all(s["right_approximation"] and s["kernel_in_add"] for s in self.sequences)

    @property
    def support(self) -> bool:
        return self.dual.support

    @property
    def tau_minus_tilting(self) -> bool:
        return self.dual.tau_tilting

    @property
    def consistent(self) -> bool:
        return self.direct_support == self.dual.support

    def to_json(self) -> dict:
        return {
            "subcat": self.subcat,
            "verdict": {
                "support_tau_minus_tilting": self.support,
                "tau_minus_tilting": self.tau_minus_tilting,
                "direct_check": self.direct_support,
                "consistent": self.consistent,
                "covariantly_finite": CONTRAVARIANT_FINITENESS,
            },
            "rigidity_witness": list(self.rigidity_witness) if self.rigidity_witness else None,
            "witnesses": {s["vertex"]: {k: v for k, v in s.items() if k != "vertex"} for s in self.sequences},
            "dual_report": self.dual.to_json(),
        }


def is_support_tau_minus_tilting(cat: Catalog, U: Subcat, dual_cat: Optional[Catalog] = None) -> STiltMinusReport:
    """Support τ⁻-tilting check via the dual inventory, plus a direct check.

    The direct check verifies Ext¹(Sub U, U) = 0 over the inventory and, for each
    indecomposable injective ``I``, that the gathered right add(U)-approximation
    ``U¹ -> I`` has kernel in add(U).
    """
    if dual_cat is None:
        dual_cat = Catalog(dual_inventory(cat.inventory), cat.complete)
    dual_sub = Subcat.from_names(dual_cat.inventory, U.names)
    dual_rep = is_support_tau_tilting(dual_cat, dual_sub)
    names = cat.inventory.names
    viol = None
    for x in cat.sub(U):
        for u in U:
            if cat.ext1(x, u):
                viol = (names[x], names[u])
                break
        if viol:
            break
    seqs = []
    A = cat.algebra
    for v in range(A.n):
        I = injective(A, v)
        approx = gathered_right_approximation(U, I)
        certified = is_right_approximation(approx.map, U.modules)
        K, _ = kernel(approx.map)
        try:
            mult = cat.inventory.multiplicities(K) if K.total_dim else Counter()
            in_add = set(mult) <= set(U.members)
        except LookupError:
            mult, in_add = Counter(), False
        seqs.append({
            "vertex": A.quiver.vertices[v],
            "U0": [names[k] for k in sorted(mult.elements())],
            "U1": [names[k] for k in approx.summands],
            "right_approximation": certified,
            "kernel_in_add": in_add,
            "nonzero": not approx.map.is_zero(),
        })
    return STiltMinusReport(U.names, dual_rep, viol is None, viol, seqs)


# ---------------------------------------------------------------------------
# tilting


@dataclass
class TiltingReport:
    subcat: List[str]
    n: int
    ext_vanishing: bool
    ext_witness: Optional[Tuple[str, str, int]]
    projective_dimension_ok: bool
    pd_values: Dict[str, Optional[int]]
    coresolutions: Dict[str, Optional[List[List[str]]]]

    @property
    def tilting(self) -> bool:
        return self.ext_vanishing and self.projective_dimension_ok and all(
            c is not None for c in self.coresolutions.values())

    def to_json(self) -> dict:
        return {
            "subcat": self.subcat,
            "n": self.n,
            "verdict": {"tilting": self.tilting, "ext_vanishing": self.ext_vanishing,
                        "projective_dimension": self.projective_dimension_ok,
                        "contravariantly_finite": CONTRAVARIANT_FINITENESS},
            "ext_witness": list(self.ext_witness) if self.ext_witness else None,
            "projective_dimensions": self.pd_values,
            "coresolutions": self.coresolutions,
        }


def add_coresolution(cat: Catalog, X: FdModule, S: Subcat, length: int) -> Optional[List[List[str]]]:
    """``0 -> X -> T^0 -> ... -> T^m -> 0`` with ``m <= length`` built from minimal left approximations.

    Returns the terms (as member-name lists) or ``None`` when some approximation
    is not injective or the process does not end inside add(S) within ``length``.
    """
    names = cat.inventory.names
    terms: List[List[str]] = []
    cur = X
    for step in range(length + 1):
        if cat.in_add(cur, S):
            mult = cat.inventory.multiplicities(cur) if cur.total_dim else Counter()
            terms.append([names[k] for k in sorted(mult.elements())])
            return terms
        if step == length:
            return None
        approx = minimal_left_approximation(cur, S)
        if not approx.map.is_injective():
            return None
        terms.append([names[k] for k in approx.summands])
        cur, _ = cokernel(approx.map)
    return None


def is_n_tilting(cat: Catalog, S: Subcat, n: int = 1) -> TiltingReport:
    """n-tilting test: Ext^{≥1} vanishing on S, pd ≤ n and length-n add(S) coresolutions of projectives."""
    names = cat.inventory.names
    pds = {names[k]: projective_dimension(cat.module(k), bound=max(n, 1) + 8) for k in S}
    pd_ok = all(v is not None and v <= n for v in pds.values())
    witness = None
    for a in S:
        top = pds[names[a]]
        top = top if top is not None else n + 8
        for b in S:
            for i in range(1, max(top, 1) + 1):
                if ext_dim(i, cat.module(a), cat.module(b)):
                    witness = (names[a], names[b], i)
                    break
            if witness:
                break
        if witness:
            break
    cores = {}
    for v in range(cat.algebra.n):
        cores[cat.algebra.quiver.vertices[v]] = add_coresolution(cat, projective(cat.algebra, v), S, n)
    return TiltingReport(S.names, n, witness is None, witness, pd_ok, pds, cores)
