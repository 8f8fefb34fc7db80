"""Representations of a finite acyclic quiver with values in mod-Λ.

A :class:`QRep` assigns a Λ-module to every vertex of ``Q`` and a Λ-morphism
to every arrow.  Homological questions are answered by converting to modules
over the tensor algebra ``Λ ⊗ kQ`` (one Hom/Ext engine), while the functors
``e_i`` (evaluation), ``e_i^λ`` (left adjoint) and ``e_i^ρ`` (right adjoint) are
explicit constructions used to build objects.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from . import linalg as la
from .algcore import BoundQuiverAlgebra, Path, Quiver, build_algebra
from .homcore import ext_dim
from .inventory import BudgetError, Inventory, decompose, enumerate_indecomposables
from .modrep import (FdModule, ModMorphism, compose, direct_sum, hom_basis, hom_dim, identity_morphism, injective,
                     kernel, projective, zero_morphism)
from .tautilt import (Catalog, STiltReport, Subcat, TiltingReport, is_n_tilting, is_support_tau_tilting)

log = logging.getLogger(__name__)


class HypothesisError(ValueError):
    """A lifting hypothesis fails; ``witness`` names the violation."""

    def __init__(self, message: str, witness: Optional[dict] = None):
        super().__init__(message)
        self.witness = witness or {}


@dataclass
class QRep:
    """A representation of ``quiver`` in mod-``base``.

    ``summands`` optionally records, per Q-vertex, the path-indexed direct sum
    structure ``(paths, inclusions, projections)`` of a value built by an
    e-functor.
    """

    base: BoundQuiverAlgebra
    quiver: Quiver
    values: List[FdModule]
    maps: List[ModMorphism]
    summands: Dict[int, tuple] = field(default_factory=dict, repr=False)

    def __post_init__(self):
        if len(self.values) != self.quiver.n or len(self.maps) != len(self.quiver.arrows):
            raise ValueError("values/maps do not match the quiver")
        for k, a in enumerate(self.quiver.arrows):
            f = self.maps[k]
            if f.source.dims != self.values[a.source].dims or f.target.dims != self.values[a.target].dims:
                raise ValueError(f"map on arrow {a.name} has the wrong shape")
            if not f.is_homomorphism():
                raise ValueError(f"map on arrow {a.name} is not a Λ-homomorphism")

    @property
    def total_dim(self) -> int:
        return sum(X.total_dim for X in self.values)

    def path_map(self, path: Path) -> ModMorphism:
        """Structure map ``X_path`` along a path of ``Q`` (identity for a trivial path)."""
        start, arrows = path
        f = identity_morphism(self.values[start])
        for k in arrows:
            f = compose(self.maps[k], f)
        return f


def _copies(A: FdModule, n: int):
    return direct_sum([A] * n, A.algebra)


def _grid(src, tgt, entry) -> ModMorphism:
    """Morphism between path-indexed sums; ``entry(s, t)`` gives the component or ``None``."""
    S, incs_s, projs_s = src
    T, incs_t, projs_t = tgt
    f = zero_morphism(S, T)
    for s, ps in enumerate(projs_s):
        for t, it in enumerate(incs_t):
            c = entry(s, t)
            if c is not None:
                f = f + compose(it, compose(c, ps))
    return f


def _check_vertex(Q: Quiver, i) -> int:
    try:
        return Q.vertex(i)
    except Exception as exc:
        raise ValueError(f"unknown vertex {i!r}") from exc


def e_i(X: QRep, i) -> FdModule:
    """Evaluation at vertex ``i``."""
    return X.values[_check_vertex(X.quiver, i)]


def e_i_lambda(A: FdModule, i, Q: Quiver) -> QRep:
    """Left adjoint of evaluation: ``e_i^λ(A)_j = ⊕_{Q(i,j)} A`` with inclusion structure maps."""
    i = _check_vertex(Q, i)
    paths = [Q.paths_between(i, j) for j in range(Q.n)]
    sums = [_copies(A, len(ps)) for ps in paths]
    maps = []
    for k, a in enumerate(Q.arrows):
        pos = {p: t for t, p in enumerate(paths[a.target])}
        src = paths[a.source]
        ident = identity_morphism(A)
        maps.append(_grid(sums[a.source], sums[a.target],
                          lambda s, t: ident if pos[(src[s][0], src[s][1] + (k,))] == t else None))
    return QRep(A.algebra, Q, [S[0] for S in sums], maps,
                {j: (paths[j], sums[j][1], sums[j][2]) for j in range(Q.n)})


def e_i_rho(A: FdModule, i, Q: Quiver) -> QRep:
    """Right adjoint of evaluation: ``e_i^ρ(A)_j = ⊕_{Q(j,i)} A`` with projection structure maps."""
    i = _check_vertex(Q, i)
    paths = [Q.paths_between(j, i) for j in range(Q.n)]
    sums = [_copies(A, len(ps)) for ps in paths]
    maps = []
    for k, a in enumerate(Q.arrows):
        src = {p: s for s, p in enumerate(paths[a.source])}
        tgt = paths[a.target]
        ident = identity_morphism(A)
        # the summand indexed by q ∈ Q(t(a), i) receives the summand indexed by a·q
        lookup = {t: src.get((a.source, (k,) + q[1])) for t, q in enumerate(tgt)}
        maps.append(_grid(sums[a.source], sums[a.target], lambda s, t: ident if lookup[t] == s else None))
    return QRep(A.algebra, Q, [S[0] for S in sums], maps,
                {j: (paths[j], sums[j][1], sums[j][2]) for j in range(Q.n)})


# ---------------------------------------------------------------------------
# tensor algebra


class TensorAlgebra:
    """``Λ ⊗ kQ`` as a bound quiver algebra on the vertex set ``Q₀(Λ) × Q₀(Q)``.

    Arrows are the Λ-arrows copied at every Q-vertex (``a@i``) and the Q-arrows
    copied at every Λ-vertex (``α^v``); relations are the Λ-relations at every
    Q-vertex plus the commutativity squares.
    """

    def __init__(self, base: BoundQuiverAlgebra, Q: Quiver):
        if not Q.is_acyclic():
            raise ValueError("the quiver Q must be acyclic")
        self.base, self.Q = base, Q
        L = base.quiver
        nl = L.n
        short = all(len(v) == 1 for v in L.vertices + Q.vertices)
        sep = "" if short else "."
        names = [f"{L.vertices[v]}{sep}{Q.vertices[i]}" for i in range(Q.n) for v in range(nl)]
        arrows, self._l_arrow, self._q_arrow = [], {}, {}
        for i in range(Q.n):
            for k, a in enumerate(L.arrows):
                self._l_arrow[(k, i)] = len(arrows)
                arrows.append((f"{a.name}@{Q.vertices[i]}", names[self.vertex(a.source, i)], names[self.vertex(a.target, i)]))
        for v in range(nl):
            for k, a in enumerate(Q.arrows):
                self._q_arrow[(k, v)] = len(arrows)
                arrows.append((f"{a.name}^{L.vertices[v]}", names[self.vertex(v, a.source)], names[self.vertex(v, a.target)]))
        quiver = Quiver(names, arrows)
        p = base.p
        rels = []
        for i in range(Q.n):
            for r in base.relations:
                rels.append({(self.vertex(start, i), tuple(self._l_arrow[(k, i)] for k in arr)): c
                             for (start, arr), c in r.items()})
        for ka, a in enumerate(L.arrows):
            for kb, b in enumerate(Q.arrows):
                lhs = (self.vertex(a.source, b.source), (self._l_arrow[(ka, b.source)], self._q_arrow[(kb, a.target)]))
                rhs = (self.vertex(a.source, b.source), (self._q_arrow[(kb, a.source)], self._l_arrow[(ka, b.target)]))
                rels.append({lhs: 1, rhs: p - 1})
        self.algebra = build_algebra(quiver, rels, p=p)

    def vertex(self, v: int, i: int) -> int:
        return i * self.base.n + v

    def to_module(self, X: QRep, name: Optional[str] = None) -> FdModule:
        T = self.algebra
        dims = [0] * T.n
        for i in range(self.Q.n):
            for v in range(self.base.n):
                dims[self.vertex(v, i)] = X.values[i].dims[v]
        action = [None] * len(T.quiver.arrows)
        for (k, i), idx in self._l_arrow.items():
            action[idx] = X.values[i].action[k]
        for (k, v), idx in self._q_arrow.items():
            action[idx] = X.maps[k].blocks[v]
        return FdModule(T, dims, action, name=name)

    def from_module(self, M: FdModule) -> QRep:
        L = self.base
        values = []
        for i in range(self.Q.n):
            dims = [M.dims[self.vertex(v, i)] for v in range(L.n)]
            values.append(FdModule(L, dims, [M.action[self._l_arrow[(k, i)]] for k in range(len(L.quiver.arrows))]))
        maps = []
        for k, a in enumerate(self.Q.arrows):
            maps.append(ModMorphism(values[a.source], values[a.target],
                                    [M.action[self._q_arrow[(k, v)]] for v in range(L.n)]))
        return QRep(L, self.Q, values, maps)

    def to_morphism(self, X: FdModule, Y: FdModule, components: Sequence[ModMorphism]) -> ModMorphism:
        """Tensor-level morphism from per-Q-vertex Λ-morphisms ``components[i]: X_i -> Y_i``."""
        blocks = [None] * self.algebra.n
        for i, f in enumerate(components):
            for v in range(self.base.n):
                blocks[self.vertex(v, i)] = f.blocks[v]
        return ModMorphism(X, Y, blocks)

    def e_lambda(self, A: FdModule, i) -> FdModule:
        return self.to_module(e_i_lambda(A, i, self.Q))

    def e_rho(self, A: FdModule, i) -> FdModule:
        return self.to_module(e_i_rho(A, i, self.Q))


# ---------------------------------------------------------------------------
# adjunctions and the standard sequence


def adjunction_dims(T: TensorAlgebra, A: FdModule, X: QRep, i, degree: int = 0) -> Dict[str, Tuple[int, int]]:
    """Both sides of the adjunction identities in Hom (``degree=0``) or Ext^degree."""
    i = _check_vertex(T.Q, i)
    Xm = T.to_module(X)
    lam, rho = T.e_lambda(A, i), T.e_rho(A, i)
    Xi = X.values[i]
    if degree == 0:
        return {"left": (hom_dim(lam, Xm), hom_dim(A, Xi)), "right": (hom_dim(Xm, rho), hom_dim(Xi, A))}
    return {"left": (ext_dim(degree, lam, Xm), ext_dim(degree, A, Xi)),
            "right": (ext_dim(degree, Xm, rho), ext_dim(degree, Xi, A))}


@dataclass
class StandardSequence:
    """``0 -> ⊕_{α:r→l} e_l^λ(X_r) --iota--> ⊕_r e_r^λ(X_r) --eps--> X -> 0`` at tensor level."""

    kernel_term: FdModule
    middle: FdModule
    end: FdModule
    iota: ModMorphism
    eps: ModMorphism

    @property
    def exact(self) -> bool:
        dims_ok = all(m == k + e for m, k, e in zip(self.middle.dims, self.kernel_term.dims, self.end.dims))
        return (self.iota.is_injective() and self.eps.is_surjective()
                and compose(self.eps, self.iota).is_zero() and dims_ok)


def standard_sequence(T: TensorAlgebra, X: QRep) -> StandardSequence:
    Q, L = T.Q, T.base
    mids = [e_i_lambda(X.values[r], r, Q) for r in range(Q.n)]
    kers = [e_i_lambda(X.values[a.source], a.target, Q) for a in Q.arrows]
    Xm = T.to_module(X)
    mid_mods = [T.to_module(M) for M in mids]
    ker_mods = [T.to_module(K) for K in kers]
    M, m_incs, m_projs = direct_sum(mid_mods, T.algebra)
    K, k_incs, k_projs = direct_sum(ker_mods, T.algebra)

    # eps: summand p ∈ Q(r, j) of e_r^λ(X_r)_j maps by X_p
    eps = zero_morphism(M, Xm)
    for r, E in enumerate(mids):
        comps = []
        for j in range(Q.n):
            paths, incs, projs = E.summands[j]
            f = zero_morphism(E.values[j], X.values[j])
            for p, pr in zip(paths, projs):
                f = f + compose(X.path_map(p), pr)
            comps.append(f)
        eps = eps + compose(T.to_morphism(mid_mods[r], Xm, comps), m_projs[r])

    iota = zero_morphism(K, M)
    p = L.p
    for k, a in enumerate(Q.arrows):
        r, l = a.source, a.target
        Kk = kers[k]
        to_r, to_l = [], []
        for j in range(Q.n):
            kpaths, _, kprojs = Kk.summands[j]
            rpaths, rincs, _ = mids[r].summands[j]
            lpaths, lincs, _ = mids[l].summands[j]
            rpos = {q: t for t, q in enumerate(rpaths)}
            lpos = {q: t for t, q in enumerate(lpaths)}
            fr = zero_morphism(Kk.values[j], mids[r].values[j])
            fl = zero_morphism(Kk.values[j], mids[l].values[j])
            for q, pr in zip(kpaths, kprojs):
                longer = (r, (k,) + q[1])
                fr = fr + compose(rincs[rpos[longer]], pr)
                fl = fl + compose(lincs[lpos[q]], compose(X.maps[k].scale(p - 1), pr))
            to_r.append(fr)
            to_l.append(fl)
        part = compose(m_incs[r], T.to_morphism(ker_mods[k], mid_mods[r], to_r))
        part = part + compose(m_incs[l], T.to_morphism(ker_mods[k], mid_mods[l], to_l))
        iota = iota + compose(part, k_projs[k])
    return StandardSequence(K, M, Xm, iota, eps)


def ext_sequence_check(T: TensorAlgebra, X: QRep, Y: QRep, max_degree: int = 4) -> Dict[str, object]:
    """Consistency of the long exact sequence relating Hom/Ext over Q with vertex-wise data.

    Checks that Hom(X, Y) is the kernel of ``(f_r) -> (Y_α f_r - f_l X_α)`` and that
    the Euler characteristics agree: ``Σ_t (-1)^t ext^t(X, Y)`` equals
    ``Σ_t (-1)^t (Σ_r ext^t(X_r, Y_r) - Σ_α ext^t(X_{s α}, Y_{t α}))``.
    """
    Q = T.Q
    p = T.base.p
    bases = [hom_basis(X.values[r], Y.values[r]) for r in range(Q.n)]
    cols = []
    for r, B in enumerate(bases):
        for f in B:
            parts = []
            for k, a in enumerate(Q.arrows):
                if a.source == r and a.target == r:
                    g = compose(Y.maps[k], f) + compose(f, X.maps[k]).scale(p - 1)
                elif a.source == r:
                    g = compose(Y.maps[k], f)
                elif a.target == r:
                    g = compose(f, X.maps[k]).scale(p - 1)
                else:
                    g = zero_morphism(X.values[a.source], Y.values[a.target])
                parts.append(g.flat())
            cols.append(np.concatenate(parts) if parts else np.zeros(0, dtype=np.int64))
    total = sum(len(B) for B in bases)
    rank = la.rank(np.stack(cols, axis=1), p) if cols and cols[0].size else 0
    Xm, Ym = T.to_module(X), T.to_module(Y)
    lhs = sum((-1) ** t * ext_dim(t, Xm, Ym) for t in range(max_degree + 1))
    rhs = 0
    for t in range(max_degree + 1):
        vert = sum(ext_dim(t, X.values[r], Y.values[r]) for r in range(Q.n))
        arr = sum(ext_dim(t, X.values[a.source], Y.values[a.target]) for a in Q.arrows)
        rhs += (-1) ** t * (vert - arr)
    return {"hom": hom_dim(Xm, Ym), "kernel_of_first_map": total - rank, "euler_lhs": lhs, "euler_rhs": rhs,
            "ok": hom_dim(Xm, Ym) == total - rank and lhs == rhs}


# ---------------------------------------------------------------------------
# lifting constructions


def _hom_elements(X: FdModule, Y: FdModule, limit: int):
    basis = hom_basis(X, Y)
    p = X.p
    if p ** len(basis) > limit:
        raise BudgetError(f"Hom space of size {p}^{len(basis)} exceeds the epimorphism budget")
    for coeffs in itertools.product(range(p), repeat=len(basis)):
        if any(coeffs):
            f = zero_morphism(X, Y)
            for c, b in zip(coeffs, basis):
                if c:
                    f = f + b.scale(c)
            yield f


def kernel_closure_violation(cat: Catalog, S: Subcat, max_summands: int = 2,
                             limit: int = 1 << 12) -> Optional[dict]:
    """An epimorphism between objects of Fac(S) whose kernel leaves Fac(S).

    Sources range over sums of at most ``max_summands`` indecomposables of
    Fac(S) (with repetition); targets over its indecomposables.
    """
    fac = cat.fac(S)
    members = list(fac)
    names = cat.inventory.names
    for size in range(1, max_summands + 1):
        for combo in itertools.combinations_with_replacement(members, size):
            X, _, _ = direct_sum([cat.module(k) for k in combo], cat.algebra)
            for y in members:
                Y = cat.module(y)
                if Y.total_dim > X.total_dim:
                    continue
                for f in _hom_elements(X, Y, limit):
                    if not f.is_surjective():
                        continue
                    Kmod, _ = kernel(f)
                    if Kmod.total_dim == 0:
                        continue
                    for Z in decompose(Kmod):
                        z = cat.inventory.identify(Z)
                        if z is None or z not in fac:
                            return {"source": [names[k] for k in combo], "target": names[y],
                                    "kernel_summand": names[z] if z is not None else str(Z.dims),
                                    "matrix": f.to_literal()}
    return None


def _lift_cap(gens: Sequence[FdModule], Q: Quiver) -> int:
    paths = max(len(Q.paths_between(j, i)) for i in range(Q.n) for j in range(Q.n))
    return max(1, max((max(M.dims) for M in gens), default=1) * max(paths, 1))


@dataclass
class LiftedCategory:
    tensor: TensorAlgebra
    inventory: Inventory
    catalog: Catalog
    subcat: Subcat
    cap: int
    stable_cap: bool


def lifted_category(gens: Subcat, Q: Quiver, budget: int = 2 ** 22, confirm_cap: bool = True) -> LiftedCategory:
    """``add{e_i^ρ(T)}`` over the tensor algebra with an inventory enumerated under the derived cap.

    With ``confirm_cap`` the enumeration is repeated with the cap raised by one;
    the catalog is only marked complete when both inventories have the same size.
    """
    T = TensorAlgebra(gens.inventory.algebra, Q)
    mods = gens.modules
    cap = _lift_cap(mods, Q)
    for i in range(T.algebra.n):
        cap = max(cap, max(projective(T.algebra, i).dims), max(injective(T.algebra, i).dims))
    inv = enumerate_indecomposables(T.algebra, cap, budget=budget)
    stable = False
    if confirm_cap:
        try:
            stable = len(enumerate_indecomposables(T.algebra, cap + 1, budget=budget)) == len(inv)
        except BudgetError:
            stable = False
    cat = Catalog(inv, complete=stable)
    members = set()
    for M in mods:
        for i in range(Q.n):
            lifted = T.e_rho(M, i)
            for k in inv.multiplicities(lifted):
                members.add(k)
    return LiftedCategory(T, inv, cat, cat.subcat(sorted(members)), cap, stable)


@dataclass
class LiftReport:
    base: List[str]
    lifted: List[str]
    hypothesis_ok: bool
    hypothesis_witness: Optional[dict]
    report: Optional[STiltReport]
    cap: int
    inventory_size: int

    @property
    def ok(self) -> bool:
        return self.hypothesis_ok and self.report is not None and self.report.support

    def to_json(self) -> dict:
        return {"base": self.base, "lifted": self.lifted, "hypothesis": self.hypothesis_ok,
                "hypothesis_witness": self.hypothesis_witness, "cap": self.cap,
                "inventory_size": self.inventory_size,
                "verification": self.report.to_json() if self.report else None, "ok": self.ok}


def lift_support_tau_tilting(cat: Catalog, gens: Subcat, Q: Quiver, budget: int = 2 ** 22) -> LiftReport:
    """Lift a support τ-tilting subcategory whose Fac is closed under kernels of epimorphisms.

    Raises:
        HypothesisError: ``gens`` is not support τ-tilting, or Fac(gens) is not
            closed under kernels of epimorphisms (the witness names the map).
    """
    base = is_support_tau_tilting(cat, gens)
    if not base.support:
        raise HypothesisError("generators are not support τ-tilting", {"verdict": base.verdict()})
    viol = kernel_closure_violation(cat, gens)
    if viol is not None:
        raise HypothesisError(
            f"Fac is not closed under kernels: epimorphism {' ⊕ '.join(viol['source'])} -> {viol['target']} "
            f"has kernel summand {viol['kernel_summand']}", viol)
    lifted = lifted_category(gens, Q, budget)
    rep = is_support_tau_tilting(lifted.catalog, lifted.subcat)
    if not rep.support:
        log.error("lifted subcategory failed verification although the hypothesis holds")
    return LiftReport(gens.names, lifted.subcat.names, True, None, rep, lifted.cap, len(lifted.inventory))


@dataclass
class TiltLiftReport:
    base: TiltingReport
    lifted: TiltingReport
    lifted_names: List[str]
    cap: int

    @property
    def ok(self) -> bool:
        return self.base.tilting and self.lifted.tilting

    def to_json(self) -> dict:
        return {"base": self.base.to_json(), "lifted": self.lifted.to_json(), "lifted_names": self.lifted_names,
                "cap": self.cap, "ok": self.ok}


def lift_n_tilting(cat: Catalog, gens: Subcat, n: int, Q: Quiver, budget: int = 2 ** 22) -> TiltLiftReport:
    """Lift an n-tilting subcategory to ``add{e_i^ρ(T)}`` and check the (n+1)-tilting clauses.

    Coresolutions of the lifted projectives are built from minimal left
    approximations (see :func:`tautilt.add_coresolution`).

    Raises:
        HypothesisError: ``gens`` is not n-tilting.
    """
    base = is_n_tilting(cat, gens, n)
    if not base.tilting:
        raise HypothesisError(f"generators are not {n}-tilting", base.to_json())
    lifted = lifted_category(gens, Q, budget)
    rep = is_n_tilting(lifted.catalog, lifted.subcat, n + 1)
    return TiltLiftReport(base, rep, lifted.subcat.names, lifted.cap)
