"""Structural property suites run over a whole fixture.

Each suite returns a :class:`SuiteResult` counting the instances checked and
listing any failures, so the same code backs the test-suite and ``tiltlab props``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np

from .algcore import Quiver
from .inventory import decompose
from .modrep import ModMorphism, direct_sum, hom_basis, image, kernel
from .tautilt import Catalog, enumerate_support_tau_tilting


@dataclass
class SuiteResult:
    name: str
    checked: int = 0
    failures: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {"name": self.name, "checked": self.checked, "failures": self.failures, "ok": self.ok}


def perp_fac_identity(cat: Catalog) -> SuiteResult:
    """``⊥1 Fac(T) ∩ Fac(T) = T`` for every support τ-tilting T of the inventory."""
    res = SuiteResult("perp_fac_identity")
    for S in enumerate_support_tau_tilting(cat):
        fac = cat.fac(S)
        both = cat.left_perp(fac, 1).as_set() & fac.as_set()
        res.checked += 1
        if both != S.as_set():
            res.failures.append(f"add({', '.join(S.names)}): got {sorted(cat.inventory.names[k] for k in both)}")
    return res


def fac_idempotence(cat: Catalog, max_size: int = 3) -> SuiteResult:
    """``Fac(Fac S) = Fac S`` and ``Sub(Sub S) = Sub S`` for all subsets with at most ``max_size`` members."""
    res = SuiteResult("fac_idempotence")
    for r in range(max_size + 1):
        for S in itertools.combinations(range(cat.n), r):
            for close in (cat.fac, cat.sub):
                once = close(S)
                res.checked += 1
                if close(once).as_set() != once.as_set():
                    res.failures.append(f"{close.__name__} of {[cat.inventory.names[k] for k in S]}")
    return res


def rank_nullity(cat: Catalog) -> SuiteResult:
    """``dim ker f + dim im f = dim source`` (vertexwise) for a spanning set of maps between indecomposables."""
    res = SuiteResult("rank_nullity")
    mods = list(cat.inventory)
    rng = np.random.default_rng(0)
    for X, Y in itertools.product(mods, repeat=2):
        basis = hom_basis(X, Y)
        maps = list(basis)
        if len(basis) > 1:
            coeffs = rng.integers(0, X.p, size=len(basis))
            blocks = [sum(int(c) * f.blocks[v] for c, f in zip(coeffs, basis)) % X.p for v in range(len(X.dims))]
            maps.append(ModMorphism(X, Y, blocks))
        for f in maps:
            K, _ = kernel(f)
            I, _ = image(f)
            res.checked += 1
            if tuple(k + i for k, i in zip(K.dims, I.dims)) != tuple(X.dims):
                res.failures.append(f"{X.name} -> {Y.name}")
            elif tuple(I.dims) != f.ranks():
                res.failures.append(f"{X.name} -> {Y.name}: image disagrees with blockwise rank")
    return res


def decompose_idempotence(cat: Catalog) -> SuiteResult:
    """Summands returned by ``decompose`` decompose to themselves, for indecomposables and their pairwise sums."""
    res = SuiteResult("decompose_idempotence")
    mods = list(cat.inventory)
    cases = [[M] for M in mods] + [[M, N] for M, N in itertools.combinations_with_replacement(mods, 2)]
    for parts in cases:
        X, _, _ = direct_sum(parts, cat.algebra)
        summands = decompose(X)
        res.checked += 1
        label = " ⊕ ".join(M.name for M in parts)
        if len(summands) != len(parts):
            res.failures.append(f"{label}: {len(summands)} summands")
            continue
        if sorted(cat.inventory.identify(S) for S in summands) != sorted(cat.inventory.identify(M) for M in parts):
            res.failures.append(f"{label}: summands not isomorphic to the parts")
        for S in summands:
            again = decompose(S)
            if len(again) != 1 or again[0].dims != S.dims:
                res.failures.append(f"{label}: summand splits again")
    return res


def adjunction_identities(cat: Catalog, Q: Quiver, degrees=(0, 1)) -> SuiteResult:
    """Hom and Ext adjunction identities for ``e_i^λ ⊣ e_i ⊣ e_i^ρ`` over the tensor algebra with Q.

    Test objects are all ``e_j^λ(B)`` and ``e_j^ρ(B)`` with B indecomposable.
    """
    from .repq import TensorAlgebra, adjunction_dims, e_i_lambda, e_i_rho

    res = SuiteResult("adjunction_identities")
    T = TensorAlgebra(cat.algebra, Q)
    mods = list(cat.inventory)
    reps = [(f"e{Q.vertices[j]}^{s}({B.name})", f(B, j, Q))
            for B in mods for j in range(Q.n) for s, f in (("λ", e_i_lambda), ("ρ", e_i_rho))]
    for A in mods:
        for label, X in reps:
            for i in range(Q.n):
                for d in degrees:
                    dims = adjunction_dims(T, A, X, i, d)
                    res.checked += 1
                    for side, (lhs, rhs) in dims.items():
                        if lhs != rhs:
                            res.failures.append(f"{side} degree {d}: A={A.name}, X={label}, i={Q.vertices[i]}: "
                                                f"{lhs} != {rhs}")
    return res


def run_all(cat: Catalog, Q: Optional[Quiver] = None) -> List[SuiteResult]:
    suites = [perp_fac_identity(cat), fac_idempotence(cat), rank_nullity(cat), decompose_idempotence(cat)]
    if Q is not None:
        suites.append(adjunction_identities(cat, Q))
    return suites


def region_fac_idempotence(regions) -> SuiteResult:
    """``fac_region`` and ``sub_region`` are idempotent on every named region (exact comparison)."""
    from .persist import fac_region, sub_region

    res = SuiteResult("region_fac_idempotence")
    for name, R in sorted(regions.items()):
        for close in (fac_region, sub_region):
            once = close(R)
            res.checked += 1
            if not close(once).equals(once):
                res.failures.append(f"{close.__name__}({name})")
    return res
