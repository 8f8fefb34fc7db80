"""Torsion pairs, τ-cotorsion torsion triples, their τ⁻ duals and quadruples over an inventory."""

from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .homcore import ar_translate, nakayama
from .inventory import decompose
from .modrep import FdModule, cokernel, direct_sum, injective, kernel, projective, quotient, submodule
from .tautilt import (CONTRAVARIANT_FINITENESS, SUBSET_LIMIT, Catalog, Subcat, gathered_left_approximation,
                      is_left_approximation, is_right_approximation, is_support_tau_tilting, minimal_left_approximation,
                      minimal_right_approximation, support_vertices, trace_spaces)

log = logging.getLogger(__name__)


class TorsionError(ValueError):
    """Raised when a subcategory is not a torsion class; carries a witness name."""

    def __init__(self, message: str, witness: Optional[str] = None):
        super().__init__(message if witness is None else f"{message} (witness {witness})")
        self.witness = witness


def _names(cat: Catalog, idx) -> List[str]:
    return [cat.inventory.names[k] for k in idx]


def _mult_names(cat: Catalog, X: FdModule) -> Optional[List[str]]:
    """Summand names of ``X`` (sorted by inventory index), ``None`` if one is missing."""
    if X.total_dim == 0:
        return []
    try:
        m = cat.inventory.multiplicities(X)
    except LookupError:
        return None
    return _names(cat, sorted(m.elements()))


def _within(cat: Catalog, X: FdModule, S: Subcat) -> bool:
    return cat.in_add(X, S)


# ---------------------------------------------------------------------------
# torsion pairs


def torsion_closure(cat: Catalog, T: Subcat) -> Subcat:
    """``⊥0(T^⊥0)``: the smallest torsion class containing T (inventory level)."""
    return cat.left_perp(cat.right_perp(T, 0), 0)


def is_torsion_class(cat: Catalog, T: Subcat) -> bool:
    return torsion_closure(cat, T).members == T.members


def is_torsionfree_class(cat: Catalog, F: Subcat) -> bool:
    return cat.right_perp(cat.left_perp(F, 0), 0).members == F.members


@dataclass
class TorsionPair:
    T: Subcat
    F: Subcat
    sequences: Dict[str, dict]
    hom_orthogonal: bool

    @property
    def ok(self) -> bool:
        return self.hom_orthogonal and all(s["tA_in_T"] and s["fA_in_F"] for s in self.sequences.values())

    def to_json(self) -> dict:
        return {"T": self.T.names, "F": self.F.names, "hom_orthogonal": self.hom_orthogonal,
                "sequences": self.sequences, "ok": self.ok}


def canonical_sequence(cat: Catalog, T: Subcat, A: FdModule):
    """``0 -> tA -> A -> A/tA -> 0`` with ``tA`` the trace of T in A."""
    spaces = trace_spaces(T.modules, A)
    tA, inc = submodule(A, spaces)
    fA, proj = quotient(A, spaces)
    return tA, inc, fA, proj


def torsion_pair(cat: Catalog, T: Subcat, F: Subcat) -> TorsionPair:
    """Check ``(T, F)`` as a torsion pair and record the canonical sequence of every inventory object."""
    orth = all(cat.hom(t, f) == 0 for t in T for f in F)
    seqs = {}
    for k, A in enumerate(cat.inventory):
        tA, inc, fA, proj = canonical_sequence(cat, T, A)
        exact = inc.is_injective() and proj.is_surjective() and (proj @ inc).is_zero()
        seqs[A.name] = {
            "tA": _mult_names(cat, tA),
            "fA": _mult_names(cat, fA),
            "tA_in_T": _within(cat, tA, T),
            "fA_in_F": _within(cat, fA, F),
            "exact": exact,
        }
    return TorsionPair(T, F, seqs, orth)


def torsion_pair_from_class(cat: Catalog, T: Subcat) -> TorsionPair:
    """``(T, T^⊥0)`` with canonical sequences.

    Raises:
        TorsionError: T is not closed under quotients and extensions in the inventory.
    """
    closure = torsion_closure(cat, T)
    missing = [k for k in closure if k not in T]
    if missing:
        raise TorsionError("not a torsion class", cat.inventory.names[missing[0]])
    return torsion_pair(cat, T, cat.right_perp(T, 0))


# ---------------------------------------------------------------------------
# τ-triples


@dataclass
class TauTriple:
    C: Subcat
    T: Subcat
    F: Subcat
    checks: Dict[str, bool]
    witnesses: Dict[str, dict] = field(default_factory=dict)
    inventory_hash: str = ""

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def failed(self) -> List[str]:
        return [k for k, v in self.checks.items() if not v]

    def to_json(self) -> dict:
        return {"C": self.C.names, "T": self.T.names, "F": self.F.names, "verdict": self.ok,
                "checks": self.checks, "witnesses": self.witnesses,
                "contravariantly_finite": CONTRAVARIANT_FINITENESS, "inventory_hash": self.inventory_hash}


def _intersect(cat: Catalog, X: Subcat, Y: Subcat) -> Subcat:
    return cat.subcat(sorted(X.as_set() & Y.as_set()))


def verify_tau_triple(cat: Catalog, C: Subcat, T: Subcat, F: Subcat) -> TauTriple:
    """Check ``(C, T)`` as a τ-cotorsion pair and ``(T, F)`` as a torsion pair.

    For the projective condition the minimal left add(C∩T)-approximation of each
    indecomposable projective is certified to be a left T-approximation and its
    cokernel is tested for membership in C.  Some sequence with the required
    properties exists exactly when this one works: a left T-approximation into
    C∩T contains the minimal one as a summand, which is then also minimal over
    C∩T, and C is closed under summands.
    """
    checks: Dict[str, bool] = {}
    checks["C_is_perp1_T"] = cat.left_perp(T, 1).members == C.members
    CT = _intersect(cat, C, T)
    A = cat.algebra
    wit: Dict[str, dict] = {}
    proj_ok = True
    for v in range(A.n):
        P = projective(A, v)
        approx = minimal_left_approximation(P, CT)
        is_T = is_left_approximation(approx.map, T.modules)
        Cp, _ = cokernel(approx.map)
        in_C = _within(cat, Cp, C)
        wit[A.quiver.vertices[v]] = {"D": _names(cat, approx.summands), "C": _mult_names(cat, Cp),
                                     "left_T_approximation": is_T, "cokernel_in_C": in_C}
        proj_ok &= is_T and in_C
    checks["projective_sequences"] = proj_ok
    checks["T_is_torsion_class"] = is_torsion_class(cat, T)
    checks["F_is_T_perp0"] = cat.right_perp(T, 0).members == F.members
    tp = torsion_pair(cat, T, F)
    checks["torsion_pair"] = tp.ok
    return TauTriple(C, T, F, checks, wit, cat.fingerprint())


def phi(cat: Catalog, S: Subcat) -> TauTriple:
    """``S ↦ (⊥1 Fac S, Fac S, S^⊥0)`` with every condition checked."""
    T = cat.fac(S)
    return verify_tau_triple(cat, cat.left_perp(T, 1), T, cat.right_perp(S, 0))


def psi(cat: Catalog, triple: TauTriple) -> Subcat:
    """``(C, T, F) ↦ C ∩ T``."""
    return _intersect(cat, triple.C, triple.T)


def left_t_sequences(cat: Catalog, T: Subcat, C: Subcat) -> Dict[str, dict]:
    """For each inventory object ``A`` the sequence ``A -> T0 -> C0 -> 0`` with a minimal left T-approximation."""
    out = {}
    for A in cat.inventory:
        approx = minimal_left_approximation(A, T)
        Cp, _ = cokernel(approx.map)
        out[A.name] = {"T": _names(cat, approx.summands), "C": _mult_names(cat, Cp),
                       "cokernel_in_C": _within(cat, Cp, C)}
    return out


@dataclass
class LeftWeakReport:
    checks: Dict[str, bool]
    witnesses: Dict[str, dict]

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def to_json(self) -> dict:
        return {"verdict": self.ok, "checks": self.checks, "witnesses": self.witnesses}


def verify_left_weak(cat: Catalog, C: Subcat, T: Subcat, F: Subcat) -> LeftWeakReport:
    """Left weak cotorsion torsion triple check.

    Every inventory object ``M`` needs ``M -> D -> C' -> 0`` with a left
    T-approximation and ``0 -> D' -> C'' -> M -> 0`` with a right
    C-approximation.  Minimal approximations are used: any working approximation
    is the minimal one plus a split summand, and both C and T are closed under
    summands, so the minimal ones work whenever some approximation does.
    """
    checks = {"ext1_C_T_zero": all(cat.ext1(c, t) == 0 for c in C for t in T)}
    wit = {}
    left_ok = right_ok = True
    for M in cat.inventory:
        f = minimal_left_approximation(M, T)
        Cp, _ = cokernel(f.map)
        l_ok = _within(cat, Cp, C)
        g = minimal_right_approximation(C, M)
        K, _ = kernel(g.map)
        r_ok = g.map.is_surjective() and _within(cat, K, T)
        wit[M.name] = {"left": {"D": _names(cat, f.summands), "C": _mult_names(cat, Cp), "ok": l_ok},
                       "right": {"C": _names(cat, g.summands), "D": _mult_names(cat, K),
                                 "surjective": g.map.is_surjective(), "ok": r_ok}}
        left_ok &= l_ok
        right_ok &= r_ok
    checks["left_sequences"] = left_ok
    checks["right_sequences"] = right_ok
    checks["T_is_torsion_class"] = is_torsion_class(cat, T)
    checks["F_is_T_perp0"] = cat.right_perp(T, 0).members == F.members
    checks["torsion_pair"] = torsion_pair(cat, T, F).ok
    return LeftWeakReport(checks, wit)


@dataclass
class CotorsionReport:
    checks: Dict[str, bool]
    witnesses: Dict[str, dict]

    @property
    def ok(self) -> bool:
        return all(self.checks.values())


def verify_cotorsion_pair(cat: Catalog, C: Subcat, D: Subcat) -> CotorsionReport:
    """Complete cotorsion pair check: perpendicularity plus both approximation sequences for every object."""
    checks = {"C_is_perp1_D": cat.left_perp(D, 1).members == C.members,
              "D_is_C_perp1": cat.right_perp(C, 1).members == D.members}
    wit = {}
    mono_ok = epi_ok = True
    for A in cat.inventory:
        f = minimal_left_approximation(A, D)
        Q, _ = cokernel(f.map)
        m_ok = f.map.is_injective() and _within(cat, Q, C)
        g = minimal_right_approximation(C, A)
        K, _ = kernel(g.map)
        e_ok = g.map.is_surjective() and _within(cat, K, D)
        wit[A.name] = {"mono": m_ok, "epi": e_ok}
        mono_ok &= m_ok
        epi_ok &= e_ok
    checks["special_preenvelopes"] = mono_ok
    checks["special_precovers"] = epi_ok
    return CotorsionReport(checks, wit)


# ---------------------------------------------------------------------------
# τ⁻-triples and quadruples


def verify_tau_minus_triple(cat: Catalog, T: Subcat, F: Subcat, D: Subcat) -> TauTriple:
    """``(T, F)`` a torsion pair and ``(F, D)`` a τ⁻-cotorsion pair (dual of :func:`verify_tau_triple`)."""
    checks: Dict[str, bool] = {}
    checks["D_is_F_perp1"] = cat.right_perp(F, 1).members == D.members
    FD = _intersect(cat, F, D)
    A = cat.algebra
    wit: Dict[str, dict] = {}
    inj_ok = True
    for v in range(A.n):
        I = injective(A, v)
        approx = minimal_right_approximation(FD, I)
        is_F = is_right_approximation(approx.map, F.modules)
        K, _ = kernel(approx.map)
        in_D = _within(cat, K, D)
        wit[A.quiver.vertices[v]] = {"C": _names(cat, approx.summands), "D": _mult_names(cat, K),
                                     "right_F_approximation": is_F, "kernel_in_D": in_D}
        inj_ok &= is_F and in_D
    checks["injective_sequences"] = inj_ok
    checks["F_is_torsionfree_class"] = is_torsionfree_class(cat, F)
    checks["T_is_perp0_F"] = cat.left_perp(F, 0).members == T.members
    checks["torsion_pair"] = torsion_pair(cat, T, F).ok
    return TauTriple(T, F, D, checks, wit, cat.fingerprint())


@dataclass
class Quadruple:
    C: Subcat
    T: Subcat
    F: Subcat
    D: Subcat
    tau_triple: TauTriple
    tau_minus_triple: TauTriple
    dagger: Subcat
    expected: Subcat

    @property
    def ok(self) -> bool:
        return self.tau_triple.ok and self.tau_minus_triple.ok

    @property
    def dagger_matches(self) -> bool:
        return self.dagger.members == self.expected.members

    def to_json(self) -> dict:
        return {"C": self.C.names, "T": self.T.names, "F": self.F.names, "D": self.D.names,
                "tau_triple": self.tau_triple.to_json(), "tau_minus_triple": self.tau_minus_triple.to_json(),
                "dagger": self.dagger.names, "tau_M_plus_nu_P": self.expected.names,
                "verdict": {"quadruple": self.ok, "dagger_matches": self.dagger_matches}}


class PairError(ValueError):
    pass


def quadruple_from_pair(cat: Catalog, M: Subcat, P_vertices: Optional[Sequence[int]] = None) -> Quadruple:
    """Quadruple ``(⊥1 Fac M, Fac M, Sub(τM ⊕ νP), Sub(τM ⊕ νP)^⊥1)`` for a support τ-tilting pair.

    ``P_vertices`` defaults to the vertices outside the support of M.

    Raises:
        PairError: M is not support τ-tilting, or Hom(P, M) ≠ 0, or the pair is not maximal.
    """
    A = cat.algebra
    supp = support_vertices(cat, M)
    if P_vertices is None:
        P_vertices = [i for i in range(A.n) if i not in supp]
    P_vertices = sorted(set(P_vertices))
    if any(i in supp for i in P_vertices):
        raise PairError("Hom(P, M) is non-zero")
    if len(M) + len(P_vertices) != A.n:
        raise PairError("the pair is not support τ-tilting (wrong number of summands)")
    if not is_support_tau_tilting(cat, M).support:
        raise PairError("M is not support τ-tilting")
    T = cat.fac(M)
    C = cat.left_perp(T, 1)
    gens: List[FdModule] = [ar_translate(X) for X in M.modules]
    if P_vertices:
        P, _, _ = direct_sum([projective(A, i) for i in P_vertices], A)
        gens.append(nakayama(P))
    summands = set()
    for X in gens:
        if X.total_dim:
            summands |= set(cat.inventory.multiplicities(X))
    expected = cat.subcat(sorted(summands))
    F = cat.sub(expected)
    D = cat.right_perp(F, 1)
    trip = verify_tau_triple(cat, C, T, F)
    trip_minus = verify_tau_minus_triple(cat, T, F, D)
    return Quadruple(C, T, F, D, trip, trip_minus, _intersect(cat, F, D), expected)


# ---------------------------------------------------------------------------
# torsion classes and their lattice


def _bitmasks(cat: Catalog) -> List[int]:
    n = cat.n
    return [sum(1 << j for j in range(n) if cat.hom(i, j)) for i in range(n)]


def enumerate_torsion_classes(cat: Catalog, limit: int = SUBSET_LIMIT) -> List[Subcat]:
    """Every inventory subset closed under quotients and extensions, found as ``⊥0(T^⊥0) = T``.

    Raises:
        ValueError: the inventory has more than ``limit`` members.
    """
    n = cat.n
    if n > limit:
        raise ValueError(f"subset budget exceeded: {n} indecomposables (limit {limit})")
    out_mask = _bitmasks(cat)
    in_mask = [sum(1 << i for i in range(n) if out_mask[i] >> j & 1) for j in range(n)]
    found = []
    for S in range(1 << n):
        reach = 0
        for i in range(n):
            if S >> i & 1:
                reach |= out_mask[i]
        perp = ((1 << n) - 1) & ~reach
        hit = 0
        for j in range(n):
            if perp >> j & 1:
                hit |= in_mask[j]
        if ((1 << n) - 1) & ~hit == S:
            found.append(S)
    classes = [cat.subcat(i for i in range(n) if S >> i & 1) for S in found]
    classes.sort(key=lambda s: (len(s), s.members))
    return classes


@dataclass
class TorsionLattice:
    classes: List[Subcat]
    covers: List[Tuple[int, int]]
    functorially_finite: List[bool]

    def to_json(self) -> dict:
        return {"classes": [c.names for c in self.classes], "covers": [list(e) for e in self.covers],
                "functorially_finite": self.functorially_finite}

    def to_dot(self) -> str:
        lines = ["digraph torsion_classes {", "  rankdir=BT;"]
        for k, c in enumerate(self.classes):
            label = ", ".join(c.names) if len(c) else "0"
            lines.append(f'  n{k} [label="{{{label}}}"];')
        for a, b in self.covers:
            lines.append(f"  n{a} -> n{b};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def _approximations_exist(cat: Catalog, T: Subcat) -> bool:
    """Left and right T-approximations of every inventory object, certified."""
    for A in cat.inventory:
        tA, inc, _, _ = canonical_sequence(cat, T, A)
        if not cat.in_add(tA, T):
            return False
        if not is_left_approximation(gathered_left_approximation(A, T).map, T.modules):
            return False
    return True


def torsion_lattice(cat: Catalog, certify: bool = True) -> TorsionLattice:
    classes = enumerate_torsion_classes(cat)
    sets = [c.as_set() for c in classes]
    covers = []
    for a, sa in enumerate(sets):
        for b, sb in enumerate(sets):
            if sa < sb and not any(sa < sc < sb for sc in sets):
                covers.append((a, b))
    ff = [_approximations_exist(cat, c) if certify else True for c in classes]
    return TorsionLattice(classes, covers, ff)


def enumerate_tau_triples(cat: Catalog) -> List[TauTriple]:
    """τ-triples are determined by their middle term: ``C = ⊥1 T`` and ``F = T^⊥0`` are forced."""
    out = []
    for T in enumerate_torsion_classes(cat):
        trip = verify_tau_triple(cat, cat.left_perp(T, 1), T, cat.right_perp(T, 0))
        if trip.ok:
            out.append(trip)
    return out


# ---------------------------------------------------------------------------
# whole-inventory checks of the correspondences


def _key(trip: TauTriple) -> Tuple[Tuple[int, ...], Tuple[int, ...], Tuple[int, ...]]:
    return trip.C.members, trip.T.members, trip.F.members


@dataclass
class BijectionReport:
    stilt: List[Subcat]
    triples: List[TauTriple]
    checks: Dict[str, bool]
    tilting: List[Subcat]
    cotorsion_triples: List[TauTriple]

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def to_json(self) -> dict:
        return {"support_tau_tilting": [S.names for S in self.stilt],
                "tau_triples": [{"C": t.C.names, "T": t.T.names, "F": t.F.names} for t in self.triples],
                "tilting": [S.names for S in self.tilting],
                "cotorsion_torsion_triples": [{"C": t.C.names, "T": t.T.names, "F": t.F.names}
                                              for t in self.cotorsion_triples],
                "checks": self.checks, "ok": self.ok}


def bijection_report(cat: Catalog) -> BijectionReport:
    """Compare Φ and Ψ against independent enumerations of both sides.

    The support τ-tilting side comes from the subset search, the triple side
    from torsion classes; Φ must land in the triples, Ψ must undo Φ, and Φ must
    hit every triple.  The restriction to 1-tilting subcategories must match the
    triples whose first two terms form a complete cotorsion pair.
    """
    from .tautilt import enumerate_support_tau_tilting, is_n_tilting

    stilt = enumerate_support_tau_tilting(cat)
    triples = enumerate_tau_triples(cat)
    images = [phi(cat, S) for S in stilt]
    tri_keys = {_key(t) for t in triples}
    img_keys = [_key(t) for t in images]
    checks = {
        "phi_lands_in_triples": all(t.ok for t in images) and set(img_keys) <= tri_keys,
        "phi_injective": len(set(img_keys)) == len(img_keys),
        "phi_surjective": set(img_keys) == tri_keys,
        "psi_phi_identity": all(psi(cat, t).members == S.members for S, t in zip(stilt, images)),
        "phi_psi_identity": all(_key(phi(cat, psi(cat, t))) == _key(t) for t in triples),
        "same_cardinality": len(stilt) == len(triples),
    }
    tilting = [S for S in stilt if is_n_tilting(cat, S, 1).tilting]
    cot = [t for t in triples if verify_cotorsion_pair(cat, t.C, t.T).ok]
    checks["tilting_to_cotorsion_triples"] = {_key(phi(cat, S)) for S in tilting} == {_key(t) for t in cot}
    return BijectionReport(stilt, triples, checks, tilting, cot)


@dataclass
class LeftWeakCase:
    label: str
    C: Subcat
    T: Subcat
    F: Subcat
    tau_triple: bool
    left_weak: bool
    corrupted: bool

    @property
    def agree(self) -> bool:
        return self.tau_triple == self.left_weak

    def to_json(self) -> dict:
        return {"label": self.label, "C": self.C.names, "T": self.T.names, "F": self.F.names,
                "tau_triple": self.tau_triple, "left_weak": self.left_weak, "corrupted": self.corrupted,
                "agree": self.agree}


def _corruptions(cat: Catalog, trip: TauTriple):
    """Perturbed copies of a triple, each breaking at least one defining condition."""
    n = cat.n
    C, T, F = trip.C.as_set(), trip.T.as_set(), trip.F.as_set()
    if C:
        yield "C minus one object", cat.subcat(sorted(C - {max(C)})), trip.T, trip.F
    outside = sorted(set(range(n)) - F)
    if outside:
        yield "F plus one object", trip.C, trip.T, cat.subcat(sorted(F | {outside[0]}))
    if T:
        yield "T minus one object", trip.C, cat.subcat(sorted(T - {min(T)})), trip.F
    yield "C and F swapped", trip.F, trip.T, trip.C


def left_weak_cases(cat: Catalog) -> List[LeftWeakCase]:
    """Candidate triples (one per torsion class, plus corrupted copies of the τ-triples) with both verdicts."""
    cases = []
    for T in enumerate_torsion_classes(cat):
        C, F = cat.left_perp(T, 1), cat.right_perp(T, 0)
        trip = verify_tau_triple(cat, C, T, F)
        lw = verify_left_weak(cat, C, T, F)
        cases.append(LeftWeakCase(f"T = {T.names}", C, T, F, trip.ok, lw.ok, False))
        if not trip.ok:
            continue
        for label, C2, T2, F2 in _corruptions(cat, trip):
            if _key(TauTriple(C2, T2, F2, {})) == _key(trip):
                continue
            cases.append(LeftWeakCase(f"{label} of T = {T.names}", C2, T2, F2,
                                      verify_tau_triple(cat, C2, T2, F2).ok,
                                      verify_left_weak(cat, C2, T2, F2).ok, True))
    return cases
