"""Command-line front end.

Exit codes: 0 pass, 1 verification failure, 2 input error, 3 budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from typing import List, Optional

from . import __version__
from .inventory import BudgetError, enumerate_indecomposables, set_default_seed
from .io import (InputError, algebra_from_document, algebra_to_document, load_document, modules_from_document,
                 parse_interval, parse_region, quiver_from_document, regions_from_document)
from .persist import as_value

SCHEMA_VERSION = 1

EXIT_PASS, EXIT_FAIL, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3

log = logging.getLogger("tiltlab")


# ---------------------------------------------------------------------------
# shared plumbing


class Session:
    """Per-command state built lazily from the parsed arguments."""

    def __init__(self, args: argparse.Namespace):
        self.args = args
        self._doc = None
        self._cat = None

    @property
    def doc(self) -> dict:
        if self._doc is None:
            self._doc = load_document(self.args.input)
        return self._doc

    @property
    def algebra(self):
        return self.catalog.algebra

    @property
    def catalog(self):
        from .tautilt import Catalog

        if self._cat is None:
            A = algebra_from_document(self.doc, self.args.prime)
            bound = self.args.dim_bound if self.args.dim_bound is not None else self.doc.get("dim_bound", 2)
            inv = enumerate_indecomposables(A, bound, budget=self.args.budget)
            named = modules_from_document(A, self.doc)
            for M in named:
                k = inv.identify(M) if M.name else None
                if k is not None:
                    inv.rename(k, M.name)
            self._cat = Catalog(inv, complete=bool(self.doc.get("complete", True)))
        return self._cat

    def subcat(self, names: Optional[List[str]], key: Optional[str]):
        from .tautilt import Subcat

        if key is not None:
            try:
                names = self.doc["subcats"][key]
            except KeyError:
                raise InputError(f"no subcategory named {key!r} in {self.args.input}")
        names = names or []
        inv = self.catalog.inventory
        missing = [n for n in names if n not in inv.names]
        if missing:
            raise InputError(f"unknown module names {missing}; inventory has {inv.names}")
        return Subcat.from_names(inv, names)


def emit(args: argparse.Namespace, payload: dict, text: str, dot: Optional[str] = None) -> None:
    if args.format == "json":
        out = {"schema_version": SCHEMA_VERSION, "command": args.command_path}
        out.update(payload)
        print(json.dumps(out, indent=2, ensure_ascii=False, default=str))
    elif args.format == "dot" and dot is not None:
        print(dot)
    else:
        print(text)


def yes(flag: bool) -> str:
    return "PASS" if flag else "FAIL"


# ---------------------------------------------------------------------------
# commands


def _pd_text(pd: Optional[int]) -> str:
    return "∞" if pd is None else str(pd)


def cmd_indecs(args) -> int:
    from .homcore import projective_dimension

    s = Session(args)
    inv = s.catalog.inventory
    cat = s.catalog
    rows = [{"name": M.name, "dims": list(M.dims), "projective_dimension": projective_dimension(M),
             "tau": cat.inventory.names[cat.inventory.identify(cat.tau(k))] if cat.tau(k).total_dim else "0"}
            for k, M in enumerate(inv)]
    verts = list(s.algebra.quiver.vertices)
    width = max([len(r["name"]) for r in rows] + [4])
    lines = [f"{'name'.ljust(width)}  pd  {'τ'.ljust(width)}  dims ({', '.join(verts)})"]
    lines += [f"{r['name'].ljust(width)}  {_pd_text(r['projective_dimension']).ljust(2)}  {r['tau'].ljust(width)}  "
              f"{tuple(r['dims'])}" for r in rows]
    lines.append(f"{len(rows)} indecomposables")
    emit(args, {"count": len(rows), "indecomposables": rows, "warnings": s.catalog.warnings}, "\n".join(lines))
    return EXIT_PASS


def _stilt_text(rep) -> str:
    lines = [f"subcategory add({' ⊕ '.join(rep.subcat) or '0'})"]
    lines.append(f"  Ext¹(T, Fac T) = 0: {yes(rep.rigid)}"
                 + (f"  (witness {rep.rigidity_witness[0]} -> {rep.rigidity_witness[1]})" if rep.rigidity_witness else ""))
    for w in rep.sequences:
        t0 = " ⊕ ".join(w.T0) or "0"
        t1 = " ⊕ ".join(w.T1) or "0"
        lines.append(f"  P{w.vertex} -> {t0} -> {t1} -> 0   {yes(w.ok)}")
    v = rep.verdict()
    for k in ("weak_support_tau_tilting", "support_tau_tilting", "tau_tilting", "rank_count_cross_check"):
        lines.append(f"{k}: {yes(v[k])}")
    lines.append(f"contravariantly_finite: {v['contravariantly_finite']}")
    for w in rep.warnings:
        lines.append(f"warning: {w}")
    return "\n".join(lines)


def cmd_stilt(args) -> int:
    from .tautilt import enumerate_by_rank_count, enumerate_support_tau_tilting, is_support_tau_tilting, recheck_witnesses

    s = Session(args)
    cat = s.catalog
    if args.action == "verify":
        S = s.subcat(args.gens, args.subcat)
        rep = is_support_tau_tilting(cat, S)
        payload = rep.to_json()
        ok = rep.support
        text = _stilt_text(rep)
        if args.recheck:
            rc = recheck_witnesses(cat, S, payload)
            payload["recheck"] = rc
            text += "\nrecheck: " + yes(all(rc.values()))
            ok = ok and all(rc.values())
        emit(args, payload, text)
        return EXIT_PASS if ok else EXIT_FAIL
    found = enumerate_support_tau_tilting(cat, args.budget_subsets)
    lists = [S.names for S in found]
    payload = {"count": len(found), "subcats": lists}
    lines = [f"add({' ⊕ '.join(n) or '0'})" for n in lists] + [f"count: {len(found)}"]
    ok = True
    if args.rank_count:
        by_count = sorted(S.names for S in enumerate_by_rank_count(cat))
        agree = by_count == sorted(lists)
        payload["rank_count_total"] = len(by_count)
        payload["rank_count_agrees"] = agree
        lines.append(f"rank-count cross-check: {yes(agree)}")
        ok = agree
    emit(args, payload, "\n".join(lines))
    return EXIT_PASS if ok else EXIT_FAIL


def cmd_triple(args) -> int:
    from .triples import phi, psi, torsion_lattice

    s = Session(args)
    cat = s.catalog
    S = s.subcat(args.gens, args.subcat)
    trip = phi(cat, S)
    back = psi(cat, trip)
    round_trip = back.members == S.members
    fac, perp1 = cat.fac(S), cat.right_perp(S, 1)
    payload = {"input": S.names, "fac": fac.names, "right_perp1": perp1.names, "fac_equals_right_perp1":
               fac.members == perp1.members, "triple": trip.to_json(), "round_trip": round_trip, "psi": back.names}
    lines = [f"Fac = add({' ⊕ '.join(fac.names) or '0'})", f"S^⊥1 = add({' ⊕ '.join(perp1.names) or '0'})",
             f"Fac = S^⊥1: {fac.members == perp1.members}",f"C = add({' ⊕ '.join(trip.C.names) or '0'})", f"T = add({' ⊕ '.join(trip.T.names) or '0'})",
             f"F = add({' ⊕ '.join(trip.F.names) or '0'})"]
    lines += [f"  {k}: {yes(v)}" for k, v in trip.checks.items()]
    lines.append(f"τ-triple: {yes(trip.ok)}")
    lines.append(f"Ψ∘Φ round trip: {yes(round_trip)}")
    dot = torsion_lattice(cat).to_dot() if args.format == "dot" else None
    emit(args, payload, "\n".join(lines), dot)
    return EXIT_PASS if trip.ok and round_trip else EXIT_FAIL


def cmd_bijection(args) -> int:
    from .triples import bijection_report

    rep = bijection_report(Session(args).catalog)
    lines = [f"support τ-tilting subcategories: {len(rep.stilt)}", f"τ-triples: {len(rep.triples)}",
             f"1-tilting: {len(rep.tilting)}", f"cotorsion torsion triples: {len(rep.cotorsion_triples)}"]
    lines += [f"{k}: {yes(v)}" for k, v in rep.checks.items()]
    emit(args, rep.to_json(), "\n".join(lines))
    return EXIT_PASS if rep.ok else EXIT_FAIL


def cmd_leftweak(args) -> int:
    from .triples import left_weak_cases

    cases = left_weak_cases(Session(args).catalog)
    ok = all(c.agree for c in cases)
    negatives = sum(c.corrupted for c in cases)
    lines = [f"{c.label}: τ-triple {yes(c.tau_triple)}, left weak {yes(c.left_weak)}"
             + ("" if c.agree else "   DISAGREE") for c in cases]
    lines.append(f"{len(cases)} candidates ({negatives} corrupted): verdicts agree {yes(ok)}")
    emit(args, {"cases": [c.to_json() for c in cases], "corrupted": negatives, "ok": ok}, "\n".join(lines))
    return EXIT_PASS if ok else EXIT_FAIL


def cmd_quadruple(args) -> int:
    from .tautilt import enumerate_support_tau_tilting
    from .triples import PairError, quadruple_from_pair

    s = Session(args)
    cat = s.catalog
    A = cat.algebra
    if args.all:
        pairs = [(M, None) for M in enumerate_support_tau_tilting(cat)]
    else:
        M = s.subcat(args.gens, args.subcat)
        P = [A.quiver.vertex(v) for v in args.proj] if args.proj is not None else None
        pairs = [(M, P)]
    results, lines, ok = [], [], True
    for M, P in pairs:
        try:
            q = quadruple_from_pair(cat, M, P)
        except PairError as exc:
            raise InputError(str(exc))
        results.append({"M": M.names, **q.to_json()})
        ok = ok and q.ok and q.dagger_matches
        lines.append(f"M = add({' ⊕ '.join(M.names) or '0'}): C={q.C.names} T={q.T.names} F={q.F.names} "
                     f"D={q.D.names} dagger={q.dagger.names} τM⊕νP={q.expected.names} "
                     f"quadruple {yes(q.ok)} dagger {yes(q.dagger_matches)}")
    emit(args, {"quadruples": results, "ok": ok}, "\n".join(lines))
    return EXIT_PASS if ok else EXIT_FAIL


def cmd_torsion(args) -> int:
    from .triples import torsion_lattice

    s = Session(args)
    lat = torsion_lattice(s.catalog)
    lines = [f"{k}: add({' ⊕ '.join(T.names) or '0'})  functorially finite: {yes(ff)}"
             for k, (T, ff) in enumerate(zip(lat.classes, lat.functorially_finite))]
    lines.append(f"count: {len(lat.classes)}")
    emit(args, lat.to_json(), "\n".join(lines), lat.to_dot())
    return EXIT_PASS


# -- persistence -------------------------------------------------------------

DEMOS = ("two-piece", "cotorsion", "no-approximation")


def _regions(args) -> dict:
    regs = {}
    if getattr(args, "regions_file", None):
        regs.update(regions_from_document(load_document(args.regions_file)))
    return regs


def _region_arg(args, text: Optional[str], regs: dict):
    if text is None:
        raise InputError("a region is required (--region)")
    return regs[text] if text in regs else parse_region(text)


def _grid_points(grid: List[str]) -> list:
    try:
        return [as_value(x) for x in grid]
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"malformed grid point: {exc}") from exc


def _grid_payload(checks: List[dict]) -> List[dict]:
    def show(v):
        return v if isinstance(v, str) or v is None else [str(J) for J in v]

    return [{**c, "table": show(c["table"]), "direct": show(c["direct"])} for c in checks]


def _demo(name: str) -> dict:
    doc = load_document("persistence")
    return regions_from_document(doc)


def cmd_persist(args) -> int:
    from . import persist as ps

    act = args.action
    if act in ("hom", "ext"):
        I, J = parse_interval(args.intervals[0]), parse_interval(args.intervals[1])
        val = ps.hom_dim(I, J) if act == "hom" else ps.ext1_dim(I, J)
        payload = {"source": str(I), "target": str(J), "dim": val}
        if args.recheck:
            h, e = ps.discrete_hom_ext(I, J)
            payload["discretized"] = h if act == "hom" else e
        emit(args, payload, str(val))
        return EXIT_PASS if not args.recheck or payload["discretized"] == val else EXIT_FAIL
    if act == "oracle":
        pts = sorted(set(_grid_points(args.grid)))
        ivs = [ps.Interval(a, b) for a in pts for b in pts if a != ps.INF and a < b]
        bad = []
        for I in ivs:
            for J in ivs:
                got = (ps.hom_dim(I, J), ps.ext1_dim(I, J))
                want = ps.discrete_hom_ext(I, J)
                if got != want:
                    bad.append({"source": str(I), "target": str(J), "closed_form": got, "discretized": want})
        pairs = len(ivs) ** 2
        emit(args, {"intervals": len(ivs), "pairs": pairs, "mismatches": bad, "ok": not bad},
             f"{len(ivs)} intervals, {pairs} pairs, {len(bad)} mismatches: {yes(not bad)}")
        return EXIT_PASS if not bad else EXIT_FAIL
    regs = _regions(args)
    if act in ("fac", "sub", "perp0", "perp1", "left-perp1"):
        R = _region_arg(args, args.region, regs)
        fn = {"fac": ps.fac_region, "sub": ps.sub_region, "perp0": ps.perp0_region,
              "perp1": ps.perp1_region, "left-perp1": ps.left_perp1_region}[act]
        out = fn(R)
        emit(args, {"region": R.to_spec(), "result": out.to_spec()}, out.describe())
        return EXIT_PASS
    if act == "approx":
        R = _region_arg(args, args.region, regs)
        if args.interval:
            I = parse_interval(args.interval)
            ap = (ps.right_region_approximation if args.side == "right" else ps.left_region_approximation)(R, I)
            payload = {"query": str(I), "side": args.side, "exists": ap.exists,
                       "intervals": [str(J) for J in ap.intervals] if ap.exists else None}
            if ap.exists:
                payload["certified"] = ps.approximation_counterexample(R, ap) is None
            else:
                payload["witness_cell"] = ap.witness_cell.to_constraints()
            emit(args, payload, ap.render())
            return EXIT_PASS if ap.exists and payload["certified"] else EXIT_FAIL
        rows = ps.approximation_table(R, args.side)
        payload = {"rows": [r.to_json() for r in rows]}
        text, ok = ps.format_table(rows), True
        if args.grid:
            checks = _grid_payload(ps.table_grid_check(R, rows, _grid_points(args.grid), args.side))
            ok = all(c["agree"] and c["certified"] for c in checks)
            payload["grid_check"] = {"points": args.grid, "checks": checks, "ok": ok}
            text += f"\ngrid check over {{{', '.join(args.grid)}}} ({len(checks)} intervals): {yes(ok)}"
        emit(args, payload, text)
        return EXIT_PASS if ok else EXIT_FAIL
    if act == "demo":
        return _persist_demo(args, args.name)
    raise InputError(f"unknown persist action {act}")


def _persist_demo(args, name: str) -> int:
    from . import persist as ps

    regs = _demo(name)
    if name == "two-piece":
        T = regs["two_piece_T"]
        rep = ps.persistence_support_tau_tilting(T)
        lines = ["right T-approximations:", ps.format_table(rep.right_table), "",
                 f"Fac(T) = {rep.fac.describe()}", "", "projective sequences (minimal left approximations):"]
        lines += [f"  {r.text}   {r.condition}" for r in rep.projective_rows]
        grid = _grid_points(args.grid or ["0", "1/2", "1", "3/2", "inf"])
        checks = _grid_payload(ps.table_grid_check(T, rep.right_table, grid))
        table_ok = all(c["agree"] and c["certified"] for c in checks)
        lines.append(f"table grid check ({len(checks)} intervals): {yes(table_ok)}")
        claimed = {}
        for a in (x for x in grid if x < 1):
            P = ps.Interval(a, ps.INF)
            res = ps.check_sequence(P, [ps.Interval(0, 1)], [ps.Interval(1, ps.INF)])
            claimed[ps.fmt(a)] = res
            lines.append(f"k_[{ps.fmt(a)},∞) → k_[0,1) → k_[1,∞) → 0 exact: {yes(res['exact'])}"
                         f"  (Hom(k_[0,1), k_[1,∞)) = {ps.hom_dim(ps.Interval(0, 1), ps.Interval(1, ps.INF))})")
        if rep.rigidity_witness:
            I, J = rep.rigidity_witness
            lines.append(f"Ext¹({I}, {J}) = 1 with {J} in Fac(T)")
        v = rep.to_json()["verdict"]
        lines += [f"{k}: {yes(val)}" for k, val in v.items()]
        payload = rep.to_json()
        payload["table_grid_check"] = {"checks": checks, "ok": table_ok}
        payload["claimed_sequences"] = claimed
        payload["claimed_sequences_exact"] = all(r["exact"] for r in claimed.values())
        emit(args, payload, "\n".join(lines))
        return EXIT_PASS if rep.support else EXIT_FAIL
    if name == "cotorsion":
        C, D = regs["cotorsion_C"], regs["cotorsion_D"]
        rep = ps.tau_cotorsion_check(C, D)
        ref = ps.refute_cotorsion_pair(C, D)
        lines = ["right (C∩D)-approximations:", ps.format_table(rep.right_table), "",
                 f"⊥1 D = {rep.perp1.describe()}", f"C = ⊥1 D: {yes(rep.C_is_perp1_D)}",
                 "projective sequences:"]
        lines += [f"  {r.text}   {r.condition}" for r in rep.projective_rows]
        lines.append(f"τ-cotorsion pair: {yes(rep.ok)}")
        lines.append("cotorsion pair: " + ("refuted by " + f"{ref.witness} ({ref.reason})" if ref else "not refuted"))
        payload = rep.to_json()
        payload["cotorsion_refutation"] = ref.to_json() if ref else None
        emit(args, payload, "\n".join(lines))
        return EXIT_PASS if rep.ok and ref is not None and ref.witness.is_injective else EXIT_FAIL
    if name == "no-approximation":
        T, F = regs["split_T"], regs["split_F"]
        perp = ps.perp0_region(T)
        b = ps.Fraction(1, 2)
        I = ps.Interval(0, b)
        ap = ps.right_region_approximation(F, I)
        wit = []
        for a in (ps.Fraction(1, 4), ps.Fraction(1, 8), ps.Fraction(1, 3)):
            J = ps.witness_against(F, ap, [ps.Interval(a, b)])
            wit.append({"theta": str(ps.Interval(a, b)), "eta": str(J)})
        lines = [f"F = T^⊥0: {yes(perp.equals(F))}", f"right F-approximation of {I}: {ap.render()}"]
        lines += [f"  η: {w['eta']} -> {I} does not factor through θ: {w['theta']} -> {I}" for w in wit]
        payload = {"F_is_T_perp0": perp.equals(F), "query": str(I), "exists": ap.exists,
                   "witness_cell": ap.witness_cell.to_constraints() if ap.witness_cell else None, "witnesses": wit}
        emit(args, payload, "\n".join(lines))
        return EXIT_PASS if not ap.exists and perp.equals(F) else EXIT_FAIL
    raise InputError(f"unknown demo {name!r}; choose from {DEMOS}")


# -- representations of quivers ------------------------------------------------


def cmd_repq(args) -> int:
    from .repq import HypothesisError, lift_n_tilting, lift_support_tau_tilting

    s = Session(args)
    cat = s.catalog
    Q = quiver_from_document(load_document(args.quiver))
    S = s.subcat(args.gens, args.subcat)
    try:
        if args.action == "lift-stilt":
            rep = lift_support_tau_tilting(cat, S, Q, budget=args.budget)
            lines = [f"lifted: add({' ⊕ '.join(rep.lifted)})", f"inventory size: {rep.inventory_size} (cap {rep.cap})",
                     _stilt_text(rep.report)]
            payload, ok = rep.to_json(), rep.ok
            from .repq import TensorAlgebra

            payload["tensor_algebra"] = algebra_to_document(TensorAlgebra(cat.algebra, Q).algebra)
        else:
            rep = lift_n_tilting(cat, S, args.n, Q, budget=args.budget)
            lt = rep.lifted
            lines = [f"lifted: add({' ⊕ '.join(rep.lifted_names)})",
                     f"{args.n}-tilting base: {yes(rep.base.tilting)}",
                     f"Ext vanishing: {yes(lt.ext_vanishing)}",
                     f"projective dimension ≤ {args.n + 1}: {yes(lt.projective_dimension_ok)}"]
            for v, c in lt.coresolutions.items():
                terms = " -> ".join("⊕".join(t) or "0" for t in c) if c else "none"
                lines.append(f"  P{v}: 0 -> P -> {terms} -> 0   {yes(c is not None)}")
            lines.append(f"{args.n + 1}-tilting: {yes(lt.tilting)}")
            payload, ok = rep.to_json(), rep.ok
    except HypothesisError as exc:
        emit(args, {"ok": False, "hypothesis": False, "error": str(exc), "witness": exc.witness},
             f"FAIL: {exc}")
        return EXIT_FAIL
    emit(args, payload, "\n".join(lines))
    return EXIT_PASS if ok else EXIT_FAIL


def cmd_props(args) -> int:
    from . import props

    doc = load_document(args.input)
    if "regions" in doc and "vertices" not in doc:
        suites = [props.region_fac_idempotence(regions_from_document(doc))]
    else:
        Q = quiver_from_document(load_document(args.quiver)) if args.quiver else None
        suites = props.run_all(Session(args).catalog, Q)
    ok = all(r.ok for r in suites)
    lines = [f"{r.name}: {yes(r.ok)} ({r.checked} checked)" + "".join(f"\n  {f}" for f in r.failures[:10])
             for r in suites]
    emit(args, {"suites": [r.to_json() for r in suites], "ok": ok}, "\n".join(lines))
    return EXIT_PASS if ok else EXIT_FAIL


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--prime", type=int, default=None, help="characteristic (overrides the input file)")
    common.add_argument("--dim-bound", type=int, default=None, help="per-vertex dimension cap for inventories")
    common.add_argument("--budget", type=int, default=2 ** 22, help="candidate budget for enumerations")
    common.add_argument("--budget-subsets", type=int, default=24, help="largest inventory for subset enumeration")
    common.add_argument("--format", choices=("text", "json", "dot"), default="text")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized searches")
    common.add_argument("--recheck", action="store_true", help="re-verify reported witnesses from scratch")
    common.add_argument("-v", "--verbose", action="store_true")

    def gens_args(p):
        p.add_argument("--gens", nargs="*", default=None, help="member names of the generating subcategory")
        p.add_argument("--subcat", default=None, help="name of a subcategory listed in the input file")

    parser = argparse.ArgumentParser(prog="tiltlab", description="τ-tilting computations over bound quiver algebras")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("indecs", parents=[common], help="list indecomposables")
    p.add_argument("input")
    p.set_defaults(func=cmd_indecs)

    p = sub.add_parser("stilt", help="support τ-tilting subcategories")
    ss = p.add_subparsers(dest="action", required=True)
    q = ss.add_parser("verify", parents=[common])
    q.add_argument("input")
    gens_args(q)
    q.set_defaults(func=cmd_stilt)
    q = ss.add_parser("enumerate", parents=[common])
    q.add_argument("input")
    q.add_argument("--rank-count", action="store_true",
                   help="cross-check: tau-rigid with as many summands as support vertices")
    q.set_defaults(func=cmd_stilt)

    p = sub.add_parser("triple", parents=[common], help="τ-cotorsion torsion triple of a support τ-tilting subcategory")
    p.add_argument("input")
    gens_args(p)
    p.set_defaults(func=cmd_triple)

    p = sub.add_parser("quadruple", parents=[common], help="quadruple and dagger image of a support τ-tilting pair")
    p.add_argument("input")
    gens_args(p)
    p.add_argument("--proj", nargs="*", default=None, help="vertices of the projective part")
    p.add_argument("--all", action="store_true", help="run every support τ-tilting pair")
    p.set_defaults(func=cmd_quadruple)

    p = sub.add_parser("bijection", parents=[common], help="check Φ and Ψ against both enumerations")
    p.add_argument("input")
    p.set_defaults(func=cmd_bijection)

    p = sub.add_parser("leftweak", parents=[common], help="compare left weak and τ-triple verdicts on candidates")
    p.add_argument("input")
    p.set_defaults(func=cmd_leftweak)

    for name in ("torsion", "lattice"):
        p = sub.add_parser(name, parents=[common], help="torsion classes and their Hasse diagram")
        p.add_argument("input")
        p.set_defaults(func=cmd_torsion)

    p = sub.add_parser("props", parents=[common], help="run the structural property suites over a fixture")
    p.add_argument("input")
    p.add_argument("--quiver", default="a2", help="quiver for the adjunction suite ('' to skip)")
    p.set_defaults(func=cmd_props)

    p = sub.add_parser("persist", help="interval persistence modules")
    ps_ = p.add_subparsers(dest="action", required=True)
    for act in ("hom", "ext"):
        q = ps_.add_parser(act, parents=[common])
        q.add_argument("intervals", nargs=2, help="intervals such as '[1,inf)' '[0,2)'")
        q.set_defaults(func=cmd_persist)
    for act in ("fac", "sub", "perp0", "perp1", "left-perp1", "approx"):
        q = ps_.add_parser(act, parents=[common])
        q.add_argument("--region", required=True, help="region name from --regions-file or 'a >= 1; b = inf | ...'")
        q.add_argument("--regions-file", default="persistence")
        if act == "approx":
            q.add_argument("--interval", default=None, help="approximate one interval instead of printing the table")
            q.add_argument("--side", choices=("right", "left"), default="right")
            q.add_argument("--grid", nargs="*", default=None, help="check the table at intervals over these endpoints")
        q.set_defaults(func=cmd_persist)
    q = ps_.add_parser("oracle", parents=[common], help="closed forms against discretized Hom/Ext¹ on a grid")
    q.add_argument("--grid", nargs="+", default=["0", "1/4", "1/2", "3/4", "1", "3/2", "2", "inf"])
    q.set_defaults(func=cmd_persist)
    q = ps_.add_parser("demo", parents=[common])
    q.add_argument("name", choices=DEMOS)
    q.add_argument("--grid", nargs="*", default=None, help="endpoints for the grid checks (default 0 1/2 1 3/2 inf)")
    q.set_defaults(func=cmd_persist)

    p = sub.add_parser("repq", help="lifting to representations of a quiver")
    rs = p.add_subparsers(dest="action", required=True)
    for act in ("lift-stilt", "lift-tilt"):
        q = rs.add_parser(act, parents=[common])
        q.add_argument("input")
        q.add_argument("--quiver", required=True, help="file (or fixture) whose quiver is Q")
        gens_args(q)
        if act == "lift-tilt":
            q.add_argument("--n", type=int, default=1)
        q.set_defaults(func=cmd_repq)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code not in (0, None) else EXIT_PASS
    args.command_path = " ".join(x for x in (args.command, getattr(args, "action", None)) if x)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    set_default_seed(args.seed)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except BudgetError as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET


if __name__ == "__main__":
    sys.exit(main())
