"""End-to-end acceptance checks, all driven through the command-line interface.

Every criterion is a function returning named parts, each ``(ok, detail)``.
Under pytest each part is its own test; the terminal summary (and running this
file as a script) prints one PASS/FAIL line per criterion.
"""

import json
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))
from conftest import run_cli  # noqa: E402

RESULTS = {}


def cli_json(*argv):
    proc = run_cli(*argv, "--format", "json")
    if proc.returncode not in (0, 1):
        raise RuntimeError(f"tiltlab {' '.join(argv)} exited {proc.returncode}: {proc.stderr}")
    return json.loads(proc.stdout), proc.returncode


def names(xs):
    return sorted(xs)


# ---------------------------------------------------------------------------


def criterion_1():
    inv, _ = cli_json("indecs", "cyclic3_rad2")
    ver, _ = cli_json("stilt", "verify", "cyclic3_rad2", "--gens", "2/3", "2", "1/2")
    tri, _ = cli_json("triple", "cyclic3_rad2", "--gens", "2/3", "2", "1/2")
    fac, perp = names(tri["fac"]), names(tri["right_perp1"])
    return {
        "six indecomposables": (inv["count"] == 6, f"count {inv['count']}"),
        "tau-tilting": (ver["verdict"]["tau_tilting"], str(ver["verdict"])),
        "Fac and perp": (fac == names(["2/3", "2", "1/2", "1"]) and perp == names(fac + ["3/1"]) and fac != perp,
                         f"Fac {fac}, perp {perp}"),
    }


def criterion_2():
    inv, _ = cli_json("indecs", "a3_rad2")
    pd = {r["name"]: r["projective_dimension"] for r in inv["indecomposables"]}
    tri, _ = cli_json("triple", "a3_rad2", "--gens", "1/2", "1", "3")
    C = names(tri["triple"]["C"])
    return {
        "pd S1 = 2": (pd["1"] == 2, f"pd {pd['1']}"),
        "C component": (C == names(["1/2", "1", "3", "2/3"]) and tri["triple"]["verdict"], f"C {C}"),
        "round trip": (tri["round_trip"], f"psi {tri['psi']}"),
    }


def criterion_3():
    parts = {}
    for fx in ("a3_rad2", "cyclic3_rad2", "a2"):
        rep, _ = cli_json("bijection", fx)
        failed = [k for k, v in rep["checks"].items() if not v]
        parts[fx] = (rep["ok"], f"{len(rep['support_tau_tilting'])} ↔ {len(rep['tau_triples'])}, "
                                f"{len(rep['tilting'])} tilting, failed {failed}")
    return parts


def criterion_4():
    parts = {}
    for fx in ("a3_rad2", "cyclic3_rad2", "a2"):
        rep, _ = cli_json("leftweak", fx)
        negatives = sum(c["corrupted"] and not c["tau_triple"] for c in rep["cases"])
        parts[fx] = (rep["ok"] and negatives >= 3, f"{len(rep['cases'])} candidates, {negatives} negative controls")
    return parts


def criterion_5():
    parts = {}
    for fx in ("a2", "a3_rad2"):
        rep, _ = cli_json("quadruple", fx, "--all")
        bad = [q["M"] for q in rep["quadruples"]
               if names(q["dagger"]) != names(q["tau_M_plus_nu_P"]) or not q["verdict"]["quadruple"]]
        parts[fx] = (rep["ok"] and not bad, f"{len(rep['quadruples'])} pairs, mismatches {bad}")
    return parts


def criterion_6():
    en, _ = cli_json("stilt", "enumerate", "a2", "--rank-count")
    lat, _ = cli_json("torsion", "a2")
    ff = lat.get("functorially_finite", [])
    return {
        "5 support tau-tilting": (en["count"] == 5 and en["rank_count_agrees"], f"count {en['count']}"),
        "5 torsion classes, all functorially finite": (len(lat["classes"]) == 5 and all(ff) and len(ff) == 5,
                                                      f"{len(lat['classes'])} classes, ff {ff}"),
    }


EXPECTED_TABLE_33 = [
    "k_[0,b) → k_[0,b)   0 = a < b ≤ 1",
    "k_[1,∞) → k_[a,b)   0 ≤ a < 1 < b ≤ ∞",
    "0 → k_[a,b)         0 < a < b ≤ 1",
    "k_[a,∞) → k_[a,b)   1 ≤ a < b ≤ ∞",
]


def criterion_7():
    grid = ["0", "1/2", "1", "3/2", "inf"]
    text = run_cli("persist", "approx", "--region", "two_piece_T", "--grid", *grid).stdout.splitlines()
    demo, _ = cli_json("persist", "demo", "two-piece", "--grid", *grid)
    table_ok = text[:4] == EXPECTED_TABLE_33 and demo["table_grid_check"]["ok"]
    v = demo["verdict"]
    seq = demo["claimed_sequences"]
    return {
        "table": (table_ok, f"{len(demo['table_grid_check']['checks'])} grid intervals"),
        "verdict": (v["support_tau_tilting"], f"rigid {v['rigid']}, witness Ext¹{tuple(demo['rigidity_witness'] or ())}"),
        "claimed sequences": (demo["claimed_sequences_exact"],
                              ", ".join(f"a={a}: g surjective {r['g_surjective']}" for a, r in seq.items())),
    }


def criterion_8():
    c42, _ = cli_json("persist", "demo", "cotorsion")
    c76, _ = cli_json("persist", "demo", "no-approximation")
    ref = c42["cotorsion_refutation"]
    return {
        "tau-cotorsion pair": (c42["verdict"]["tau_cotorsion_pair"], str(c42["verdict"])),
        "cotorsion refuted by an injective": (bool(ref) and ref["injective"], str(ref)),
        "no right F-approximation": (c76["F_is_T_perp0"] and not c76["exists"] and len(c76["witnesses"]) >= 3,
                                     f"witnesses {[w['eta'] for w in c76['witnesses']]}"),
    }


def criterion_9():
    rep, _ = cli_json("persist", "oracle", "--grid", "0", "1/4", "1/2", "3/4", "1", "3/2", "2", "inf")
    return {"grid oracle": (rep["ok"] and rep["pairs"] == 784, f"{rep['pairs']} pairs, "
                                                               f"{len(rep['mismatches'])} mismatches")}


def criterion_10():
    lift, code = cli_json("repq", "lift-stilt", "a2", "--quiver", "a2", "--gens", "1")
    bad, bad_code = cli_json("repq", "lift-stilt", "kernel_violation", "--quiver", "a2", "--subcat", "violating")
    return {
        "lift passes": (code == 0 and lift["ok"], f"lifted {lift['lifted']}"),
        "hypothesis rejected": (bad_code == 1 and not bad["hypothesis"] and "1/2 -> 1" in bad["error"], bad["error"]),
    }


def criterion_11():
    zero, c0 = cli_json("repq", "lift-tilt", "a2", "--quiver", "a2", "--gens", "2", "1/2", "--n", "0")
    one, c1 = cli_json("repq", "lift-tilt", "a2", "--quiver", "a2", "--gens", "1/2", "1", "--n", "1")
    cores = one["lifted"]["coresolutions"]
    lengths = {v: (len(c) - 1 if c else None) for v, c in cores.items()}
    return {
        "n=0 gives 1-tilting": (c0 == 0 and zero["ok"], f"lifted {zero['lifted_names']}"),
        "n=1 gives 2-tilting": (c1 == 0 and one["ok"] and all(x is not None and x <= 2 for x in lengths.values())
                                and 2 in lengths.values(), f"coresolution lengths {lengths}"),
    }


def criterion_12():
    parts = {}
    for fx in ("a2", "a3_rad2", "cyclic3_rad2", "no_arrow", "empty", "kernel_violation", "persistence"):
        rep, _ = cli_json("props", fx)
        parts[fx] = (rep["ok"], ", ".join(f"{s['name']} {s['checked']}" for s in rep["suites"]))
    return parts


CRITERIA = {n: globals()[f"criterion_{n}"] for n in range(1, 13)}


def evaluate(n):
    if n not in RESULTS:
        RESULTS[n] = CRITERIA[n]()
    return RESULTS[n]


def summary_line(n):
    parts = RESULTS[n]
    ok = all(p[0] for p in parts.values())
    detail = "; ".join(f"{k} {'PASS' if p[0] else 'FAIL'}" for k, p in parts.items())
    return f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  ({detail})"


PARTS = {
    1: ["six indecomposables", "tau-tilting", "Fac and perp"],
    2: ["pd S1 = 2", "C component", "round trip"],
    3: ["a3_rad2", "cyclic3_rad2", "a2"],
    4: ["a3_rad2", "cyclic3_rad2", "a2"],
    5: ["a2", "a3_rad2"],
    6: ["5 support tau-tilting", "5 torsion classes, all functorially finite"],
    7: ["table", "verdict", "claimed sequences"],
    8: ["tau-cotorsion pair", "cotorsion refuted by an injective", "no right F-approximation"],
    9: ["grid oracle"],
    10: ["lift passes", "hypothesis rejected"],
    11: ["n=0 gives 1-tilting", "n=1 gives 2-tilting"],
    12: ["a2", "a3_rad2", "cyclic3_rad2", "no_arrow", "empty", "kernel_violation", "persistence"],
}


@pytest.mark.parametrize("criterion, part", [(n, p) for n, ps in PARTS.items() for p in ps],
                         ids=[f"criterion{n}-{p.replace(' ', '_')}" for n, ps in PARTS.items() for p in ps])
def test_acceptance(criterion, part):
    ok, detail = evaluate(criterion)[part]
    assert ok, detail


if __name__ == "__main__":
    for n in CRITERIA:
        evaluate(n)
        print(summary_line(n))
