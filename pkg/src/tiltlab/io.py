"""Input files: algebras, module literals, named subcategories, quivers and persistence regions.

Files are TOML or JSON.  An algebra file looks like::

    vertices = ["1", "2", "3"]
    arrows = [{name = "a", from = "1", to = "2"}, {name = "b", from = "2", to = "3"}]
    relations = [["a*b"]]
    prime = 2
    dim_bound = 2

    [subcats]
    example = ["1/2", "1", "3"]

    [[modules]]
    name = "T1"
    dims = {"1" = 1, "2" = 1}
    action = {"a" = [[1]]}

Region files describe families of interval modules as lists of boxes, each a
list of constraints on the endpoints ``a`` and ``b``::

    [regions]
    T = [["a >= 1", "b = inf"], ["a = 0", "b <= 1"]]
"""

from __future__ import annotations

import json
import os
import re
import sys
from pathlib import Path as FsPath
from typing import Dict, List, Optional

if sys.version_info >= (3, 11):
    import tomllib
else:  # pragma: no cover - exercised on 3.10
    import tomli as tomllib

from .algcore import BoundQuiverAlgebra, Quiver, build_algebra
from .modrep import FdModule, module_from_literal
from .persist import Interval, Region, as_value

FIXTURE_DIR = FsPath(__file__).resolve().parent / "fixtures"


class InputError(ValueError):
    """Malformed or inconsistent input (CLI exit code 2)."""


def resolve(path: str) -> FsPath:
    """A filesystem path, or the name of a bundled fixture (with or without extension)."""
    p = FsPath(path)
    if p.exists():
        return p
    for cand in (FIXTURE_DIR / path, FIXTURE_DIR / f"{path}.toml", FIXTURE_DIR / f"{path}.json"):
        if cand.exists():
            return cand
    raise InputError(f"no such file or fixture: {path}")


def load_document(path: str) -> dict:
    p = resolve(path)
    try:
        if p.suffix == ".json":
            return json.loads(p.read_text())
        return tomllib.loads(p.read_text())
    except (json.JSONDecodeError, tomllib.TOMLDecodeError) as exc:
        raise InputError(f"cannot parse {p}: {exc}") from exc


def quiver_from_document(doc: dict) -> Quiver:
    try:
        vertices = [str(v) for v in doc["vertices"]]
        arrows = [(str(a["name"]), str(a["from"]), str(a["to"])) for a in doc.get("arrows", [])]
    except (KeyError, TypeError) as exc:
        raise InputError(f"malformed quiver description: missing {exc}") from exc
    try:
        return Quiver(vertices, arrows)
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def algebra_from_document(doc: dict, prime: Optional[int] = None) -> BoundQuiverAlgebra:
    quiver = quiver_from_document(doc)
    p = int(prime if prime is not None else doc.get("prime", 2))
    rels = doc.get("relations", [])
    try:
        return build_algebra(quiver, rels, length_bound=doc.get("length_bound"), p=p)
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def modules_from_document(A: BoundQuiverAlgebra, doc: dict) -> List[FdModule]:
    out = []
    for m in doc.get("modules", []):
        try:
            out.append(module_from_literal(A, m.get("dims", {}), m.get("action", {}), name=m.get("name")))
        except (ValueError, KeyError) as exc:
            raise InputError(f"bad module literal {m.get('name')!r}: {exc}") from exc
    return out


def algebra_to_document(A: BoundQuiverAlgebra) -> dict:
    """Algebra file contents (relations written as ``coeff*path`` term lists)."""
    q = A.quiver
    rels = []
    for r in A.relations:
        terms = []
        for path, c in sorted(r.items(), key=lambda kv: (len(kv[0][1]), kv[0])):
            name = q.path_name(path)
            terms.append(name if c == 1 else f"{c}*{name}")
        rels.append(terms)
    return {"vertices": list(q.vertices),
            "arrows": [{"name": a.name, "from": q.vertices[a.source], "to": q.vertices[a.target]} for a in q.arrows],
            "relations": rels, "prime": A.p}


def parse_interval(text: str) -> Interval:
    """``[a,b)``, ``a,b`` or ``[a, inf)``."""
    m = re.fullmatch(r"\s*\[?\s*([^,\s]+)\s*,\s*([^)\s]+)\s*\)?\s*", text)
    if not m:
        raise InputError(f"malformed interval {text!r}")
    try:
        return Interval(as_value(m.group(1)), as_value(m.group(2)))
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"malformed interval {text!r}: {exc}") from exc


def parse_region(spec) -> Region:
    """A region from a list of boxes, or from ``"a >= 1; b = inf | a = 0; b <= 1"``."""
    if isinstance(spec, str):
        spec = [[c for c in box.split(";") if c.strip()] for box in spec.split("|")]
    try:
        return Region.from_spec(spec)
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"malformed region: {exc}") from exc


def regions_from_document(doc: dict) -> Dict[str, Region]:
    return {name: parse_region(spec) for name, spec in doc.get("regions", {}).items()}
