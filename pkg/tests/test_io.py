import json

import pytest

from tiltlab.io import (InputError, algebra_from_document, algebra_to_document, load_document, parse_interval,
                        parse_region, resolve)
from tiltlab.persist import INF, Interval


def test_fixtures_resolve_by_name():
    assert resolve("a2").name == "a2.toml"
    with pytest.raises(InputError):
        resolve("no_such_fixture")


def test_algebra_round_trips_through_a_document(tmp_path):
    A = algebra_from_document(load_document("cyclic3_rad2"))
    doc = algebra_to_document(A)
    path = tmp_path / "alg.json"
    path.write_text(json.dumps(doc))
    B = algebra_from_document(load_document(str(path)))
    assert B.fingerprint() == A.fingerprint()


def test_prime_override():
    assert algebra_from_document(load_document("a2"), prime=3).p == 3


def test_bad_documents(tmp_path):
    bad = tmp_path / "bad.toml"
    bad.write_text("vertices = [")
    with pytest.raises(InputError):
        load_document(str(bad))
    with pytest.raises(InputError):
        algebra_from_document({"arrows": []})
    with pytest.raises(InputError):
        algebra_from_document({"vertices": ["1"], "arrows": [{"name": "x", "from": "1", "to": "1"}]})


@pytest.mark.parametrize("text, expected", [
    ("[0,1)", Interval(0, 1)),
    ("[1/2, inf)", Interval(0.5, INF)),
    ("2,3", Interval(2, 3)),
])
def test_parse_interval(text, expected):
    assert parse_interval(text) == expected


@pytest.mark.parametrize("text", ["[1,x)", "[2,1)", "", "[1,1)"])
def test_malformed_intervals(text):
    with pytest.raises(InputError):
        parse_interval(text)


def test_parse_region_string_form():
    R = parse_region("a >= 1; b = inf | a = 0; b <= 1")
    assert R.contains(Interval(0, 1)) and R.contains(Interval(3, INF)) and not R.contains(Interval(1, 2))
    with pytest.raises(InputError):
        parse_region("a >> 1")
