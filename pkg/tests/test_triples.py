import pytest

from conftest import catalog, subcat
from tiltlab.tautilt import enumerate_support_tau_tilting
from tiltlab.triples import (PairError, bijection_report, enumerate_torsion_classes, left_weak_cases, phi, psi,
                             quadruple_from_pair, torsion_lattice, verify_cotorsion_pair)


def names(S):
    return sorted(S.names)


def test_phi_of_linear_a3_example(a3):
    S = subcat(a3, "1/2", "1", "3")
    trip = phi(a3, S)
    assert trip.ok
    assert names(trip.C) == sorted(["1/2", "1", "3", "2/3"])
    assert names(trip.F) == ["2"]
    assert psi(a3, trip).members == S.members


def test_phi_of_all_projectives(a3):
    trip = phi(a3, subcat(a3, "1/2", "2/3", "3"))
    assert names(trip.C) == sorted(["1/2", "2/3", "3"])
    assert trip.T.members == tuple(range(a3.n)) and not trip.F.members


@pytest.mark.parametrize("name", ["a2", "a3_rad2", "cyclic3_rad2", "no_arrow"])
def test_bijection_on_fixture(name):
    rep = bijection_report(catalog(name))
    assert rep.ok, rep.checks


@pytest.mark.parametrize("name", ["a2", "a3_rad2", "cyclic3_rad2"])
def test_left_weak_equals_tau_triple_verdict(name):
    cases = left_weak_cases(catalog(name))
    assert sum(c.corrupted and not c.tau_triple for c in cases) >= 3
    assert all(c.agree for c in cases)


@pytest.mark.parametrize("name", ["a2", "a3_rad2"])
def test_dagger_on_every_pair(name):
    cat = catalog(name)
    for M in enumerate_support_tau_tilting(cat):
        q = quadruple_from_pair(cat, M)
        assert q.ok and q.dagger_matches, M.names


def test_explicit_projective_part_must_annihilate(a2):
    with pytest.raises(PairError):
        quadruple_from_pair(a2, subcat(a2, "1/2"), [0])


def test_torsion_lattice_of_a2(a2):
    lat = torsion_lattice(a2)
    assert len(lat.classes) == 5 and all(lat.functorially_finite)
    assert len(lat.covers) == 5
    dot = lat.to_dot()
    assert dot.startswith("digraph") and dot.count("->") == 5


def test_torsion_class_counts_match_stilt_counts():
    for name in ("a3_rad2", "cyclic3_rad2"):
        cat = catalog(name)
        assert len(enumerate_torsion_classes(cat)) == len(enumerate_support_tau_tilting(cat))


def test_tilting_gives_a_cotorsion_pair(a3):
    trip = phi(a3, subcat(a3, "1/2", "2/3", "3"))
    assert verify_cotorsion_pair(a3, trip.C, trip.T).ok
    non_tilting = phi(a3, subcat(a3, "1/2", "1", "3"))
    assert not verify_cotorsion_pair(a3, non_tilting.C, non_tilting.T).ok
