import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tiltlab import persist as ps
from tiltlab.io import load_document, regions_from_document
from tiltlab.persist import INF, Interval, Region

GRID = [Fraction(0), Fraction(1, 4), Fraction(1, 2), Fraction(3, 4), Fraction(1), Fraction(3, 2), Fraction(2), INF]
GRID_INTERVALS = [Interval(a, b) for a, b in itertools.combinations(GRID, 2)]
REGIONS = regions_from_document(load_document("persistence"))


def k(a, b):
    return Interval(ps.as_value(a), ps.as_value(b))


def test_grid_has_twenty_eight_intervals():
    assert len(GRID_INTERVALS) == 28


@pytest.mark.parametrize("source, target, expected", [
    (k(1, "inf"), k(0, 2), 1),      # quotient onto [1,2) followed by the inclusion
    (k(0, "inf"), k(1, "inf"), 0),
    (k(0, 1), k(1, "inf"), 0),
    (k(0, 2), k(0, 1), 1),
    (k(0, 1), k(0, 2), 0),
    (k("1/2", 1), k(0, 1), 1),
])
def test_hom_values(source, target, expected):
    assert ps.hom_dim(source, target) == expected


@pytest.mark.parametrize("source, target, expected", [
    (k(0, 1), k(1, "inf"), 1),
    (k(0, 1), k(1, 2), 1),
    (k(1, 2), k(0, 1), 0),
    (k(0, "inf"), k(1, 2), 0),      # projectives have no extensions
    (k(0, 2), k(1, 3), 1),
    (k(0, 2), k(2, 3), 1),
])
def test_ext_values(source, target, expected):
    assert ps.ext1_dim(source, target) == expected


def test_closed_forms_agree_with_discretized_modules_on_the_grid():
    mismatches = []
    for I in GRID_INTERVALS:
        for J in GRID_INTERVALS:
            h, e = ps.discrete_hom_ext(I, J)
            if (h, e) != (ps.hom_dim(I, J), ps.ext1_dim(I, J)):
                mismatches.append((str(I), str(J)))
    assert mismatches == []


def test_extension_middle_term():
    assert ps.extension_middle(k(0, 2), k(1, 3)) == [k(0, 3), k(1, 2)]
    assert ps.extension_middle(k(0, 1), k(1, 2)) == [k(0, 2)]


def test_composition_of_canonical_maps():
    f = ps.CanonicalMorphism(k(1, 3), k(0, 2))
    g = ps.CanonicalMorphism(k(0, 2), k(0, 1))
    assert ps.compose(g, f).is_zero
    h = ps.CanonicalMorphism(k(0, 2), k(0, 2))
    assert not ps.compose(h, f).is_zero


def test_discretize_rejects_too_few_samples():
    with pytest.raises(ValueError, match="insufficient sample set"):
        ps.discretize([k(0, 1), k("1/2", 2)], samples=[0, 1])


# -- regions -------------------------------------------------------------------


constants = st.sampled_from(["0", "1/2", "1", "2"])


@st.composite
def boxes(draw):
    cons = []
    for var in ("a", "b"):
        kind = draw(st.sampled_from(["", ">=", ">", "<=", "<", "=", "range"]))
        if kind == "range":
            lo, hi = sorted(draw(st.lists(constants, min_size=2, max_size=2, unique=True)), key=Fraction)
            cons += [f"{var} >= {lo}", f"{var} < {hi}"]
        elif kind:
            cons.append(f"{var} {kind} {draw(constants)}")
        if var == "b" and draw(st.booleans()):
            cons = [c for c in cons if not c.startswith("b")] + ["b = inf"]
    return cons


regions = st.lists(boxes(), min_size=1, max_size=3).map(Region.from_spec)
REGION_SETTINGS = settings(max_examples=30, deadline=None)


@REGION_SETTINGS
@given(regions)
def test_fac_and_sub_are_idempotent(R):
    for close in (ps.fac_region, ps.sub_region):
        once = close(R)
        assert close(once).equals(once)


@REGION_SETTINGS
@given(regions)
def test_fac_contains_the_region(R):
    F = ps.fac_region(R)
    for I in ps.members(R, R.constants()):
        assert F.contains(I)


@REGION_SETTINGS
@given(regions, st.sampled_from(GRID_INTERVALS[:21]))
def test_existing_approximations_are_certified(R, Q):
    for fn in (ps.right_region_approximation, ps.left_region_approximation):
        ap = fn(R, Q)
        if ap.exists:
            assert all(R.contains(J) for J in ap.intervals)
            assert ps.approximation_counterexample(R, ap) is None
        else:
            assert ap.witness_cell is not None


def test_region_equality_is_exact():
    A = Region.from_spec([["a >= 1"]])
    B = Region.from_spec([["a >= 1", "b <= 2"], ["a >= 1", "b > 2"]])
    assert A.equals(B)
    assert not A.equals(Region.from_spec([["a > 1"]]))


def test_fac_of_the_tilting_family():
    fac = ps.fac_region(REGIONS["two_piece_T"])
    assert fac.equals(Region.from_spec([["a = 0", "b <= 1"], ["a >= 1"]]))


def test_perp_of_the_second_family_is_its_torsion_free_part():
    assert ps.perp0_region(REGIONS["split_T"]).equals(REGIONS["split_F"])


# -- the worked examples -------------------------------------------------------


def test_right_approximation_table_of_the_tilting_family():
    rows = ps.approximation_table(REGIONS["two_piece_T"])
    assert ps.format_table(rows).splitlines() == [
        "k_[0,b) → k_[0,b)   0 = a < b ≤ 1",
        "k_[1,∞) → k_[a,b)   0 ≤ a < 1 < b ≤ ∞",
        "0 → k_[a,b)         0 < a < b ≤ 1",
        "k_[a,∞) → k_[a,b)   1 ≤ a < b ≤ ∞",
    ]
    checks = ps.table_grid_check(REGIONS["two_piece_T"], rows, ["0", "1/2", "1", "3/2", "inf"])
    assert len(checks) == 10 and all(c["agree"] and c["certified"] for c in checks)


def test_tilting_family_is_not_rigid():
    rep = ps.persistence_support_tau_tilting(REGIONS["two_piece_T"])
    assert rep.contravariantly_finite
    assert not rep.rigid
    I, J = rep.rigidity_witness
    assert ps.ext1_dim(I, J) == 1 and ps.fac_region(REGIONS["two_piece_T"]).contains(J)


def test_minimal_projective_sequences_of_the_tilting_family():
    rows = ps.projective_sequence_table(REGIONS["two_piece_T"])
    assert [(r.condition, r.text) for r in rows] == [
        ("a = 0", "k_[0,∞) → k_[0,1) → 0 → 0"),
        ("0 < a < 1", "k_[a,∞) → k_[0,1) → k_[0,a) → 0"),
        ("a ≥ 1", "k_[a,∞) → k_[a,∞) → 0 → 0"),
    ]


def test_sequence_through_the_unit_interval_is_not_exact():
    res = ps.check_sequence(k("1/2", "inf"), [k(0, 1)], [k(1, "inf")])
    assert res["f_left_approximation"]
    assert not res["g_surjective"] and not res["exact"]


def test_tau_cotorsion_pair_and_refutation():
    C, D = REGIONS["cotorsion_C"], REGIONS["cotorsion_D"]
    rep = ps.tau_cotorsion_check(C, D)
    assert rep.ok
    assert ps.format_table(rep.right_table).splitlines() == [
        "0 → k_[a,b)         0 ≤ a < b ≤ 1",
        "k_[1,∞) → k_[a,b)   0 ≤ a < 1 < b ≤ ∞",
        "k_[a,∞) → k_[a,b)   1 ≤ a < b ≤ ∞",
    ]
    ref = ps.refute_cotorsion_pair(C, D)
    assert ref is not None and ref.witness.is_injective
    assert ps.left_region_approximation(D, ref.witness).intervals == []


def test_no_right_approximation_of_short_intervals_by_the_torsion_free_family():
    F = REGIONS["split_F"]
    for b in (Fraction(1, 2), Fraction(3, 4), Fraction(1, 3)):
        Q = Interval(Fraction(0), b)
        ap = ps.right_region_approximation(F, Q)
        assert not ap.exists
        for a in (b / 2, b / 3, b / 10):
            J = ps.witness_against(F, ap, [Interval(a, b)])
            assert F.contains(J) and ps.hom_dim(J, Q) and J.a < a


def test_parse_and_render_round_trip():
    R = Region.from_spec(REGIONS["cotorsion_C"].to_spec())
    assert R.equals(REGIONS["cotorsion_C"])
    assert str(k("1/2", "inf")) == "k_[1/2,∞)"
