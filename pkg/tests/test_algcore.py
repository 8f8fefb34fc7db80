import numpy as np
import pytest

from tiltlab.algcore import AlgebraError, Quiver, build_algebra, linear_quiver, path_algebra


def linear_a3_rad2():
    return build_algebra(Quiver(["1", "2", "3"], [("a", "1", "2"), ("b", "2", "3")]), ["a*b"])


def test_linear_a3_modulo_radical_square_has_dimension_five():
    # three idempotents and two arrows; the length-two path is killed
    A = linear_a3_rad2()
    assert A.dim == 5
    assert A.basis_between(0, 2) == []


def test_path_algebra_without_relations():
    assert build_algebra(Quiver(["1", "2"], [("a", "1", "2")])).dim == 3
    assert build_algebra(Quiver(["1", "2"], [("a", "1", "2"), ("b", "1", "2")])).dim == 4
    assert build_algebra(linear_quiver(4)).dim == 10


def test_cycle_needs_relations():
    q = Quiver(["1", "2", "3"], [("a", "1", "2"), ("b", "2", "3"), ("c", "3", "1")])
    with pytest.raises(AlgebraError):
        build_algebra(q, [])
    assert build_algebra(q, ["a*b", "b*c", "c*a"]).dim == 6


def test_loop_with_nilpotency_relation():
    A = build_algebra(Quiver(["1"], [("x", "1", "1")]), ["x*x*x"])
    assert A.dim == 3


def test_commutativity_style_relation_over_f3():
    q = Quiver(["1", "2"], [("a", "1", "2"), ("b", "1", "2"), ("c", "2", "2")])
    A = build_algebra(q, [["c*c"], ["a*c", "b*c"]], p=3)
    # e1, e2, a, b, c and the single surviving class a*c = -b*c
    assert A.dim == 6


def test_multiplication_is_associative():
    A = build_algebra(Quiver(["1", "2", "3"], [("a", "1", "2"), ("b", "2", "3")]))
    M = A.mult
    n = A.dim
    rng = np.random.default_rng(0)
    for _ in range(20):
        u, v, w = (rng.integers(0, 2, n) for _ in range(3))
        left = A.multiply(A.multiply(u, v), w)
        right = A.multiply(u, A.multiply(v, w))
        assert np.array_equal(left % 2, right % 2)
    assert M.shape[0] == n


def test_unknown_arrow_in_relation_is_rejected():
    with pytest.raises(ValueError):
        build_algebra(Quiver(["1", "2"], [("a", "1", "2")]), ["a*z"])


def test_opposite_algebra_reverses_paths():
    A = linear_a3_rad2()
    op = A.opposite()
    assert op.dim == A.dim
    assert op.opposite().fingerprint() == A.fingerprint()


def test_path_algebra_helper_matches_build():
    A = path_algebra(["1", "2"], [("a", "1", "2")])
    assert A.dim == 3 and A.p == 2
