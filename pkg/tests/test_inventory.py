import numpy as np
import pytest

from conftest import catalog
from tiltlab.algcore import Quiver, build_algebra
from tiltlab.inventory import (BudgetError, decompose, enumerate_indecomposables, is_indecomposable, is_isomorphic,
                               loewy_label)
from tiltlab.io import algebra_from_document, load_document
from tiltlab.modrep import conjugate, direct_sum, projective
from tiltlab.repq import TensorAlgebra


@pytest.mark.parametrize("name, count", [("a2", 3), ("a3_rad2", 5), ("cyclic3_rad2", 6), ("no_arrow", 2),
                                         ("empty", 0)])
def test_inventory_sizes(name, count):
    assert len(catalog(name).inventory) == count


def test_names_are_loewy_labels(cyc3):
    assert sorted(cyc3.inventory.names) == ["1", "1/2", "2", "2/3", "3", "3/1"]


def test_kronecker_inventory_at_small_bound():
    A = build_algebra(Quiver(["1", "2"], [("a", "1", "2"), ("b", "1", "2")]))
    inv = enumerate_indecomposables(A, 1)
    # the two simples and the three one-parameter modules k -> k over F2 with (a, b) in {(1,0),(0,1),(1,1)}
    assert len(inv) == 5


@pytest.mark.parametrize("cap", [1, 2])
def test_commutative_square_has_eleven_indecomposables(cap):
    A = algebra_from_document(load_document("a2"))
    square = TensorAlgebra(A, A.quiver).algebra
    assert len(enumerate_indecomposables(square, cap)) == 11


def test_budget_is_enforced():
    A = build_algebra(Quiver(["1", "2"], [("a", "1", "2"), ("b", "1", "2")]))
    with pytest.raises(BudgetError):
        enumerate_indecomposables(A, 3, budget=100)


def test_decompose_splits_a_sum_into_its_parts(a3):
    parts = [a3.inventory[i] for i in (0, 3, 3, 4)]
    X, _, _ = direct_sum(parts, a3.algebra)
    pieces = decompose(X)
    assert sorted(a3.inventory.identify(P) for P in pieces) == [0, 3, 3, 4]
    assert all(is_indecomposable(P) for P in pieces)


def test_isomorphism_survives_base_change(a3):
    rng = np.random.default_rng(1)
    X, _, _ = direct_sum([a3.inventory[3], a3.inventory[1]], a3.algebra)
    changes = []
    for d in X.dims:
        while True:
            g = rng.integers(0, 2, size=(d, d))
            if d == 0 or round(np.linalg.det(g)) % 2:
                break
        changes.append(g)
    Y = conjugate(X, changes)
    assert is_isomorphic(X, Y)
    assert not is_isomorphic(X, direct_sum([a3.inventory[3], a3.inventory[0]], a3.algebra)[0])


def test_loewy_label_of_projectives(a3):
    A = a3.algebra
    assert [loewy_label(projective(A, i)) for i in range(3)] == ["1/2", "2/3", "3"]
