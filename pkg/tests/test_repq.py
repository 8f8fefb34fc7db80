import pytest

from conftest import catalog, subcat
from tiltlab import props
from tiltlab.repq import (HypothesisError, TensorAlgebra, e_i, e_i_lambda, e_i_rho, ext_sequence_check,
                          kernel_closure_violation, lift_n_tilting, lift_support_tau_tilting, standard_sequence)


@pytest.fixture(scope="module")
def setup():
    cat = catalog("a2")
    Q = cat.algebra.quiver
    return cat, Q, TensorAlgebra(cat.algebra, Q)


def test_tensor_algebra_is_the_commutative_square(setup):
    cat, Q, T = setup
    assert T.algebra.dim == 9
    assert list(T.algebra.quiver.vertices) == ["11", "21", "12", "22"]


def test_right_adjoint_values(setup):
    cat, Q, T = setup
    S1 = cat.inventory[cat.inventory.index("1")]
    assert [X.dims for X in e_i_rho(S1, 0, Q).values] == [(1, 0), (0, 0)]
    assert [X.dims for X in e_i_rho(S1, 1, Q).values] == [(1, 0), (1, 0)]
    assert [X.dims for X in e_i_lambda(S1, 0, Q).values] == [(1, 0), (1, 0)]
    assert e_i(e_i_lambda(S1, 0, Q), 0).dims == S1.dims


def test_module_round_trip(setup):
    cat, Q, T = setup
    for B in cat.inventory:
        for i in range(Q.n):
            X = e_i_rho(B, i, Q)
            back = T.from_module(T.to_module(X))
            assert [v.dims for v in back.values] == [v.dims for v in X.values]


def test_adjunction_identities(setup):
    cat, Q, _ = setup
    assert props.adjunction_identities(cat, Q).ok


def test_standard_sequence_and_ext_sequence_identity(setup):
    cat, Q, T = setup
    reps = [f(B, j, Q) for B in cat.inventory for j in range(Q.n) for f in (e_i_lambda, e_i_rho)]
    for X in reps:
        assert standard_sequence(T, X).exact
    for X in reps[:6]:
        for Y in reps[:6]:
            assert ext_sequence_check(T, X, Y)["ok"]


def test_lift_of_simple_top(setup):
    cat, Q, _ = setup
    rep = lift_support_tau_tilting(cat, subcat(cat, "1"), Q)
    assert rep.ok and rep.lifted == ["11", "11/12"]


def test_lift_of_simple_socle(setup):
    cat, Q, _ = setup
    rep = lift_support_tau_tilting(cat, subcat(cat, "2"), Q)
    assert rep.ok and rep.lifted == ["21", "21/22"]


def test_kernel_closure_violation_is_named():
    cat = catalog("kernel_violation")
    S = subcat(cat, "1/2", "1")
    viol = kernel_closure_violation(cat, S)
    assert viol["source"] == ["1/2"] and viol["target"] == "1" and viol["kernel_summand"] == "2"
    with pytest.raises(HypothesisError, match="kernel summand 2"):
        lift_support_tau_tilting(cat, S, cat.algebra.quiver)


def test_lift_of_projectives_is_tilting(setup):
    cat, Q, _ = setup
    rep = lift_n_tilting(cat, subcat(cat, "2", "1/2"), 0, Q)
    assert rep.ok


def test_lift_of_tilting_is_two_tilting_with_length_two_coresolutions(setup):
    cat, Q, _ = setup
    rep = lift_n_tilting(cat, subcat(cat, "1/2", "1"), 1, Q)
    assert rep.ok
    assert rep.lifted.pd_values == {"11": 2, "11/12": 1, "11/21": 1, "11/21,12/22": 0}
    assert rep.lifted.coresolutions["22"] == [["11/21,12/22"], ["11/12", "11/21"], ["11"]]


def test_non_tilting_generators_are_refused(setup):
    cat, Q, _ = setup
    with pytest.raises(HypothesisError):
        lift_n_tilting(cat, subcat(cat, "1"), 0, Q)
