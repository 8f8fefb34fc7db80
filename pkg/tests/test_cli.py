import json

import pytest

from conftest import run_cli


def test_json_output_is_versioned_and_deterministic():
    first = run_cli("stilt", "enumerate", "a3_rad2", "--format", "json", check=0).stdout
    second = run_cli("stilt", "enumerate", "a3_rad2", "--format", "json", "--seed", "0", check=0).stdout
    assert first == second
    data = json.loads(first)
    assert data["schema_version"] == 1 and data["count"] == 12


def test_indecs_tables():
    out = run_cli("indecs", "a3_rad2", check=0).stdout
    assert "5 indecomposables" in out
    assert "0 indecomposables" in run_cli("indecs", "empty", check=0).stdout


def test_verification_failure_exit_code():
    proc = run_cli("stilt", "verify", "a2", "--gens", "1", "2")
    assert proc.returncode == 1
    assert "Ext¹(T, Fac T) = 0: FAIL" in proc.stdout


def test_input_error_exit_code():
    assert run_cli("stilt", "verify", "a2", "--gens", "nonsense").returncode == 2
    assert run_cli("indecs", "does_not_exist").returncode == 2
    assert run_cli("persist", "hom", "[1,x)", "[0,1)").returncode == 2
    assert run_cli("frobnicate").returncode == 2


def test_budget_exit_code():
    assert run_cli("indecs", "a3_rad2", "--dim-bound", "3", "--budget", "10").returncode == 3


def test_recheck_flag():
    out = run_cli("stilt", "verify", "cyclic3_rad2", "--subcat", "example", "--recheck", check=0).stdout
    assert "recheck: PASS" in out


def test_dot_output():
    out = run_cli("triple", "a2", "--gens", "1", "--format", "dot", check=0).stdout
    assert out.startswith("digraph")


def test_persist_hom_of_shifted_intervals():
    # k_[1,∞) surjects onto k_[1,2), which includes into k_[0,2)
    assert run_cli("persist", "hom", "[1,inf)", "[0,2)", "--recheck", check=0).stdout.strip() == "1"


def test_persist_approx_single_interval():
    out = run_cli("persist", "approx", "--region", "two_piece_T", "--interval", "[1/2,3)", check=0).stdout
    assert out.strip() == "k_[1,∞) → k_[1/2,3)"
    assert run_cli("persist", "approx", "--region", "split_F", "--interval", "[0,1/2)").returncode == 1


def test_repq_dumps_the_tensor_algebra():
    data = json.loads(run_cli("repq", "lift-stilt", "a2", "--quiver", "a2", "--gens", "1", "--format", "json",
                              check=0).stdout)
    assert data["lifted"] == ["11", "11/12"]
    assert data["tensor_algebra"]["vertices"] == ["11", "21", "12", "22"]


@pytest.mark.parametrize("fixture", ["a2", "persistence"])
def test_props_command(fixture):
    assert "FAIL" not in run_cli("props", fixture, check=0).stdout
