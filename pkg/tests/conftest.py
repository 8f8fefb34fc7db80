import functools
import subprocess
import sys

import pytest

from tiltlab.inventory import enumerate_indecomposables
from tiltlab.io import algebra_from_document, load_document
from tiltlab.tautilt import Catalog

ALGEBRA_FIXTURES = ["a2", "a3_rad2", "cyclic3_rad2", "no_arrow", "empty", "kernel_violation"]


@functools.lru_cache(maxsize=None)
def catalog(name: str) -> Catalog:
    doc = load_document(name)
    A = algebra_from_document(doc)
    return Catalog(enumerate_indecomposables(A, doc.get("dim_bound", 2)))


def subcat(cat: Catalog, *names):
    return cat.subcat(sorted(cat.inventory.index(n) for n in names))


def run_cli(*argv, check=None):
    """Run ``python -m tiltlab.cli`` and return the completed process."""
    proc = subprocess.run([sys.executable, "-m", "tiltlab.cli", *argv], capture_output=True, text=True)
    if check is not None:
        assert proc.returncode == check, proc.stdout + proc.stderr
    return proc


@pytest.fixture(scope="session")
def a2():
    return catalog("a2")


@pytest.fixture(scope="session")
def a3():
    return catalog("a3_rad2")


@pytest.fixture(scope="session")
def cyc3():
    return catalog("cyclic3_rad2")


def pytest_terminal_summary(terminalreporter):
    """One PASS/FAIL line per acceptance criterion that ran."""
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.summary_line(n))
