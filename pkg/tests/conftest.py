import sys
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, str(Path(__file__).parent))

from dvy import FiniteDiversity, WeightedTree, tree_diversity  # noqa: E402

DATA = Path(__file__).parent / "data"

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def e1():
    return FiniteDiversity.from_sets("123", {("1", "2"): 2, ("1", "3"): 2, ("2", "3"): 2, ("1", "2", "3"): 3})


def e2():
    return FiniteDiversity.from_sets("123", {("1", "2"): 2, ("1", "3"): 3, ("2", "3"): 4, ("1", "2", "3"): "24/5"})


def quartet_tree():
    return WeightedTree(tuple("abcduv"),
                        (("a", "u", 1), ("b", "u", 1), ("u", "v", 1), ("c", "v", 1), ("d", "v", 1)),
                        tuple("abcd"))


def quartet():
    return tree_diversity(quartet_tree())


@pytest.fixture
def E1():
    return e1()


@pytest.fixture
def E2():
    return e2()


@pytest.fixture
def Q():
    return quartet()


# acceptance summary: tests/test_acceptance.py fills this in
ACCEPTANCE: dict = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, secs, note = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k}: {'PASS' if ok else 'FAIL'} ({secs:.1f}s) {note}")
