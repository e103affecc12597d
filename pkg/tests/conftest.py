from __future__ import annotations

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from posetblock import LabelMap, Poset, SpaceSpec, make_field, make_weight  # noqa: E402
from posetblock.weight import hamming_weight, lee_weight  # noqa: E402


def make_space(q, n, covers, labels, weight=None):
    """Space from raw data; ``weight`` is a table, "lee", or None for Hamming."""
    F = make_field(q)
    if weight is None:
        w = hamming_weight(F)
    elif weight == "lee":
        w = lee_weight(F)
    else:
        w = make_weight(F, weight)
    return SpaceSpec(F, Poset.from_cover_relations(n, covers), LabelMap(tuple(labels)), w)


# The five configurations named by the acceptance criteria, plus a Hamming
# twin of (e) on the same poset.
CONFIGS = {
    "a": (2, 2, [(1, 2)], (1, 1), None),
    "b": (2, 2, [(1, 2)], (1, 2), None),
    "c": (2, 3, [], (1, 1, 1), None),
    "d": (3, 2, [], (1, 1), None),
    "e": (5, 2, [(1, 2)], (1, 1), "lee"),
    "e_hamming": (5, 2, [(1, 2)], (1, 1), None),
}


@pytest.fixture(params=sorted(k for k in CONFIGS if k != "e_hamming"))
def config_space(request):
    return make_space(*CONFIGS[request.param])


_ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def acceptance_report():
    return _ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
