from __future__ import annotations

import pytest

from ffspectra.diff import PowerMap
from ffspectra.ff_core import build_field, build_tower


def tower(p: int, m: int = 1):
    return build_tower(build_field(p, m))


def power_map(p: int, m: int = 1, d: int | None = None) -> PowerMap:
    return PowerMap(tower(p, m), d)


@pytest.fixture
def t9():
    return tower(3, 2)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
