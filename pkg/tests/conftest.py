from __future__ import annotations

import sys
from functools import lru_cache
from pathlib import Path

import pytest

DATA = Path(__file__).parent / "data"
sys.path.insert(0, str(Path(__file__).parent))


@lru_cache(maxsize=None)
def corpus_lines(n: int) -> tuple[str, ...]:
    """All graphs on ``n`` vertices up to isomorphism (nauty ``geng -q n``)."""
    return tuple((DATA / f"all_n{n}.g6").read_text(encoding="ascii").split())


def corpus_upto(n: int) -> list[str]:
    return [line for k in range(1, n + 1) for line in corpus_lines(k)]


@pytest.fixture
def data_dir() -> Path:
    return DATA


# one line per acceptance criterion, filled in by test_acceptance.py
ACCEPTANCE: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for number in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[number])
