import os
from functools import lru_cache

import pytest

from engelgraphs.catalog import build_group

ACCEPTANCE_LINES: list[str] = []


@lru_cache(maxsize=None)
def group(spec: str):
    """Groups are immutable, so one instance per spec is shared by all tests."""
    return build_group(spec)


@pytest.fixture(scope="session")
def get_group():
    return group


def pytest_collection_modifyitems(config, items):
    if os.environ.get("ENGEL_STRETCH", "1") != "0":
        return
    skip = pytest.mark.skip(reason="stretch tier disabled by ENGEL_STRETCH=0")
    for item in items:
        if "stretch" in item.keywords:
            item.add_marker(skip)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
