import sys
from pathlib import Path

import pytest
from hypothesis import settings

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@pytest.fixture
def rng():
    import numpy as np

    return np.random.default_rng(12345)


# one line per acceptance criterion, filled by tests/test_acceptance.py
GATES: dict[int, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not GATES:
        return
    from test_acceptance import CRITERIA

    tr = terminalreporter
    tr.section("acceptance criteria")
    for k, title in CRITERIA.items():
        ok, detail = GATES.get(k, (False, "not reached"))
        tr.write_line(f"[{'PASS' if ok else 'FAIL'}] {k:2d} {title}: {detail}")
