from __future__ import annotations

import numpy as np
import pytest

from ndrigid.catalogue import FIXTURES


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def random_antisym(rng, n, scale=1.0):
    A = rng.normal(size=(n, n))
    return scale * (A - A.T)


ALL_FIXTURES = sorted(FIXTURES)
VERDICT_FIXTURES = sorted(k for k, f in FIXTURES.items() if f.expected is not None)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
