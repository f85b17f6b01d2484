import itertools

import numpy as np
import pytest
from hypothesis import settings

from cutcolor.graph import Graph

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

# criterion number -> (passed, detail); filled by test_acceptance.py
ACCEPTANCE = {}


def random_graph(rng, n_max=10, m_max=20, n_min=1):
    n = int(rng.integers(n_min, n_max + 1))
    pairs = list(itertools.combinations(range(1, n + 1), 2))
    m = int(rng.integers(0, min(m_max, len(pairs)) + 1))
    idx = rng.choice(len(pairs), m, replace=False) if m else []
    return Graph(n, tuple(pairs[i] for i in idx))


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k}: {'PASS' if ok else 'FAIL'}  {detail}")
