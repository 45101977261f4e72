import os
import sys

import numpy as np
import pytest

sys.path.insert(0, os.path.dirname(__file__))

from socnetbench.graph import Graph, build_graph  # noqa: E402


def random_graph(n, p, rng):
    iu = np.triu_indices(n, k=1)
    keep = rng.random(len(iu[0])) < p
    return Graph(n, np.column_stack([iu[0][keep], iu[1][keep]]))


def planted_partition(n_groups, size, p_in, p_out, rng):
    """Dense groups with sparse links between them; high clustering."""
    n = n_groups * size
    group = np.repeat(np.arange(n_groups), size)
    iu = np.triu_indices(n, k=1)
    same = group[iu[0]] == group[iu[1]]
    keep = rng.random(len(iu[0])) < np.where(same, p_in, p_out)
    return Graph(n, np.column_stack([iu[0][keep], iu[1][keep]]))


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def triangle():
    return build_graph([(0, 1), (1, 2), (2, 0)])


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(results):
        terminalreporter.write_line(results[k])
