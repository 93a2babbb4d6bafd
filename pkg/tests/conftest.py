import math

import numpy as np
import pytest

from loclu.graph import Graph
from loclu.synthgen import SyntheticSpec, generate


def bridged_cliques(k):
    """Two k-cliques joined by the single edge (k-1, k)."""
    edges = [(i, j) for i in range(k) for j in range(i + 1, k)]
    edges += [(i + k, j + k) for i, j in edges]
    edges.append((k - 1, k))
    return Graph(2 * k, edges)


def contingency_nmi(detected, truth, n):
    """NMI from the 2x2 table of counts, written out cell by cell."""
    d = set(detected)
    t = set(truth)
    counts = {}
    for v in range(n):
        key = (v in d, v in t)
        counts[key] = counts.get(key, 0) + 1
    rows = {a: sum(c for (x, _), c in counts.items() if x == a) for a in (True, False)}
    cols = {b: sum(c for (_, y), c in counts.items() if y == b) for b in (True, False)}
    mi = 0.0
    for (a, b), c in counts.items():
        mi += c / n * math.log(c * n / (rows[a] * cols[b]))
    h_d = -sum(c / n * math.log(c / n) for c in rows.values() if c)
    h_t = -sum(c / n * math.log(c / n) for c in cols.values() if c)
    if d == t:
        return 1.0
    if h_d == 0 or h_t == 0:
        return 0.0
    return 2 * mi / (h_d + h_t)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture(scope="session")
def planted():
    return generate(SyntheticSpec(cluster_sizes=(150, 150), d=6, min_mean_separation=1.0, rng_seed=7))


@pytest.fixture(scope="session")
def planted_large():
    # blocks this large keep the embedding unimodal inside each block
    return generate(SyntheticSpec(cluster_sizes=(500, 500), d=8, min_mean_separation=1.0, rng_seed=21))


_ACCEPTANCE_KEY = pytest.StashKey[dict]()


@pytest.fixture(scope="session")
def acceptance_log(request):
    """Criterion number -> (passed, detail); printed in the terminal summary."""
    return request.config.stash.setdefault(_ACCEPTANCE_KEY, {})


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    log = config.stash.get(_ACCEPTANCE_KEY, {})
    if not log:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(log):
        passed, detail = log[number]
        terminalreporter.write_line(f"criterion {number}: {'PASS' if passed else 'FAIL'} - {detail}")
