import os
import sys

import hypothesis.strategies as st
import pytest
from hypothesis import HealthCheck, settings

from lvrank.graph import Graph

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


@st.composite
def graphs(draw, min_n=1, max_n=8):
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    keep = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.from_edges(n, [p for p, k in zip(pairs, keep) if k])


@st.composite
def degenerate_graphs(draw, max_n=30, max_d=3):
    """Each vertex picks at most d earlier neighbours."""
    n = draw(st.integers(1, max_n))
    d = draw(st.integers(1, max_d))
    edges = []
    for v in range(1, n):
        nb = draw(st.sets(st.integers(0, v - 1), max_size=min(d, v)))
        edges.extend((v, u) for u in nb)
    return Graph.from_edges(n, edges), d


@pytest.fixture
def p3():
    return Graph.from_edges(3, [(0, 1), (1, 2)])


@pytest.fixture
def k3():
    return Graph.from_edges(3, [(0, 1), (1, 2), (0, 2)])


@pytest.fixture
def star8():
    return Graph.from_edges(9, [(0, v) for v in range(1, 9)])


_RESULTS = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[_RESULTS] = []


@pytest.fixture
def criterion(request, capsys):
    """Record one PASS/FAIL line for an acceptance criterion, then assert it."""

    def check(num, title, ok, detail):
        line = f"[{'PASS' if ok else 'FAIL'}] criterion {num:>2}: {title} ({detail})"
        request.config.stash[_RESULTS].append(line)
        with capsys.disabled():
            print("\n" + line)
        assert ok, line

    return check


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(_RESULTS, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split("criterion")[1].split(":")[0])):
            terminalreporter.write_line(line)
