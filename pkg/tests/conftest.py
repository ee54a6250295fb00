from __future__ import annotations

import sys
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from forestmodal.order import Forest, Rel

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile(
    "default",
    max_examples=60,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


@st.composite
def forests(draw, min_nodes: int = 0, max_nodes: int = 5):
    n = draw(st.integers(min_nodes, max_nodes))
    parents = [draw(st.one_of(st.none(), st.integers(0, i - 1))) if i else None for i in range(n)]
    return Forest.from_parents(parents)


@st.composite
def relations(draw, n: int):
    rows = tuple(draw(st.integers(0, (1 << n) - 1)) for _ in range(n))
    return Rel(n, rows)


@st.composite
def forest_with_rel(draw, min_nodes: int = 1, max_nodes: int = 4, count: int = 1):
    f = draw(forests(min_nodes, max_nodes))
    rels = [draw(relations(f.n)) for _ in range(count)]
    return (f, *rels)


@pytest.fixture(scope="session")
def fixture():
    from forestmodal.documents import load

    return load


def permuted_algebra(alg, perm):
    """Same algebra with element ``x`` renamed to position ``perm[x]``."""
    from forestmodal.algebra import GodelAlgebra

    m = alg.size
    inv = [0] * m
    for x, y in enumerate(perm):
        inv[y] = x

    def table(t):
        return tuple(tuple(perm[t[inv[i]][inv[j]]] for j in range(m)) for i in range(m))

    names = tuple(alg.names[inv[i]] for i in range(m))
    return GodelAlgebra(names, table(alg.meet), table(alg.join), table(alg.impl), perm[alg.bot], perm[alg.top])


@st.composite
def algebras(draw, max_nodes: int = 4):
    from forestmodal.duality import downset_algebra

    f = draw(forests(0, max_nodes))
    alg = downset_algebra(f)
    perm = draw(st.permutations(range(alg.size)))
    return permuted_algebra(alg, perm)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(results):
        terminalreporter.write_line(results[num])
