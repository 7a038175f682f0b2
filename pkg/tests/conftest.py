import json
import random
import sys
from pathlib import Path

import pytest
from hypothesis import settings, strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from advex.graph import load_graph, make_graph  # noqa: E402
from advex.harness import ear_backbone  # noqa: E402

FIXTURES = Path(__file__).parent / "fixtures"

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")


@pytest.fixture
def triangle():
    return make_graph("abc", [("a", "b", 1), ("b", "c", 1), ("c", "a", 1)], "a")


@pytest.fixture
def fanout():
    return load_graph(FIXTURES / "fanout.json")


@pytest.fixture(scope="session")
def frozen():
    return json.loads((FIXTURES / "frozen_optima.json").read_text())


@st.composite
def instances(draw, directed=None, min_n=2, max_n=6, max_extra=6, max_cost=5):
    """Connected (strongly, if directed) random instances."""
    if directed is None:
        directed = draw(st.booleans())
    n = draw(st.integers(min_n, max_n))
    names = [f"v{i}" for i in range(n)]
    perm = draw(st.permutations(names))
    if directed:
        ears = draw(st.integers(0, max(0, n - 2)))
        pairs = ear_backbone(list(perm), ears, random.Random(draw(st.integers(0, 2**16))))
    else:
        pairs = [(perm[draw(st.integers(0, i - 1))], perm[i]) for i in range(1, n)]
    extra = draw(st.lists(st.tuples(st.sampled_from(names), st.sampled_from(names))
                          .filter(lambda p: p[0] != p[1]), max_size=max_extra))
    pairs = pairs + extra
    order = draw(st.permutations(range(len(pairs))))
    costs = draw(st.lists(st.integers(1, max_cost), min_size=len(pairs), max_size=len(pairs)))
    edges = [(pairs[i][0], pairs[i][1], c) for i, c in zip(order, costs)]
    return make_graph(names, edges, perm[0], directed)


# one line per acceptance criterion, shown after the run
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
