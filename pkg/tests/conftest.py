import os

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from tfl.graph import Graph

settings.register_profile("default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@st.composite
def graphs(draw, min_n=1, max_n=9, connected=False):
    """Random labeled graphs; with ``connected`` a random spanning tree is added first."""
    n = draw(st.integers(min_n, max_n))
    adj = [0] * n

    def add(u, v):
        adj[u] |= 1 << v
        adj[v] |= 1 << u

    if connected:
        for v in range(1, n):
            add(v, draw(st.integers(0, v - 1)))
    density = draw(st.floats(0.0, 1.0))
    for u in range(n):
        for v in range(u + 1, n):
            if draw(st.floats(0.0, 1.0)) < density:
                add(u, v)
    return Graph(n, adj)


@st.composite
def permutations_of(draw, n):
    return draw(st.permutations(list(range(n))))


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)

