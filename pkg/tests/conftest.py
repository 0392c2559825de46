from fractions import Fraction

import pytest
from hypothesis import strategies as st

from tcnorm import build_graph


def path_graph(lengths):
    names = [chr(ord("a") + i) for i in range(len(lengths) + 1)]
    return build_graph(names, [(names[i], names[i + 1], L) for i, L in enumerate(lengths)])


def cycle_graph(lengths):
    n = len(lengths)
    names = [f"v{i}" for i in range(n)]
    return build_graph(names, [(names[i], names[(i + 1) % n], L) for i, L in enumerate(lengths)])


@pytest.fixture
def G1():
    return build_graph(["a", "b"], [("a", "b", 1)])


@pytest.fixture
def P3():
    return build_graph(["a", "b", "c"], [("a", "b", 1), ("b", "c", 2)])


@pytest.fixture
def C4():
    return cycle_graph([1, 1, 1, 1])


@pytest.fixture
def K4():
    names = "abcd"
    return build_graph(list(names), [(x, y, 1) for i, x in enumerate(names) for y in names[i + 1:]])


@pytest.fixture
def lollipop():
    return build_graph(
        ["v1", "v2", "v3", "v4"],
        [("v1", "v2", 1), ("v2", "v3", 1), ("v3", "v1", 1), ("v4", "v1", 1)],
    )


lengths = st.builds(Fraction, st.integers(1, 24), st.integers(1, 8))


@st.composite
def connected_graphs(draw, min_n=1, max_n=7, max_extra=4):
    n = draw(st.integers(min_n, max_n))
    names = [f"v{i}" for i in range(n)]
    edges = []
    for i in range(1, n):
        p = draw(st.integers(0, i - 1))
        u, v = (names[p], names[i]) if draw(st.booleans()) else (names[i], names[p])
        edges.append((u, v, draw(lengths)))
    present = {frozenset(e[:2]) for e in edges}
    missing = [(a, b) for i, a in enumerate(names) for b in names[i + 1:] if frozenset((a, b)) not in present]
    if missing:
        extra = draw(st.lists(st.sampled_from(missing), max_size=max_extra, unique=True))
        edges += [(a, b, draw(lengths)) for a, b in extra]
    edges = draw(st.permutations(edges))
    return build_graph(names, edges)


@st.composite
def trees(draw, min_n=2, max_n=12):
    return draw(connected_graphs(min_n=min_n, max_n=max_n, max_extra=0))


@st.composite
def masses_for(draw, g, lo=-5, hi=5):
    values = {v: draw(st.integers(lo, hi)) for v in g.vertices[:-1]}
    values[g.vertices[-1]] = -sum(values.values())
    return values


@st.composite
def instances(draw, graphs=None):
    g = draw(graphs if graphs is not None else connected_graphs())
    return g, draw(masses_for(g))


# acceptance reporting: one PASS/FAIL line per criterion in the terminal summary
_ACCEPTANCE: dict[int, tuple[str, str]] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None or report.when != "call":
        return
    number = marker.args[0]
    detail = dict(item.user_properties).get("detail", "")
    _ACCEPTANCE[number] = ("PASS" if report.passed else "FAIL", detail or item.name)


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE):
        status, detail = _ACCEPTANCE[number]
        terminalreporter.write_line(f"criterion {number}: {status}  {detail}")
