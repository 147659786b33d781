import pytest
from hypothesis import strategies as st

from mazedfs.fixtures import load_fixture
from mazedfs.mazegen import GENERAL, TREE, GenConfig, generate, generate_graph
from mazedfs.model import as_graph


@pytest.fixture(scope="session")
def fix():
    """Fixture name -> parsed object (GridMaze or RoomGraph)."""
    return {name: load_fixture(name) for name in ("FIX-Y", "FIX-L", "FIX-C", "FIX-C3", "FIX-T3", "FIX-R4", "FIX-E1")}


@pytest.fixture(scope="session")
def graphs(fix):
    return {name: as_graph(obj) for name, obj in fix.items()}


def grid_configs(n, exits=2, seed0=0):
    """A deterministic spread of tree and general configs, sizes 1x1 .. 6x6."""
    out = []
    for i in range(n):
        s = seed0 + i
        rows, cols = 1 + s % 6, 1 + (s // 6) % 6
        if rows * cols == 1 and exits != 2:
            rows = 2
        general = s % 2 == 1 and rows * cols > 1
        extra = (s // 2) % (rows + cols) if general else 0
        out.append(GenConfig(rows, cols, s, GENERAL if general else TREE, extra, exits))
    return out


def grid_corpus(n, exits=2, seed0=0):
    return [generate(cfg) for cfg in grid_configs(n, exits, seed0)]


def graph_corpus(n, exits=2, seed0=0):
    # a single internal vertex cannot hold four terminals
    low = 2 if exits == 3 else 1
    return [generate_graph(seed0 + i, low + i % 10, i % 4, exits) for i in range(n)]


@pytest.fixture(scope="session")
def corpus():
    """Generated two-exit grid mazes (as mazes) plus GR1 graphs, shared across tests."""
    return {"grids": grid_corpus(150), "graphs": graph_corpus(60)}


@st.composite
def gen_configs(draw, exits=2, max_side=5):
    rows = draw(st.integers(1, max_side))
    cols = draw(st.integers(1, max_side))
    if rows * cols == 1 and exits != 2:
        cols = 2
    mode = draw(st.sampled_from([TREE, GENERAL])) if rows * cols > 1 else TREE
    extra = draw(st.integers(0, rows + cols)) if mode == GENERAL else 0
    seed = draw(st.integers(0, 2**64 - 1))
    return GenConfig(rows, cols, seed, mode, extra, exits)


def mazes(exits=2, max_side=5):
    return gen_configs(exits, max_side).map(generate)


def room_graphs(max_internal=10, exits=2):
    return st.builds(
        generate_graph,
        seed=st.integers(0, 2**32),
        internal=st.integers(1, max_internal),
        extra_edges=st.integers(0, 4),
        exits=st.just(exits),
    )


# ---------------------------------------------------------------- acceptance summary

_CRITERIA: dict[int, tuple[str, str, str]] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    number, title = mark.args
    if rep.when == "call" or rep.outcome != "passed":
        status = "PASS" if rep.passed else "FAIL"
        if number not in _CRITERIA or status == "FAIL":
            _CRITERIA[number] = (status, title, f"{rep.duration:.1f}s")


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        status, title, took = _CRITERIA[number]
        terminalreporter.write_line(f"{status}  {number:2d}. {title} ({took})")
