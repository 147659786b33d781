import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mazedfs.fixtures import fixture_text
from mazedfs.mazegen import generate_graph
from mazedfs.model import (
    MazeError,
    RoomGraph,
    all_slots,
    is_plane,
    load,
    parse_graph,
    parse_grid_maze,
    ring_transform,
    serialize_graph,
    serialize_grid_maze,
    to_room_graph,
    validate_graph,
)

from conftest import mazes, room_graphs

FIX_Y = "MZ1 1 1\n+A+\nB C\n+-+\n"


def test_fix_y_parses():
    m = parse_grid_maze(FIX_Y)
    assert (m.rows, m.cols) == (1, 1)
    assert m.opening_slot == {"A": (0, 1), "B": (1, 0), "C": (1, 2)}


@pytest.mark.parametrize(
    "text, message",
    [
        ("MZ1 1 1\n+A+\nB |\n+-+\n", "missing opening C"),
        ("MZ1 1 1\n+A+\nC B\n+-+\n", "openings not counterclockwise A,B,C"),
        ("MZ1 1 1\n+A+\nB B\n+-+\n", "duplicate opening B"),
        ("MZ1 1 1\n+-+\nB C\n+-+\n", "missing opening A"),
        ("MZ1 1 1\n+A+\nB C\n+ +\n", "room with no wall"),
        ("MZ1 1 2\n+A+-+\nB   C\n+-+ +\n", "neither a wall nor an opening"),
        ("MZ1 1 1\n+A+\nB?C\n+-+\n", "illegal character"),
        ("MZ1 1 1\n+A+\nB C\n", "expected 3 grid lines"),
        ("MZ1 0 1\n+\n", "malformed grid dimensions"),
        ("MZ 1 1\n+A+\nB C\n+-+\n", "malformed MZ1 header"),
        ("MZ1 1 2\n+A+-+\nB A C\n+-+-+\n", "interior slot"),
        ("MZ1 1 2\n+A+-+\nB | C\n+-+-+\n", "disconnected"),
        ("MZ1 2 2\n+A+-+\n|   |\n+ + +\nB   C\n+-+-+\n", None),
        ("MZ1 3 3\n+A+-+-+\n|     |\n+ + + +\nB     C\n+ + + +\n|     |\n+-+-+-+\n", "room with no wall"),
    ],
)
def test_grid_validation_errors(text, message):
    if message is None:
        parse_grid_maze(text)
        return
    with pytest.raises(MazeError, match=message):
        parse_grid_maze(text)


def test_errors_report_coordinates():
    with pytest.raises(MazeError) as exc:
        parse_grid_maze("MZ1 1 1\n+A+\nB?C\n+-+\n")
    assert exc.value.where == (1, 1)
    with pytest.raises(MazeError) as exc:
        parse_grid_maze("MZ1 3 3\n+A+-+-+\n|     |\n+ + + +\nB     C\n+ + + +\n|     |\n+-+-+-+\n")
    assert exc.value.where == (1, 0)  # room (1, 0): three open sides plus opening B


def test_trailing_whitespace_is_normalised():
    m = parse_grid_maze("MZ1 1 2\n+A+-+   \nB   C\n+-+-+\n\n")
    assert serialize_grid_maze(m) == fixture_text("FIX-L")


@pytest.mark.parametrize("name", ["FIX-Y", "FIX-L", "FIX-C", "FIX-C3"])
def test_grid_round_trip(name):
    text = fixture_text(name)
    assert serialize_grid_maze(parse_grid_maze(text)) == text


@settings(max_examples=200, deadline=None)
@given(mazes())
def test_generated_round_trip_and_valid_graph(maze):
    assert parse_grid_maze(serialize_grid_maze(maze)) == maze
    g = to_room_graph(maze)
    validate_graph(g)
    assert g.door_count == len(all_slots(maze.rows, maze.cols)) - len(maze.wall_slots)
    assert g.k >= 1
    assert is_plane(g)


def test_to_room_graph_fix_y(graphs):
    g = graphs["FIX-Y"]
    assert g.rotation["r0_0"] == ("A", "B", "C")  # N, W, E
    assert g.degree("r0_0") == 3
    assert g.door_count == 3


def test_to_room_graph_fix_l(graphs):
    g = graphs["FIX-L"]
    assert set(g.vertices) == {"A", "B", "C", "r0_0", "r0_1"}
    assert set(g.rotation["r0_0"]) == {"A", "B", "r0_1"}
    assert set(g.rotation["r0_1"]) == {"r0_0", "C"}
    assert g.door_count == 4


def test_to_room_graph_fix_c3(graphs):
    g = graphs["FIX-C3"]
    rooms = ["r0_0", "r0_1", "r1_0", "r1_1"]
    assert [g.degree(r) for r in rooms] == [3, 2, 3, 3]
    # the four rooms form a 4-cycle
    cyc = {frozenset(d) for d in g.doors if set(d) <= set(rooms)}
    assert len(cyc) == 4
    assert g.rotation["r1_1"] == ("r0_1", "r1_0", "C")  # N, W, E


def test_door_count_equals_open_slots(fix, graphs):
    m = fix["FIX-C3"]
    assert len(all_slots(2, 2)) == 12
    assert graphs["FIX-C3"].door_count == 12 - len(m.wall_slots) == 7


def test_parse_graph_star():
    g = parse_graph("GR1\nx: A B C\nA: x\nB: x\nC: x\n")
    assert g.coin_vertices == ("x",)


@pytest.mark.parametrize(
    "text, message",
    [
        ("GR1\nx: A B C\nA: x\nB: x\nC:\n", "asymmetric adjacency"),
        ("GR1\nx: A B C y\ny: x\nA: x\nB: x\nC: x\n", "degree exceeds three"),
        ("GR1\nx: A y\ny: x B C\nA: x\nB: y\nC: y A\n", "asymmetric"),
        ("GR1\nx: A B C\nA: x\nB: x\nC: x\ny: z\nz: y\n", "disconnected"),
        ("GR1\nx: A B C D\nA: x\nB: x\nC: x\nD: x\n", "degree exceeds three"),
        ("GR1\nx: A B y\ny: x C C\nA: x\nB: x\nC: y y\n", "multiple doors"),
        ("GR1\nx: A B\nA: x\nB: x\n", "missing opening C"),
        ("GR1\nx: A B C q\nA: x\nB: x\nC: x\n", "unknown neighbour"),
        ("GR2\n", "malformed GR1 header"),
        ("", "empty input"),
    ],
)
def test_graph_validation_errors(text, message):
    with pytest.raises(MazeError, match=message):
        parse_graph(text)


def test_terminal_degree_rule():
    text = "GR1\nA: u v w\nu: A B v\nv: A u C\nw: A\nB: u\nC: v\n"
    with pytest.raises(MazeError, match="terminal A must have degree 1"):
        parse_graph(text)
    g = parse_graph(text.replace("GR1", "GR1 ex1"))
    assert g.degree("A") == 3 and "A" in g.coin_vertices


def test_general_mode_allows_high_degree(graphs):
    g = graphs["FIX-R4"]
    assert g.kind == "general" and g.max_degree() == 4
    with pytest.raises(MazeError, match="degree exceeds three"):
        validate_graph(g, "room")


@pytest.mark.parametrize("name", ["FIX-T3", "FIX-R4", "FIX-E1"])
def test_graph_round_trip(name, graphs):
    g = graphs[name]
    assert parse_graph(serialize_graph(g)) == g


def test_load_dispatch(fix):
    assert load(fixture_text("FIX-L")) == fix["FIX-L"]
    with pytest.raises(MazeError, match="unrecognised"):
        load("hello\n")


@settings(max_examples=200, deadline=None)
@given(room_graphs())
def test_parity_forces_a_degree_three_vertex(g):
    validate_graph(g)
    assert g.k >= 1


def test_ring_transform_degree_four_hub(graphs):
    out = ring_transform(graphs["FIX-R4"])
    validate_graph(out)
    assert out.max_degree() == 3
    ring = [f"h.{i}" for i in range(1, 5)]
    assert all(v in out.rotation for v in ring) and "h" not in out.rotation
    assert out.rotation["h.1"] == ("h.4", "a1", "h.2")
    assert out.rotation["a1"] == ("A", "h.1")
    assert is_plane(out)


def test_ring_transform_identity_on_cubic(graphs):
    for name in ("FIX-T3", "FIX-L", "FIX-C3"):
        g = graphs[name]
        assert dict(ring_transform(g).rotation) == dict(g.rotation)


def test_ring_transform_adjacent_hubs():
    text = "GR1 general\nh: A x y g\ng: h B C z\nx: h\ny: h\nz: g\nA: h\nB: g\nC: g\n"
    out = ring_transform(parse_graph(text))
    validate_graph(out)
    assert out.rotation["h.4"] == ("h.3", "g.1", "h.1")
    assert out.rotation["g.1"] == ("g.4", "h.4", "g.2")


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 2**32), st.integers(1, 8), st.integers(0, 3), st.integers(4, 6))
def test_ring_transform_properties(seed, internal, extra, hub):
    try:
        g = generate_graph(seed, internal, extra, general=True, hub_degree=hub)
    except ValueError:
        return
    out = ring_transform(g)
    validate_graph(out, "room")
    assert out.max_degree() <= 3
    for t in g.labels:
        assert out.degree(t) == g.degree(t) == 1
    assert out.door_count == g.door_count + sum(g.degree(v) for v in g.vertices if g.degree(v) >= 4)


def test_is_plane_on_k4():
    # K4 has exactly two kinds of rotation systems: the flat one and a torus one
    flat = {"a": ("b", "c", "d"), "b": ("a", "d", "c"), "c": ("a", "b", "d"), "d": ("a", "c", "b")}
    twisted = {"a": ("b", "c", "d"), "b": ("a", "c", "d"), "c": ("a", "b", "d"), "d": ("a", "b", "c")}
    assert is_plane(RoomGraph(flat, "general"))
    assert not is_plane(RoomGraph(twisted, "general"))
