from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mazedfs.analysis import (
    EX1_ROOT,
    compare_dfs_wallfollower,
    divides_power_of_two,
    door_direction_probability,
    door_direction_table,
    enumerate_first_arrival,
    exit_order_report,
    exit_probability_bounds_ok,
    fmt_fraction,
    monte_carlo_first_arrival,
    monte_carlo_random_walk,
    random_walk_exit_probabilities,
    search_exit_probability,
    shortest_path_lengths,
    solve_exact,
)
from mazedfs.explorer import Handedness, explore
from mazedfs.model import MazeError, RoomGraph, parse_grid_maze, to_room_graph

from conftest import mazes, room_graphs
from oracles import reference_first_counts, sympy_walk

HALF = Fraction(1, 2)

# RDFS bounces off the already-visited room (1, 1); RHOW walks straight through it
DIVERGING = "MZ1 2 3\n+-+-+A+\n|   | C\n+ + + +\n|     |\n+-+-+B+\n"


def mirrored(g: RoomGraph) -> RoomGraph:
    swap = {"B": "C", "C": "B"}
    name = lambda v: swap.get(v, v)  # noqa: E731
    return RoomGraph({name(v): tuple(name(w) for w in reversed(n)) for v, n in g.rotation.items()}, g.kind)


# ---------------------------------------------------------------- enumeration


def test_enumerate_fix_y(graphs):
    rep = enumerate_first_arrival(graphs["FIX-Y"])
    assert (rep.k, rep.total, rep.counts) == (1, 2, {"B": 1, "C": 1})
    assert rep.probability["B"] == HALF


def test_enumerate_fix_c3(graphs):
    rep = enumerate_first_arrival(graphs["FIX-C3"])
    assert (rep.k, rep.total, rep.counts) == (3, 8, {"B": 4, "C": 4})


def test_enumerate_fix_t3(graphs):
    rep = enumerate_first_arrival(graphs["FIX-T3"], ("B", "C", "D"))
    assert rep.probability == {"B": Fraction(1, 4), "C": Fraction(1, 4), "D": HALF}
    assert exit_probability_bounds_ok(rep)


@settings(max_examples=150, deadline=None)
@given(st.one_of(mazes(max_side=4).map(to_room_graph), room_graphs(max_internal=8)))
def test_enumeration_matches_reference(g):
    rep = enumerate_first_arrival(g)
    assert rep.counts == reference_first_counts(g.rotation, ("B", "C"))
    assert rep.counts["B"] == rep.counts["C"] == 1 << (g.k - 1)
    assert divides_power_of_two(rep.probability["B"], g.k)


@settings(max_examples=40, deadline=None)
@given(mazes(exits=3, max_side=4).map(to_room_graph))
def test_three_exits_match_reference(g):
    rep = enumerate_first_arrival(g, ("B", "C", "D"))
    assert rep.counts == reference_first_counts(g.rotation, ("B", "C", "D"))
    assert sum(rep.counts.values()) == rep.total
    assert exit_probability_bounds_ok(rep)


def test_enumeration_jobs_do_not_change_counts(graphs):
    g = graphs["FIX-C3"]
    one = enumerate_first_arrival(g, jobs=1, table=True)
    two = enumerate_first_arrival(g, jobs=2, table=True)
    assert one.counts == two.counts and one.table == two.table
    assert [row[0] for row in one.table] == list(range(8))


def test_ex1_variant_fix_e1(graphs):
    g = graphs["FIX-E1"]
    rep = enumerate_first_arrival(g, variant=EX1_ROOT)
    assert rep.total == 3 * 2**g.k == 12
    assert rep.probability == {"B": Fraction(1, 3), "C": Fraction(2, 3)}
    assert divides_power_of_two(rep.probability["B"], g.k, 3)
    assert not divides_power_of_two(rep.probability["B"], g.k)


def test_ex1_variant_needs_degree_three_entrance(graphs):
    with pytest.raises(ValueError, match="degree 3"):
        enumerate_first_arrival(graphs["FIX-Y"], variant=EX1_ROOT)


def test_enumeration_errors(graphs):
    with pytest.raises(ValueError, match="enumeration too large: k=3"):
        enumerate_first_arrival(graphs["FIX-C3"], limit=2)
    with pytest.raises(MazeError, match="target not in graph"):
        enumerate_first_arrival(graphs["FIX-Y"], ("B", "D"))
    with pytest.raises(ValueError, match="non-empty"):
        enumerate_first_arrival(graphs["FIX-Y"], ())


def test_enumeration_json(graphs):
    out = enumerate_first_arrival(graphs["FIX-C3"]).to_json()
    assert out["k"] == 3 and out["denominator"] == "8"
    assert out["counts"] == {"B": "4", "C": "4"}
    assert out["probability"] == {"B": "1/2", "C": "1/2"}


def test_fmt_fraction():
    assert fmt_fraction(Fraction(1)) == "1/1"
    assert fmt_fraction(Fraction(0)) == "0/1"
    assert fmt_fraction(Fraction(6, 8)) == "3/4"


# ---------------------------------------------------------------- Monte Carlo


def test_monte_carlo_fix_c3(graphs):
    rep = monte_carlo_first_arrival(graphs["FIX-C3"], trials=100_000, seed=7)
    assert abs(rep.estimate["B"] - 0.5) <= 3 * rep.stderr["B"]
    assert sum(rep.counts.values()) == 100_000


def test_monte_carlo_deterministic(graphs):
    g = graphs["FIX-C3"]
    a = monte_carlo_first_arrival(g, trials=2000, seed=11)
    b = monte_carlo_first_arrival(g, trials=2000, seed=11)
    c = monte_carlo_first_arrival(g, trials=2000, seed=11, jobs=3)
    assert a.to_json() == b.to_json() == c.to_json()
    assert a.counts != monte_carlo_first_arrival(g, trials=2000, seed=12).counts


def test_monte_carlo_zero_trials(graphs):
    with pytest.raises(ValueError, match="trials"):
        monte_carlo_first_arrival(graphs["FIX-Y"], trials=0)


def test_monte_carlo_json(graphs):
    out = monte_carlo_first_arrival(graphs["FIX-Y"], trials=10, seed=2**63 + 5).to_json()
    assert out["seed"] == str(2**63 + 5) and out["trials"] == 10
    assert set(out) >= {"counts", "estimate", "stderr"}


# ---------------------------------------------------------------- random walk


def test_walk_fix_l(graphs):
    rep = random_walk_exit_probabilities(graphs["FIX-L"])
    assert rep.probability["A"] == {"B": Fraction(2, 3), "C": Fraction(1, 3)}
    assert rep.probability["B"] == {"B": 1, "C": 0}


def test_walk_fix_y(graphs):
    assert random_walk_exit_probabilities(graphs["FIX-Y"]).probability["A"]["B"] == HALF


@settings(max_examples=40, deadline=None)
@given(st.one_of(mazes(max_side=3).map(to_room_graph), room_graphs(max_internal=6)))
def test_walk_matches_sympy(g):
    rep = random_walk_exit_probabilities(g)
    ref = sympy_walk(dict(g.rotation), "B")
    for v, p in ref.items():
        assert rep.probability[v]["B"] == p


@settings(max_examples=100, deadline=None)
@given(st.one_of(mazes(exits=3).map(to_room_graph), mazes().map(to_room_graph)))
def test_walk_rows_sum_to_one(g):
    rep = random_walk_exit_probabilities(g)
    for v, row in rep.probability.items():
        assert sum(row.values()) == 1
        if v in g.exits:
            assert row == {e: int(e == v) for e in g.exits}
    assert all(t["total"] == "1/1" for t in rep.to_json()["probability"].values())


def test_walk_monte_carlo_agrees(graphs):
    rep = monte_carlo_random_walk(graphs["FIX-L"], trials=100_000, seed=3)
    assert abs(rep.estimate["B"] - 2 / 3) <= 4 * rep.stderr["B"]


def test_walk_needs_an_exit():
    g = RoomGraph({"A": ("x",), "x": ("A", "y", "z"), "y": ("x",), "z": ("x",)})
    with pytest.raises(ValueError, match="at least one exit"):
        random_walk_exit_probabilities(g)


def test_solve_exact():
    m = [[Fraction(2), Fraction(1)], [Fraction(1), Fraction(3)]]
    assert solve_exact(m, [Fraction(3), Fraction(5)]) == [Fraction(4, 5), Fraction(7, 5)]
    with pytest.raises(ArithmeticError):
        solve_exact([[Fraction(1), Fraction(2)], [Fraction(2), Fraction(4)]], [Fraction(1), Fraction(1)])


# ---------------------------------------------------------------- door directions


def test_door_direction_fix_c(graphs):
    g = graphs["FIX-C"]
    assert door_direction_probability(g, ("A", "r0_0")) == 1
    assert door_direction_probability(g, ("r0_1", "r1_1")) == HALF
    table = door_direction_table(g)
    assert set(table.values()) <= {0, HALF, 1}
    assert all(table[(u, v)] + table[(v, u)] == 1 for u, v in g.doors)


def test_dead_end_doors_point_away_from_a():
    # rooms (0, 2) and (1, 2) form a dead-end corridor off the cycle
    m = parse_grid_maze("MZ1 2 3\n+A+-+-+\n|     |\n+ + + +\n|   | |\n+-+-+-+\n")
    g = to_room_graph(m)
    assert g.degree("r1_2") == 1 and g.degree("r0_2") == 2
    assert door_direction_probability(g, ("r0_1", "r0_2")) == 1
    assert door_direction_probability(g, ("r0_2", "r1_2")) == 1
    assert door_direction_probability(g, ("r1_2", "r0_2")) == 0


@settings(max_examples=60, deadline=None)
@given(mazes(exits=0, max_side=4).map(to_room_graph))
def test_door_directions_single_entrance(g):
    table = door_direction_table(g)
    assert set(table.values()) <= {0, HALF, 1}
    u, v = next(iter(g.doors))
    assert door_direction_probability(g, (u, v)) == table[(u, v)]


def test_door_direction_errors(graphs):
    with pytest.raises(MazeError, match="no door"):
        door_direction_probability(graphs["FIX-C"], ("A", "r1_1"))
    with pytest.raises(ValueError, match="enumeration too large"):
        door_direction_table(graphs["FIX-C3"], limit=1)


# ---------------------------------------------------------------- paths and orders


def test_shortest_paths(graphs):
    assert shortest_path_lengths(graphs["FIX-Y"]) == {"B": 2, "C": 2}
    assert shortest_path_lengths(graphs["FIX-L"]) == {"B": 2, "C": 3}


@settings(max_examples=100, deadline=None)
@given(room_graphs())
def test_shortest_paths_mirror_invariant(g):
    d, m = shortest_path_lengths(g), shortest_path_lengths(mirrored(g))
    assert (d["B"], d["C"]) == (m["C"], m["B"])


def test_compare_fix_l_and_fix_y(fix):
    r = compare_dfs_wallfollower(fix["FIX-L"])
    assert r["right"].equal and [u for u, _ in r["right"].dfs_steps] == ["A", "r0_0"]
    y = compare_dfs_wallfollower(fix["FIX-Y"])
    assert y["right"].equal and y["left"].equal


def test_compare_reports_divergence():
    r = compare_dfs_wallfollower(parse_grid_maze(DIVERGING))
    assert r["right"].describe() == "differs at step 7"
    assert r["right"].dfs_steps[7] == ("r1_1", "r1_0")
    assert r["right"].wall_steps[7] == ("r1_1", "r1_2")
    assert r["left"].describe() == "equal"


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 2**63))
def test_tree_mazes_dfs_matches_wall_follower(seed):
    from mazedfs.mazegen import GenConfig, generate

    m = generate(GenConfig(1 + seed % 5, 1 + (seed >> 5) % 5, seed))
    assert all(c.equal for c in compare_dfs_wallfollower(m).values())


def test_exit_order_report(graphs):
    assert exit_order_report(graphs["FIX-L"]) == {"RDFS": "B", "LDFS": "C"}
    assert exit_order_report(graphs["FIX-Y"]) == {"RDFS": "B", "LDFS": "C"}
    assert exit_order_report(mirrored(graphs["FIX-L"])) == {"RDFS": "B", "LDFS": "C"}


@settings(max_examples=100, deadline=None)
@given(room_graphs())
def test_mirror_swaps_handedness(g):
    m = mirrored(g)
    swap = {"B": "C", "C": "B"}
    assert explore(m, Handedness.LEFT).rooms == tuple(
        swap.get(v, v) for v in explore(g, Handedness.RIGHT).rooms
    )


def test_search_exit_probability():
    from mazedfs.mazegen import GENERAL, GenConfig, generate

    configs = [GenConfig(1, 2, 0, exits=3), GenConfig(3, 3, 4, GENERAL, 2, 3), GenConfig(6, 6, 1, GENERAL, 30, 3)]
    rep = search_exit_probability(configs, Fraction(1, 4), limit=12)
    assert (rep.searched, rep.skipped) == (2, 1)
    expected = []
    for cfg in configs[:2]:
        g = to_room_graph(generate(cfg))
        counts = reference_first_counts(g.rotation, ("B", "C", "D"))
        expected += [(cfg.seed, t) for t, n in counts.items() if 4 * n == 1 << g.k]
    assert [(int(h["seed"]), h["exit"]) for h in rep.hits] == expected
    assert expected and rep.nearest == Fraction(1, 4)
