"""Wall followers, the depth-first (Tremaux) exploration engine, DFS trees and pivots."""

from __future__ import annotations

import enum
import sys
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from itertools import product
from typing import Callable, Mapping, NamedTuple, Union

from .model import (
    ENTRANCE,
    GridMaze,
    MazeError,
    RoomGraph,
    is_plane,
    room_name,
    room_sides,
    slot_rooms,
    to_room_graph,
)

Door = tuple[str, str]

CLOSED = "closed"
EXIT = "exit"


class Handedness(enum.Enum):
    RIGHT = "right"
    LEFT = "left"


HEADS = True
TAILS = False


@dataclass(frozen=True)
class CoinAssignment:
    """Coin outcomes (``True`` = Heads) for the degree-3 vertices of a graph.

    ``root_choice`` is only used when the entrance itself has degree 3: it
    picks which of the entrance's doors is tried first, and the entrance's
    own coin then orders the remaining two.
    """

    coins: Mapping[str, bool]
    root_choice: int | None = None

    @classmethod
    def from_bits(cls, g: RoomGraph, bits: str, root_choice: int | None = None) -> "CoinAssignment":
        verts = g.coin_vertices
        if len(bits) != len(verts) or set(bits) - {"0", "1"}:
            raise ValueError(f"expected {len(verts)} coin{'s' if len(verts) != 1 else ''}, got {len(bits)}")
        return cls({v: b == "1" for v, b in zip(verts, bits)}, root_choice)

    @classmethod
    def from_mask(cls, g: RoomGraph, mask: int, root_choice: int | None = None) -> "CoinAssignment":
        """Bit ``i`` of ``mask`` is the coin of the ``i``-th coin vertex."""
        return cls({v: bool(mask >> i & 1) for i, v in enumerate(g.coin_vertices)}, root_choice)

    @classmethod
    def uniform(cls, g: RoomGraph, heads: bool) -> "CoinAssignment":
        return cls({v: heads for v in g.coin_vertices})

    def bits(self, g: RoomGraph) -> str:
        return "".join("1" if self.coins[v] else "0" for v in g.coin_vertices)

    def flipped(self, v: str) -> "CoinAssignment":
        coins = dict(self.coins)
        coins[v] = not coins[v]
        return CoinAssignment(coins, self.root_choice)

    def __call__(self, v: str) -> bool:
        return self.coins[v]


Policy = Union[Handedness, CoinAssignment, Callable[[str], bool]]


@dataclass(frozen=True)
class Trace:
    """A walk as a sequence of directed door traversals."""

    steps: tuple[Door, ...]
    mode: str = CLOSED
    coin_log: tuple[tuple[str, bool], ...] = ()
    start: str = ENTRANCE

    def __len__(self) -> int:
        return len(self.steps)

    @cached_property
    def rooms(self) -> tuple[str, ...]:
        """Vertex sequence of the walk, starting vertex included."""
        return (self.start,) + tuple(v for _, v in self.steps)

    @cached_property
    def first_visits(self) -> tuple[str, ...]:
        seen = {self.start}
        order = [self.start]
        for _, v in self.steps:
            if v not in seen:
                seen.add(v)
                order.append(v)
        return tuple(order)

    @cached_property
    def tree_doors(self) -> tuple[Door, ...]:
        """Doors through which a never-visited vertex was first entered."""
        seen = {self.start}
        out = []
        for u, v in self.steps:
            if v not in seen:
                seen.add(v)
                out.append((u, v))
        return tuple(out)

    @property
    def end(self) -> str:
        return self.steps[-1][1] if self.steps else self.start

    def position(self, door: Door) -> int | None:
        try:
            return self.steps.index(door)
        except ValueError:
            return None


def serialize_trace(trace: Trace, exit_label: str | None = None) -> str:
    lines = [f"{u} -> {v}" for u, v in trace.steps]
    lines.append(f"# mode {trace.mode}")
    lines.append(f"# length {len(trace)}")
    lines.append("# first-visit " + " ".join(trace.first_visits))
    if exit_label is not None:
        lines.append(f"# exit-order {exit_label}")
    if trace.coin_log:
        lines.append("# coins " + " ".join(f"{v}={'H' if h else 'T'}" for v, h in trace.coin_log))
    return "\n".join(lines) + "\n"


def parse_trace(text: str, mode: str = CLOSED) -> Trace:
    steps = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            if line.startswith("# mode "):
                mode = line.split()[2]
            continue
        u, arrow, v = line.partition("->")
        if not arrow:
            raise MazeError(f"bad trace line {line!r}")
        steps.append((u.strip(), v.strip()))
    return Trace(tuple(steps), mode)


# ---------------------------------------------------------------------------
# wall followers

_TURN_RIGHT = {"N": "E", "E": "S", "S": "W", "W": "N"}
_TURN_LEFT = {v: k for k, v in _TURN_RIGHT.items()}
_BACK = {"N": "S", "S": "N", "E": "W", "W": "E"}


def wall_follower(maze: GridMaze, hand: Handedness) -> tuple[Trace, str]:
    """Walk in through A keeping one hand on the wall; stop at the first exit reached."""
    rows, cols = maze.rows, maze.cols
    a_slot = maze.opening_slot[ENTRANCE]
    r, c = slot_rooms(a_slot, rows, cols)[0]
    side = next(d for d, s in room_sides(r, c).items() if s == a_slot)
    heading = _BACK[side]
    steps = [(ENTRANCE, room_name(r, c))]
    door_count = to_room_graph(maze).door_count
    first, third = (_TURN_RIGHT, _TURN_LEFT) if hand is Handedness.RIGHT else (_TURN_LEFT, _TURN_RIGHT)
    while True:
        for d in (first[heading], heading, third[heading], _BACK[heading]):
            slot = room_sides(r, c)[d]
            if maze.is_open(slot):
                break
        here = room_name(r, c)
        if slot in maze.opening_at:
            label = maze.opening_at[slot]
            steps.append((here, label))
            if label == ENTRANCE:
                raise AssertionError("wall follower walked back out of the entrance")
            break
        r, c = next(rc for rc in slot_rooms(slot, rows, cols) if rc != (r, c))
        heading = d
        steps.append((here, room_name(r, c)))
        if len(steps) > 2 * door_count:
            raise AssertionError("wall follower exceeded twice the door count")
    return Trace(tuple(steps), EXIT), label


# ---------------------------------------------------------------------------
# depth-first exploration


def _coin_function(g: RoomGraph, policy: Policy) -> Callable[[str], bool]:
    if isinstance(policy, Handedness):
        heads = policy is Handedness.RIGHT
        return lambda v: heads
    if isinstance(policy, CoinAssignment):
        missing = [v for v in g.coin_vertices if v not in policy.coins]
        if missing:
            raise ValueError("incomplete coin domain: no coin for " + ", ".join(missing))
        return policy.coins.__getitem__
    return policy


def _root_order(g: RoomGraph, coin: Callable[[str], bool], root_choice: int | None, log: list) -> tuple[str, ...]:
    nbrs = g.rotation[ENTRANCE]
    d = len(nbrs)
    if root_choice is None:
        if d != 1:
            raise ValueError(f"entrance has degree {d}; a root choice is required")
        return nbrs
    if not 0 <= root_choice < d:
        raise ValueError(f"root choice {root_choice} out of range for degree {d}")
    heads = True
    if d == 3:
        heads = coin(ENTRANCE)
        log.append((ENTRANCE, heads))
    step = 1 if heads else -1
    return tuple(nbrs[(root_choice + step * j) % d] for j in range(d))


def _walk(g, coin, stop=(), root_choice=None, record=True):
    """The exploration loop.

    On first entry to a vertex its other doors are queued right-first
    (coin Heads) or left-first (Tails).  A door is never reused once
    traversed; a door into a visited vertex is walked and immediately
    walked back.  Returns ``(steps, coin_log, first_target)``.
    """
    orders = g.entry_orders
    steps = []
    log = []
    visited = {ENTRANCE}
    used = set()
    stack = [(ENTRANCE, iter(_root_order(g, coin, root_choice, log)), None)]
    while stack:
        v, it, parent = stack[-1]
        for w in it:
            key = (v, w) if v < w else (w, v)
            if key not in used:
                break
        else:
            stack.pop()
            if parent is not None and record:
                steps.append((v, parent))
            continue
        used.add(key)
        if record:
            steps.append((v, w))
        if w in visited:
            if record:
                steps.append((w, v))
            continue
        visited.add(w)
        if w in stop:
            return steps, log, w
        right_first, left_first = orders[w][v]
        if len(right_first) == 2:
            heads = coin(w)
            log.append((w, heads))
            stack.append((w, iter(right_first if heads else left_first), v))
        else:
            stack.append((w, iter(right_first), v))
    return steps, log, None


def explore(g: RoomGraph, policy: Policy, mode: str = CLOSED, root_choice: int | None = None) -> Trace:
    """Depth-first exploration from A.

    ``closed`` treats the exits as dead ends and returns to A after using
    every door once in each direction; ``exit`` stops at the first arrival
    at an exit.
    """
    if mode not in (CLOSED, EXIT):
        raise ValueError(f"unknown mode {mode!r}")
    coin = _coin_function(g, policy)
    if root_choice is None and isinstance(policy, CoinAssignment):
        root_choice = policy.root_choice
    stop = frozenset(g.exits) if mode == EXIT else frozenset()
    steps, log, _ = _walk(g, coin, stop, root_choice)
    return Trace(tuple(steps), mode, tuple(log))


def first_arrival(trace: Trace, targets) -> str:
    targets = set(targets)
    for v in trace.first_visits:
        if v in targets:
            return v
    raise AssertionError("trace never reaches any target")


def exit_order(trace: Trace) -> str:
    """``"B"`` if B is visited before C, else ``"C"``."""
    return first_arrival(trace, ("B", "C"))


# ---------------------------------------------------------------------------
# DFS trees, pivots and the involution


@dataclass(frozen=True)
class DfsTree:
    root: str
    parent: Mapping[str, str] = field(default_factory=dict)

    @cached_property
    def edges(self) -> frozenset[frozenset[str]]:
        return frozenset(frozenset((c, p)) for c, p in self.parent.items())

    @cached_property
    def adjacency(self) -> dict[str, set[str]]:
        adj: dict[str, set[str]] = {self.root: set()}
        for c, p in self.parent.items():
            adj.setdefault(c, set()).add(p)
            adj.setdefault(p, set()).add(c)
        return adj

    def path_to_root(self, v: str) -> list[str]:
        path = [v]
        while v != self.root:
            v = self.parent[v]
            path.append(v)
        return path

    def __eq__(self, other):
        if not isinstance(other, DfsTree):
            return NotImplemented
        return self.root == other.root and dict(self.parent) == dict(other.parent)

    __hash__ = None


def dfs_tree(trace: Trace) -> DfsTree:
    return DfsTree(trace.start, {v: u for u, v in trace.tree_doors})


class PivotResult(NamedTuple):
    pivot: str
    components: dict[str, frozenset[str]]


def tree_components(adj: Mapping[str, set[str]], removed: str) -> list[frozenset[str]]:
    seen = {removed}
    comps = []
    for s in adj:
        if s in seen:
            continue
        comp = {s}
        seen.add(s)
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    comp.add(w)
                    queue.append(w)
        comps.append(frozenset(comp))
    return comps


def pivot_vertex(tree: DfsTree, terminals=("A", "B", "C")) -> PivotResult:
    a, b, c = terminals
    if tree.root != a:
        raise ValueError("tree must be rooted at the entrance")
    above_b = set(tree.path_to_root(b))
    x = next(v for v in tree.path_to_root(c) if v in above_b)
    comps = tree_components(tree.adjacency, x)
    where = {t: next(comp for comp in comps if t in comp) for t in terminals}
    assert len(tree.adjacency[x]) == 3, "pivot must have tree degree 3"
    assert len(set(where.values())) == 3, "terminals not separated by the pivot"
    return PivotResult(x, where)


def involution_flip(g: RoomGraph, coins: CoinAssignment) -> CoinAssignment:
    """Flip the coin at the pivot of the run's DFS tree."""
    tree = dfs_tree(explore(g, coins))
    return coins.flipped(pivot_vertex(tree).pivot)


# ---------------------------------------------------------------------------
# drawing a closed tour without self-intersection


class CrossingResult(NamedTuple):
    ok: bool
    witness: str | None
    drive_right: dict[frozenset[str], bool] | None


def _chords_cross(p, q) -> bool:
    a, b = sorted(p)
    c, d = sorted(q)
    return (a < c < b) != (a < d < b)


def _vertex_ok(g, v, passes, assign) -> bool:
    """Check the chord system at ``v`` given lane sides for its doors."""
    nbrs = g.rotation[v]
    idx = {w: i for i, w in enumerate(nbrs)}

    def out_pos(w):
        # outgoing lane v->w sits on the right of the ray v->w (first ccw slot) iff drive-right
        return 2 * idx[w] + (0 if assign[frozenset((v, w))] else 1)

    def in_pos(w):
        return 2 * idx[w] + (1 if assign[frozenset((v, w))] else 0)

    chords = [(in_pos(x), out_pos(y)) for x, y in passes]
    for i in range(len(chords)):
        for j in range(i + 1, len(chords)):
            if _chords_cross(chords[i], chords[j]):
                return False
    return True


def noncrossing_check(g: RoomGraph, trace: Trace) -> CrossingResult:
    """Search lane sides for every door so the closed tour has no crossing.

    Each door carries two lanes, one per direction.  At a vertex, each pass
    of the tour (in through one lane, out through another) is a chord of a
    small circle around the vertex; the tour is drawable without
    self-intersection iff some choice of lane sides makes every vertex's
    chords pairwise non-crossing.
    """
    if not is_plane(g):
        raise MazeError("noncrossing_check needs a planar rotation system")
    if trace.mode != CLOSED or g.degree(ENTRANCE) != 1:
        raise ValueError("noncrossing_check needs a closed trace from a degree-1 entrance")
    passes: dict[str, list[tuple[str, str]]] = {v: [] for v in g.vertices}
    for (x, v), (v2, y) in zip(trace.steps, trace.steps[1:]):
        assert v == v2, "trace steps are not incident"
        passes[v].append((x, y))

    # order doors breadth-first so vertices complete early
    order: list[frozenset[str]] = []
    seen_doors = set()
    seen_v = {ENTRANCE}
    queue = deque([ENTRANCE])
    while queue:
        v = queue.popleft()
        for w in g.rotation[v]:
            key = frozenset((v, w))
            if key not in seen_doors:
                seen_doors.add(key)
                order.append(key)
            if w not in seen_v:
                seen_v.add(w)
                queue.append(w)
    last_door = {}
    for i, key in enumerate(order):
        for v in key:
            last_door[v] = i
    check_at: dict[int, list[str]] = {}
    for v, i in last_door.items():
        if passes[v]:
            check_at.setdefault(i, []).append(v)

    assign: dict[frozenset[str], bool] = {}
    blame = {"v": None}

    def search(i):
        if i == len(order):
            return True
        for value in (True, False):
            assign[order[i]] = value
            bad = next((v for v in check_at.get(i, ()) if not _vertex_ok(g, v, passes[v], assign)), None)
            if bad is None:
                if search(i + 1):
                    return True
            else:
                blame["v"] = bad
        del assign[order[i]]
        return False

    limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(limit, 4 * len(order) + 100))
    try:
        found = search(0)
    finally:
        sys.setrecursionlimit(limit)
    if found:
        return CrossingResult(True, None, dict(assign))
    return CrossingResult(False, blame["v"], None)


def all_assignments(g: RoomGraph):
    for bits in product((False, True), repeat=g.k):
        yield CoinAssignment(dict(zip(g.coin_vertices, bits)))
