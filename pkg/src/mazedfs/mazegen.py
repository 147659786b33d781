"""Seeded generators of valid grid mazes and room graphs for property tests."""

from __future__ import annotations

from dataclasses import dataclass

from .model import (
    LABELS,
    GridMaze,
    MazeError,
    RoomGraph,
    all_slots,
    boundary_ccw,
    is_boundary,
    room_sides,
    slot_rooms,
    validate_graph,
    validate_grid_maze,
)
from .rng import SplitMix64, mix64

TREE = "tree"
GENERAL = "general"

_MAX_ATTEMPTS = 1000


@dataclass(frozen=True)
class GenConfig:
    rows: int
    cols: int
    seed: int = 0
    mode: str = TREE
    extra_doors: int = 0
    exits: int = 2  # 0 gives an entrance-only maze

    def __post_init__(self):
        if self.rows < 1 or self.cols < 1:
            raise ValueError("rows and cols must be positive")
        if self.mode not in (TREE, GENERAL):
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.exits not in (0, 2, 3):
            raise ValueError("exits must be 0, 2 or 3")
        if self.extra_doors < 0:
            raise ValueError("extra_doors must be nonnegative")
        if self.mode == TREE and self.extra_doors:
            raise ValueError("extra_doors needs general mode")


def _door_count(open_slots: set, r: int, c: int) -> int:
    return sum(s in open_slots for s in room_sides(r, c).values())


def _carve(rows: int, cols: int, rng: SplitMix64) -> set | None:
    """Randomized depth-first carving of a spanning tree with at most 3 doors per room."""
    open_slots: set = set()
    start = (rng.below(rows), rng.below(cols))
    seen = {start}
    stack = [start]
    while stack:
        r, c = stack[-1]
        options = []
        if _door_count(open_slots, r, c) < 3:
            for slot in room_sides(r, c).values():
                if is_boundary(slot, rows, cols):
                    continue
                other = next(rc for rc in slot_rooms(slot, rows, cols) if rc != (r, c))
                if other not in seen:
                    options.append((slot, other))
        if not options:
            stack.pop()
            continue
        slot, other = options[rng.below(len(options))]
        open_slots.add(slot)
        seen.add(other)
        stack.append(other)
    if len(seen) != rows * cols:
        return None
    return open_slots


def _place_openings(rows, cols, open_slots, n, rng) -> list | None:
    boundary = boundary_ccw(rows, cols)
    if n > len(boundary):
        return None
    for _ in range(_MAX_ATTEMPTS):
        picks = set()
        while len(picks) < n:
            picks.add(rng.below(len(boundary)))
        trial = open_slots | {boundary[i] for i in picks}
        if all(_door_count(trial, *slot_rooms(boundary[i], rows, cols)[0]) <= 3 for i in picks):
            ordered = sorted(picks)
            start = rng.below(n)
            ordered = ordered[start:] + ordered[:start]
            return [(LABELS[j], boundary[i]) for j, i in enumerate(ordered)]
    return None


def generate(config: GenConfig) -> GridMaze:
    """A valid maze for ``config``; identical configs give identical mazes."""
    rows, cols = config.rows, config.cols
    n_open = 1 + config.exits
    if n_open > 2 * (rows + cols) - (rows * cols == 1):
        raise MazeError(f"cannot place {n_open} openings on a {rows}x{cols} grid")
    for attempt in range(_MAX_ATTEMPTS):
        rng = SplitMix64(mix64(config.seed) ^ attempt)
        open_slots = _carve(rows, cols, rng)
        if open_slots is None:
            continue
        openings = _place_openings(rows, cols, open_slots, n_open, rng)
        if openings is None:
            continue
        open_slots |= {s for _, s in openings}
        if config.mode == GENERAL and config.extra_doors:
            candidates = [
                s for s in all_slots(rows, cols) if not is_boundary(s, rows, cols) and s not in open_slots
            ]
            rng.shuffle(candidates)
            added = 0
            for s in candidates:
                if added == config.extra_doors:
                    break
                if all(_door_count(open_slots, *rc) < 3 for rc in slot_rooms(s, rows, cols)):
                    open_slots.add(s)
                    added += 1
        walls = frozenset(s for s in all_slots(rows, cols) if s not in open_slots)
        maze = GridMaze(rows, cols, walls, tuple(openings))
        validate_grid_maze(maze)
        return maze
    raise MazeError(f"no valid maze found for {config}")


def generate_graph(
    seed: int,
    internal: int = 4,
    extra_edges: int = 0,
    exits: int = 2,
    general: bool = False,
    hub_degree: int = 4,
) -> RoomGraph:
    """A random connected graph with terminal leaves and random rotations.

    ``internal`` non-terminal vertices are joined by a random tree, then up
    to ``extra_edges`` more edges are added.  With ``general`` the first
    vertex is a hub of degree ``hub_degree`` (at least 4); everything else
    keeps degree at most 3.
    """
    if internal < 1:
        raise ValueError("need at least one internal vertex")
    if exits not in (0, 2, 3):
        raise ValueError("exits must be 0, 2 or 3")
    if general and hub_degree < 4:
        raise ValueError("a general graph needs a hub of degree at least 4")
    n_term = 1 + exits
    cap = [3] * internal
    if general:
        cap[0] = hub_degree
        if internal == 1 and hub_degree > n_term:
            raise ValueError("bounds unsatisfiable: hub cannot be filled")
    for attempt in range(_MAX_ATTEMPTS):
        rng = SplitMix64(mix64(seed) ^ (attempt << 32))
        names = [f"v{i}" for i in range(internal)]
        adj: dict[str, list[str]] = {v: [] for v in names}
        deg = [0] * internal
        ok = True
        order = list(range(internal))
        rng.shuffle(order)
        if general:
            # the hub goes first so it can collect neighbours
            order.remove(0)
            order.insert(0, 0)
        placed = [order[0]]
        for i in order[1:]:
            room = [j for j in placed if deg[j] < cap[j]]
            if not room:
                ok = False
                break
            if general and deg[0] < cap[0] and 0 in room and rng.below(2):
                j = 0
            else:
                j = room[rng.below(len(room))]
            adj[names[i]].append(names[j])
            adj[names[j]].append(names[i])
            deg[i] += 1
            deg[j] += 1
            placed.append(i)
        if not ok:
            continue
        terminals = list(LABELS[:n_term])
        for t in terminals:
            room = [j for j in range(internal) if deg[j] < cap[j]]
            if not room:
                ok = False
                break
            j = room[rng.below(len(room))]
            adj[names[j]].append(t)
            adj[t] = [names[j]]
            deg[j] += 1
        if not ok:
            continue
        added = 0
        tries = 0
        while added < extra_edges and tries < 20 * (extra_edges + 1):
            tries += 1
            free = [j for j in range(internal) if deg[j] < cap[j]]
            if len(free) < 2:
                break
            a = free[rng.below(len(free))]
            b = free[rng.below(len(free))]
            if a == b or names[b] in adj[names[a]]:
                continue
            adj[names[a]].append(names[b])
            adj[names[b]].append(names[a])
            deg[a] += 1
            deg[b] += 1
            added += 1
        if general and deg[0] < 4:
            continue
        rot = {}
        for v, nbrs in adj.items():
            nbrs = list(nbrs)
            rng.shuffle(nbrs)
            rot[v] = tuple(nbrs)
        g = RoomGraph(rot, "general" if general else "room")
        validate_graph(g)
        return g
    raise ValueError("bounds unsatisfiable")
