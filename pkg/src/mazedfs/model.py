"""Maze and room-graph representations, the MZ1/GR1 text formats, and validation.

A grid maze is stored on its character grid: room ``(r, c)`` sits at
``(2r+1, 2c+1)`` and every wall slot between two posts has an even/odd
coordinate pair.  The graph form keeps, for each vertex, its neighbours in
counterclockwise order (a rotation system); "right" and "left" for the
explorers are read off that order.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping

Slot = tuple[int, int]

ENTRANCE = "A"
EXIT_LABELS = ("B", "C", "D")
# a maze carries A alone, A B C, or A B C D
LABELS = (ENTRANCE,) + EXIT_LABELS

GRAPH_KINDS = ("room", "general", "ex1")

# Counterclockwise compass order.
COMPASS = ("N", "W", "S", "E")


class MazeError(ValueError):
    """Raised for malformed or invalid mazes and graphs.

    ``where`` carries the offending slot, room or vertex when there is one.
    """

    def __init__(self, message: str, where=None):
        self.where = where
        if where is not None:
            message = f"{message} at {_fmt_where(where)}"
        super().__init__(message)


def _fmt_where(where) -> str:
    if isinstance(where, tuple):
        return "({}, {})".format(*where)
    return str(where)


# ---------------------------------------------------------------------------
# grid mazes


def room_center(r: int, c: int) -> Slot:
    return 2 * r + 1, 2 * c + 1


def room_sides(r: int, c: int) -> dict[str, Slot]:
    y, x = room_center(r, c)
    return {"N": (y - 1, x), "W": (y, x - 1), "S": (y + 1, x), "E": (y, x + 1)}


def all_slots(rows: int, cols: int) -> list[Slot]:
    slots = []
    for y in range(2 * rows + 1):
        for x in range(2 * cols + 1):
            if (y + x) % 2 == 1:
                slots.append((y, x))
    return slots


def is_boundary(slot: Slot, rows: int, cols: int) -> bool:
    y, x = slot
    return y in (0, 2 * rows) or x in (0, 2 * cols)


def boundary_ccw(rows: int, cols: int) -> list[Slot]:
    """Boundary slots in counterclockwise order, starting at the top of the left column."""
    left = [(2 * r + 1, 0) for r in range(rows)]
    bottom = [(2 * rows, 2 * c + 1) for c in range(cols)]
    right = [(2 * r + 1, 2 * cols) for r in reversed(range(rows))]
    top = [(0, 2 * c + 1) for c in reversed(range(cols))]
    return left + bottom + right + top


def slot_rooms(slot: Slot, rows: int, cols: int) -> list[tuple[int, int]]:
    """Rooms on either side of a slot (one for boundary slots, two otherwise)."""
    y, x = slot
    if y % 2 == 0:
        candidates = [((y - 2) // 2, (x - 1) // 2), (y // 2, (x - 1) // 2)]
    else:
        candidates = [((y - 1) // 2, (x - 2) // 2), ((y - 1) // 2, x // 2)]
    return [(r, c) for r, c in candidates if 0 <= r < rows and 0 <= c < cols]


@dataclass(frozen=True)
class GridMaze:
    rows: int
    cols: int
    wall_slots: frozenset[Slot]
    openings: tuple[tuple[str, Slot], ...]

    @cached_property
    def opening_at(self) -> dict[Slot, str]:
        return {slot: label for label, slot in self.openings}

    @cached_property
    def opening_slot(self) -> dict[str, Slot]:
        return dict(self.openings)

    @property
    def labels(self) -> str:
        return "".join(label for label, _ in self.openings)

    def rooms(self) -> list[tuple[int, int]]:
        return [(r, c) for r in range(self.rows) for c in range(self.cols)]

    def is_open(self, slot: Slot) -> bool:
        return slot not in self.wall_slots

    def doors(self, r: int, c: int) -> list[str]:
        """Compass directions of the open sides of a room, counterclockwise from N."""
        sides = room_sides(r, c)
        return [d for d in COMPASS if self.is_open(sides[d])]


def _check_labels(labels: Iterable[str], where=None) -> None:
    present = set(labels)
    if ENTRANCE not in present:
        raise MazeError("missing opening A", where)
    if present - {ENTRANCE}:
        for label in ("B", "C"):
            if label not in present:
                raise MazeError(f"missing opening {label}", where)


def validate_grid_maze(maze: GridMaze) -> None:
    rows, cols = maze.rows, maze.cols
    if rows < 1 or cols < 1:
        raise MazeError(f"malformed grid dimensions {rows}x{cols}")
    seen: dict[str, Slot] = {}
    for label, slot in maze.openings:
        if label not in LABELS:
            raise MazeError(f"unknown opening label {label!r}", slot)
        if label in seen:
            raise MazeError(f"duplicate opening {label}", slot)
        if not is_boundary(slot, rows, cols):
            raise MazeError(f"opening {label} on an interior slot", slot)
        if slot in maze.wall_slots:
            raise MazeError(f"opening {label} is also a wall", slot)
        seen[label] = slot
    _check_labels(seen)

    for r, c in maze.rooms():
        if len(maze.doors(r, c)) == 4:
            raise MazeError("room with no wall", (r, c))

    for slot in boundary_ccw(rows, cols):
        if slot not in maze.wall_slots and slot not in maze.opening_at:
            raise MazeError("boundary slot is neither a wall nor an opening", slot)

    order = [maze.opening_at[s] for s in boundary_ccw(rows, cols) if s in maze.opening_at]
    i = order.index(ENTRANCE)
    cyclic = "".join(order[i:] + order[:i])
    if cyclic != "".join(sorted(cyclic)):
        raise MazeError("openings not counterclockwise " + ",".join(sorted(cyclic)))

    # connectivity over rooms; openings hang off their room
    start = slot_rooms(maze.opening_slot[ENTRANCE], rows, cols)[0]
    seen_rooms = {start}
    queue = deque([start])
    while queue:
        r, c = queue.popleft()
        for slot in room_sides(r, c).values():
            if not maze.is_open(slot):
                continue
            for other in slot_rooms(slot, rows, cols):
                if other not in seen_rooms:
                    seen_rooms.add(other)
                    queue.append(other)
    for room in maze.rooms():
        if room not in seen_rooms:
            raise MazeError("maze is disconnected: unreachable room", room)


_HEADER = re.compile(r"^MZ1\s+(\d+)\s+(\d+)\s*$")


def parse_grid_maze(text: str) -> GridMaze:
    lines = text.splitlines()
    while lines and not lines[-1].strip():
        lines.pop()
    if not lines:
        raise MazeError("empty input")
    m = _HEADER.match(lines[0].strip())
    if not m:
        raise MazeError(f"malformed MZ1 header {lines[0].strip()!r}")
    rows, cols = int(m.group(1)), int(m.group(2))
    if rows < 1 or cols < 1:
        raise MazeError(f"malformed grid dimensions {rows}x{cols}")
    height, width = 2 * rows + 1, 2 * cols + 1
    body = lines[1:]
    if len(body) != height:
        raise MazeError(f"expected {height} grid lines for {rows}x{cols}, got {len(body)}")

    walls = set()
    openings = []
    for y, line in enumerate(body):
        line = line.rstrip()
        if len(line) > width:
            raise MazeError(f"grid line {y} longer than {width} characters")
        line = line.ljust(width)
        for x, ch in enumerate(line):
            if y % 2 == 0 and x % 2 == 0:
                if ch != "+":
                    raise MazeError(f"illegal character {ch!r} at post", (y, x))
            elif y % 2 == 1 and x % 2 == 1:
                if ch != " ":
                    raise MazeError(f"illegal character {ch!r} in room cell", (y, x))
            else:
                wall = "-" if y % 2 == 0 else "|"
                if ch == wall:
                    walls.add((y, x))
                elif ch in LABELS:
                    if not is_boundary((y, x), rows, cols):
                        raise MazeError(f"opening letter {ch} on an interior slot", (y, x))
                    openings.append((ch, (y, x)))
                elif ch != " ":
                    raise MazeError(f"illegal character {ch!r} in slot", (y, x))
                # a blank boundary slot is left for validation to report

    maze = GridMaze(rows, cols, frozenset(walls), tuple(sorted(openings)))
    validate_grid_maze(maze)
    return maze


def grid_lines(maze: GridMaze) -> list[str]:
    """The MZ1 body lines of a maze."""
    out = []
    for y in range(2 * maze.rows + 1):
        row = []
        for x in range(2 * maze.cols + 1):
            if y % 2 == 0 and x % 2 == 0:
                row.append("+")
            elif y % 2 == 1 and x % 2 == 1:
                row.append(" ")
            elif (y, x) in maze.opening_at:
                row.append(maze.opening_at[(y, x)])
            elif (y, x) in maze.wall_slots:
                row.append("-" if y % 2 == 0 else "|")
            else:
                row.append(" ")
        out.append("".join(row))
    return out


def serialize_grid_maze(maze: GridMaze) -> str:
    return "\n".join([f"MZ1 {maze.rows} {maze.cols}"] + grid_lines(maze)) + "\n"


# ---------------------------------------------------------------------------
# room graphs


def room_name(r: int, c: int) -> str:
    return f"r{r}_{c}"


@dataclass(frozen=True, eq=False)
class RoomGraph:
    """A connected graph with a rotation system.

    ``rotation`` maps each vertex (in declaration order) to its neighbours in
    counterclockwise order.  Terminal vertices are named ``A`` .. ``D``.
    ``kind`` selects the validation rules: ``room`` (max degree 3, terminals
    are leaves), ``general`` (no degree bound) or ``ex1`` (max degree 3,
    terminals of any degree).  Treat instances as immutable.
    """

    rotation: Mapping[str, tuple[str, ...]]
    kind: str = "room"
    rooms: Mapping[str, tuple[int, int]] = field(default_factory=dict)

    def __eq__(self, other):
        if not isinstance(other, RoomGraph):
            return NotImplemented
        return (
            list(self.rotation.items()) == list(other.rotation.items())
            and self.kind == other.kind
        )

    __hash__ = None

    @cached_property
    def vertices(self) -> tuple[str, ...]:
        return tuple(self.rotation)

    def degree(self, v: str) -> int:
        return len(self.rotation[v])

    @cached_property
    def labels(self) -> str:
        return "".join(label for label in LABELS if label in self.rotation)

    @cached_property
    def exits(self) -> tuple[str, ...]:
        return tuple(label for label in EXIT_LABELS if label in self.rotation)

    @cached_property
    def doors(self) -> tuple[tuple[str, str], ...]:
        """Undirected doors, each once, in declaration order."""
        seen = set()
        out = []
        for v, nbrs in self.rotation.items():
            for w in nbrs:
                key = frozenset((v, w))
                if key not in seen:
                    seen.add(key)
                    out.append((v, w))
        return tuple(out)

    @property
    def door_count(self) -> int:
        return len(self.doors)

    @cached_property
    def coin_vertices(self) -> tuple[str, ...]:
        """Vertices that own a coin: every vertex of degree three, in declaration order."""
        return tuple(v for v in self.vertices if self.degree(v) == 3)

    @property
    def k(self) -> int:
        return len(self.coin_vertices)

    @cached_property
    def entry_orders(self) -> dict[str, dict[str, tuple[tuple[str, ...], tuple[str, ...]]]]:
        """For vertex w entered from v: (right-first, left-first) order of w's other doors.

        Right-first walks the counterclockwise list forward from the entry door.
        """
        out = {}
        for w, nbrs in self.rotation.items():
            d = len(nbrs)
            out[w] = {
                v: (
                    tuple(nbrs[(i + j) % d] for j in range(1, d)),
                    tuple(nbrs[(i - j) % d] for j in range(1, d)),
                )
                for i, v in enumerate(nbrs)
            }
        return out

    def has_door(self, u: str, v: str) -> bool:
        return u in self.rotation and v in self.rotation[u]

    def max_degree(self) -> int:
        return max(len(n) for n in self.rotation.values())

    def adjacency(self) -> dict[str, set[str]]:
        return {v: set(n) for v, n in self.rotation.items()}


def validate_graph(g: RoomGraph, kind: str | None = None) -> None:
    kind = kind or g.kind
    if kind not in GRAPH_KINDS:
        raise MazeError(f"unknown graph kind {kind!r}")
    rot = g.rotation
    if not rot:
        raise MazeError("empty graph")
    for v, nbrs in rot.items():
        if len(set(nbrs)) != len(nbrs):
            raise MazeError("multiple doors between the same pair of vertices", v)
        for w in nbrs:
            if w == v:
                raise MazeError("self-loop", v)
            if w not in rot:
                raise MazeError(f"unknown neighbour {w}", v)
            if v not in rot[w]:
                raise MazeError(f"asymmetric adjacency: {v} lists {w} but {w} does not list {v}", v)
    _check_labels(label for label in LABELS if label in rot)
    for v, nbrs in rot.items():
        if kind != "general" and len(nbrs) > 3:
            raise MazeError("degree exceeds three", v)
        if v in LABELS and kind != "ex1" and len(nbrs) != 1:
            raise MazeError(f"terminal {v} must have degree 1, has {len(nbrs)}", v)
        if not nbrs:
            raise MazeError("isolated vertex", v)
    seen = {ENTRANCE}
    queue = deque([ENTRANCE])
    while queue:
        v = queue.popleft()
        for w in rot[v]:
            if w not in seen:
                seen.add(w)
                queue.append(w)
    for v in rot:
        if v not in seen:
            raise MazeError("graph is disconnected: unreachable vertex", v)


_NAME = re.compile(r"^[A-Za-z0-9_.~-]+$")


def parse_graph(text: str, kind: str | None = None) -> RoomGraph:
    """Parse GR1 text.  ``kind`` overrides the header's mode keyword."""
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise MazeError("empty input")
    head = lines[0].split()
    if head[0] != "GR1" or len(head) > 2:
        raise MazeError(f"malformed GR1 header {lines[0]!r}")
    header_kind = "room"
    if len(head) == 2:
        if head[1] not in ("general", "ex1"):
            raise MazeError(f"unknown GR1 mode {head[1]!r}")
        header_kind = head[1]
    rotation: dict[str, tuple[str, ...]] = {}
    for lineno, line in enumerate(lines[1:], start=2):
        if ":" not in line:
            raise MazeError(f"line {lineno}: expected 'name: neighbours'")
        name, rest = line.split(":", 1)
        name = name.strip()
        nbrs = tuple(rest.split())
        for token in (name,) + nbrs:
            if not _NAME.match(token):
                raise MazeError(f"line {lineno}: bad vertex name {token!r}")
        if name in rotation:
            raise MazeError("duplicate vertex", name)
        rotation[name] = nbrs
    g = RoomGraph(rotation, kind or header_kind)
    validate_graph(g)
    return g


def serialize_graph(g: RoomGraph) -> str:
    head = "GR1" if g.kind == "room" else f"GR1 {g.kind}"
    body = [f"{v}: {' '.join(n)}".rstrip() for v, n in g.rotation.items()]
    return "\n".join([head] + body) + "\n"


def to_room_graph(maze: GridMaze) -> RoomGraph:
    rot: dict[str, tuple[str, ...]] = {}
    rooms = {}
    leaf_nbr: dict[str, str] = {}
    for r, c in maze.rooms():
        name = room_name(r, c)
        rooms[name] = (r, c)
        nbrs = []
        sides = room_sides(r, c)
        for d in COMPASS:
            slot = sides[d]
            if not maze.is_open(slot):
                continue
            if slot in maze.opening_at:
                label = maze.opening_at[slot]
                nbrs.append(label)
                leaf_nbr[label] = name
            else:
                other = [rc for rc in slot_rooms(slot, maze.rows, maze.cols) if rc != (r, c)]
                nbrs.append(room_name(*other[0]))
        rot[name] = tuple(nbrs)
    for label in LABELS:
        if label in leaf_nbr:
            rot[label] = (leaf_nbr[label],)
    return RoomGraph(rot, "room", rooms)


def ring_transform(g: RoomGraph) -> RoomGraph:
    """Replace every vertex of degree d >= 4 by a d-cycle, one ring vertex per door."""
    rot = g.rotation
    # end[(v, u)]: name of the vertex that carries v's side of door v-u
    end = {}
    for v, nbrs in rot.items():
        for i, u in enumerate(nbrs):
            end[(v, u)] = f"{v}.{i + 1}" if len(nbrs) >= 4 else v
    out: dict[str, tuple[str, ...]] = {}
    for v, nbrs in rot.items():
        d = len(nbrs)
        if d >= 4:
            ring = [f"{v}.{i + 1}" for i in range(d)]
            for i, u in enumerate(nbrs):
                out[ring[i]] = (ring[i - 1], end[(u, v)], ring[(i + 1) % d])
        else:
            out[v] = tuple(end[(u, v)] for u in nbrs)
    result = RoomGraph(out, "room")
    validate_graph(result)
    return result


def face_walks(g: RoomGraph) -> list[list[str]]:
    """Vertex sequences of the faces of the rotation system (orbits of darts)."""
    seen = set()
    out = []
    for u, nbrs in g.rotation.items():
        for v in nbrs:
            if (u, v) in seen:
                continue
            walk = []
            dart = (u, v)
            while dart not in seen:
                seen.add(dart)
                a, b = dart
                walk.append(a)
                rb = g.rotation[b]
                dart = (b, rb[(rb.index(a) - 1) % len(rb)])
            out.append(walk)
    return out


def faces(g: RoomGraph) -> int:
    return len(face_walks(g))


def terminals_share_face(g: RoomGraph) -> bool:
    """Some face touches every labelled vertex, as the outer face of a maze does."""
    return any(set(g.labels) <= set(walk) for walk in face_walks(g))


def is_plane(g: RoomGraph) -> bool:
    """True when the rotation system is a genus-0 embedding (Euler's formula)."""
    return len(g.vertices) - g.door_count + faces(g) == 2


def load(text: str, kind: str | None = None) -> GridMaze | RoomGraph:
    """Parse either format, dispatching on the header."""
    body = [ln for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    stripped = body[0].lstrip() if body else ""
    if stripped.startswith("MZ1"):
        return parse_grid_maze("\n".join(body))
    if stripped.startswith("GR1"):
        return parse_graph(text, kind)
    if not stripped:
        raise MazeError("empty input")
    raise MazeError("unrecognised format: expected an MZ1 or GR1 header")


def as_graph(obj: GridMaze | RoomGraph) -> RoomGraph:
    return to_room_graph(obj) if isinstance(obj, GridMaze) else obj
