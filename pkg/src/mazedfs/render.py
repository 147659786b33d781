"""Static ASCII and SVG pictures of grid mazes, optionally with a walk drawn on top."""

from __future__ import annotations

from dataclasses import dataclass

from .explorer import Trace
from .model import ENTRANCE, GridMaze, MazeError, grid_lines, room_center, room_name, slot_rooms, to_room_graph


@dataclass(frozen=True)
class RenderStyle:
    format: str = "ascii"
    scale: int = 20

    def __post_init__(self):
        if self.format not in ("ascii", "svg"):
            raise ValueError(f"unknown format {self.format!r}")
        if self.scale < 1:
            raise ValueError("scale must be positive")


def _check_overlay(maze: GridMaze, trace: Trace) -> None:
    g = to_room_graph(maze)
    for u, v in trace.steps:
        if not g.has_door(u, v):
            raise MazeError(f"overlay does not match maze: no door {u} -> {v}")


def _positions(maze: GridMaze) -> dict[str, tuple[int, int]]:
    """Character-grid position of every room and opening."""
    pos = {}
    for r, c in maze.rooms():
        pos[room_name(r, c)] = room_center(r, c)
    for label, slot in maze.openings:
        pos[label] = slot
    return pos


def render_ascii(maze: GridMaze, trace: Trace | None = None) -> str:
    lines = [list(line) for line in grid_lines(maze)]
    if trace is not None:
        _check_overlay(maze, trace)
        pos = _positions(maze)
        for u, v in trace.steps:
            for name in (u, v):
                y, x = pos[name]
                if lines[y][x] == " ":
                    lines[y][x] = "*"
            (y1, x1), (y2, x2) = pos[u], pos[v]
            y, x = (y1 + y2) // 2, (x1 + x2) // 2
            if lines[y][x] == " ":
                lines[y][x] = "*"
    return "\n".join("".join(line) for line in lines) + "\n"


def _fmt(x: float) -> str:
    return f"{x:g}"


def render_svg(maze: GridMaze, trace: Trace | None = None, scale: int = 20) -> str:
    half = scale / 2
    margin = scale
    width = maze.cols * scale + 2 * margin
    height = maze.rows * scale + 2 * margin

    def xy(slot):
        y, x = slot
        return margin + x * half, margin + y * half

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>',
        '<g stroke="black" stroke-width="2" stroke-linecap="square">',
    ]
    for y, x in sorted(maze.wall_slots):
        if y % 2 == 0:
            (x1, y1), (x2, y2) = xy((y, x - 1)), xy((y, x + 1))
        else:
            (x1, y1), (x2, y2) = xy((y - 1, x)), xy((y + 1, x))
        out.append(f'<line x1="{_fmt(x1)}" y1="{_fmt(y1)}" x2="{_fmt(x2)}" y2="{_fmt(y2)}"/>')
    out.append("</g>")

    # openings are drawn half a cell outside the boundary
    pos = {}
    for r, c in maze.rooms():
        pos[room_name(r, c)] = xy(room_center(r, c))
    for label, slot in maze.openings:
        (ry, rx) = room_center(*slot_rooms(slot, maze.rows, maze.cols)[0])
        oy, ox = 2 * slot[0] - ry, 2 * slot[1] - rx
        pos[label] = xy((oy, ox))
    out.append('<g font-family="monospace" text-anchor="middle" dominant-baseline="central">')
    for label, _ in maze.openings:
        x, y = pos[label]
        colour = "green" if label == ENTRANCE else "red"
        out.append(f'<text x="{_fmt(x)}" y="{_fmt(y)}" fill="{colour}" font-size="{_fmt(half)}">{label}</text>')
    out.append("</g>")

    if trace is not None:
        _check_overlay(maze, trace)
        out.append('<g stroke="blue" stroke-width="1.5" fill="none" stroke-opacity="0.6">')
        for u, v in trace.steps:
            (x1, y1), (x2, y2) = pos[u], pos[v]
            out.append(f'<path d="M {_fmt(x1)} {_fmt(y1)} L {_fmt(x2)} {_fmt(y2)}"/>')
        out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def render(maze: GridMaze, style: RenderStyle = RenderStyle(), trace: Trace | None = None) -> str:
    if style.format == "svg":
        return render_svg(maze, trace, style.scale)
    return render_ascii(maze, trace)
