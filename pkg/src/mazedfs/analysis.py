"""Exact and sampled statistics of maze explorations.

All asserted probabilities are :class:`fractions.Fraction`; floats appear only
in Monte Carlo summaries.
"""

from __future__ import annotations

import math
from collections import deque
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .explorer import (
    EXIT,
    Handedness,
    _walk,
    explore,
    exit_order,
    wall_follower,
)
from .model import ENTRANCE, GridMaze, MazeError, RoomGraph, to_room_graph
from .rng import stream

STANDARD = "standard"
EX1_ROOT = "ex1"

DEFAULT_LIMIT = 20


def fmt_fraction(p: Fraction) -> str:
    """Reduced ``p/q`` form; integers keep their ``/1``."""
    return f"{p.numerator}/{p.denominator}"


@dataclass
class EnumerationReport:
    k: int
    total: int
    counts: dict[str, int]
    variant: str = STANDARD
    table: list[tuple[int, int | None, str]] | None = None

    @property
    def probability(self) -> dict[str, Fraction]:
        return {t: Fraction(n, self.total) for t, n in self.counts.items()}

    def to_json(self) -> dict:
        return {
            "variant": self.variant,
            "k": self.k,
            "denominator": str(self.total),
            "counts": {t: str(n) for t, n in self.counts.items()},
            "probability": {t: fmt_fraction(p) for t, p in self.probability.items()},
        }


def _check_targets(g: RoomGraph, targets: Iterable[str]) -> tuple[str, ...]:
    targets = tuple(targets)
    if not targets:
        raise ValueError("targets must be non-empty")
    for t in targets:
        if t not in g.rotation:
            raise MazeError("target not in graph", t)
    return targets


def _check_k(g: RoomGraph, limit: int) -> None:
    if g.k > limit:
        raise ValueError(f"enumeration too large: k={g.k} exceeds the limit {limit}")


def _count_range(g: RoomGraph, targets, lo: int, hi: int, root_choices, keep_table: bool):
    """First-arrival counts for masks in ``[lo, hi)``; each run stops at its first target."""
    verts = g.coin_vertices
    bit = {v: i for i, v in enumerate(verts)}
    stop = frozenset(targets)
    counts = dict.fromkeys(targets, 0)
    table = [] if keep_table else None
    for mask in range(lo, hi):
        def coin(v, mask=mask):
            return mask >> bit[v] & 1 == 1

        for rc in root_choices:
            _, _, hit = _walk(g, coin, stop, rc, record=False)
            assert hit is not None, "exploration missed every target"
            counts[hit] += 1
            if keep_table:
                table.append((mask, rc, hit))
    return counts, table


def _chunks(n: int, jobs: int) -> list[tuple[int, int]]:
    step = max(1, -(-n // max(jobs, 1)))
    return [(lo, min(n, lo + step)) for lo in range(0, n, step)]


def enumerate_first_arrival(
    g: RoomGraph,
    targets: Iterable[str] = ("B", "C"),
    variant: str = STANDARD,
    limit: int = DEFAULT_LIMIT,
    jobs: int = 1,
    table: bool = False,
) -> EnumerationReport:
    """Run the closed exploration under every coin assignment and tally the first target reached.

    Runs are cut at the first target, which is the same as reading the
    order off the full closed tour.  The ``ex1`` variant requires a degree-3
    entrance and also ranges over its three first doors.
    """
    targets = _check_targets(g, targets)
    _check_k(g, limit)
    if variant == EX1_ROOT:
        if g.degree(ENTRANCE) != 3:
            raise ValueError("the ex1 variant needs an entrance of degree 3")
        root_choices = (0, 1, 2)
    elif variant == STANDARD:
        root_choices = (None,)
    else:
        raise ValueError(f"unknown variant {variant!r}")
    n = 1 << g.k
    counts = dict.fromkeys(targets, 0)
    rows = [] if table else None
    if jobs > 1 and n > 1:
        with ProcessPoolExecutor(jobs) as pool:
            futures = [
                pool.submit(_count_range, g, targets, lo, hi, root_choices, table)
                for lo, hi in _chunks(n, jobs)
            ]
            parts = [f.result() for f in futures]
    else:
        parts = [_count_range(g, targets, 0, n, root_choices, table)]
    for part_counts, part_table in parts:
        for t, c in part_counts.items():
            counts[t] += c
        if table:
            rows.extend(part_table)
    return EnumerationReport(g.k, n * len(root_choices), counts, variant, rows)


# ---------------------------------------------------------------------------
# Monte Carlo


@dataclass
class MonteCarloReport:
    trials: int
    seed: int
    counts: dict[str, int]
    kind: str = "pdfs"

    @property
    def estimate(self) -> dict[str, float]:
        return {t: n / self.trials for t, n in self.counts.items()}

    @property
    def stderr(self) -> dict[str, float]:
        return {t: math.sqrt(p * (1 - p) / self.trials) for t, p in self.estimate.items()}

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "trials": self.trials,
            "seed": str(self.seed),
            "counts": {t: str(n) for t, n in self.counts.items()},
            "estimate": self.estimate,
            "stderr": self.stderr,
        }


def _mc_range(g, targets, seed, lo, hi):
    stop = frozenset(targets)
    counts = dict.fromkeys(targets, 0)
    for i in range(lo, hi):
        rng = stream(seed, i)
        coins: dict[str, bool] = {}

        def coin(v):
            if v not in coins:
                coins[v] = rng.bit()
            return coins[v]

        _, _, hit = _walk(g, coin, stop, record=False)
        counts[hit] += 1
    return counts


def _walk_range(g, exits, seed, lo, hi):
    absorb = frozenset(exits)
    counts = dict.fromkeys(exits, 0)
    rot = g.rotation
    for i in range(lo, hi):
        rng = stream(seed, i)
        v = ENTRANCE
        while v not in absorb:
            nbrs = rot[v]
            v = nbrs[rng.below(len(nbrs))] if len(nbrs) > 1 else nbrs[0]
        counts[v] += 1
    return counts


def _run_trials(fn, g, targets, trials, seed, jobs):
    if trials < 1:
        raise ValueError("trials must be at least 1")
    counts = dict.fromkeys(targets, 0)
    if jobs > 1:
        with ProcessPoolExecutor(jobs) as pool:
            parts = [f.result() for f in [pool.submit(fn, g, targets, seed, lo, hi) for lo, hi in _chunks(trials, jobs)]]
    else:
        parts = [fn(g, targets, seed, 0, trials)]
    for part in parts:
        for t, c in part.items():
            counts[t] += c
    return counts


def monte_carlo_first_arrival(
    g: RoomGraph, targets: Iterable[str] = ("B", "C"), trials: int = 10_000, seed: int = 0, jobs: int = 1
) -> MonteCarloReport:
    """Sample PDFS runs; trial ``i`` draws its coins lazily from stream ``(seed, i)``."""
    targets = _check_targets(g, targets)
    return MonteCarloReport(trials, seed, _run_trials(_mc_range, g, targets, trials, seed, jobs))


def monte_carlo_random_walk(g: RoomGraph, trials: int = 10_000, seed: int = 0, jobs: int = 1) -> MonteCarloReport:
    if not g.exits:
        raise ValueError("the random walk needs at least one exit")
    return MonteCarloReport(trials, seed, _run_trials(_walk_range, g, g.exits, trials, seed, jobs), "walk")


# ---------------------------------------------------------------------------
# random walk, solved exactly


def solve_exact(matrix: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction]:
    """Gauss-Jordan elimination over the rationals."""
    n = len(matrix)
    a = [list(row) + [b] for row, b in zip(matrix, rhs)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot is None:
            raise ArithmeticError("singular system")
        a[col], a[pivot] = a[pivot], a[col]
        inv = 1 / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [a[r][n] for r in range(n)]


@dataclass
class WalkReport:
    exits: tuple[str, ...]
    probability: dict[str, dict[str, Fraction]] = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "exits": list(self.exits),
            "probability": {
                v: {e: fmt_fraction(p) for e, p in row.items()} | {"total": fmt_fraction(sum(row.values(), Fraction(0)))}
                for v, row in self.probability.items()
            },
        }


def random_walk_exit_probabilities(g: RoomGraph) -> WalkReport:
    """Absorption probabilities of the uniform random walk, exits absorbing.

    Each non-exit vertex satisfies p(v) = mean of p over its neighbours, so a
    one-door vertex (the entrance) reflects.
    """
    exits = g.exits
    if not exits:
        raise ValueError("the random walk needs at least one exit")
    free = [v for v in g.vertices if v not in exits]
    index = {v: i for i, v in enumerate(free)}
    n = len(free)
    report = WalkReport(exits)
    columns = {}
    for e in exits:
        matrix = [[Fraction(0)] * n for _ in range(n)]
        rhs = [Fraction(0)] * n
        for v in free:
            i = index[v]
            nbrs = g.rotation[v]
            d = len(nbrs)
            matrix[i][i] += d
            for w in nbrs:
                if w in index:
                    matrix[i][index[w]] -= 1
                elif w == e:
                    rhs[i] += 1
        columns[e] = solve_exact(matrix, rhs)
    for v in g.vertices:
        if v in index:
            report.probability[v] = {e: columns[e][index[v]] for e in exits}
        else:
            report.probability[v] = {e: Fraction(int(e == v)) for e in exits}
    return report


# ---------------------------------------------------------------------------
# door directions, paths and exit orders


def door_direction_probability(
    g: RoomGraph, door: tuple[str, str], limit: int = DEFAULT_LIMIT
) -> Fraction:
    """Probability, over all coin assignments, that ``door`` is walked before its reverse."""
    u, v = door
    if not g.has_door(u, v):
        raise MazeError(f"no door {u} -> {v}")
    _check_k(g, limit)
    verts = g.coin_vertices
    bit = {x: i for i, x in enumerate(verts)}
    hits = 0
    for mask in range(1 << len(verts)):
        steps, _, _ = _walk(g, lambda x, mask=mask: mask >> bit[x] & 1 == 1)
        for step in steps:
            if step == (u, v):
                hits += 1
                break
            if step == (v, u):
                break
    return Fraction(hits, 1 << len(verts))


def door_direction_table(g: RoomGraph, limit: int = DEFAULT_LIMIT) -> dict[tuple[str, str], Fraction]:
    """The same probability for every directed door, from one pass over the assignments."""
    _check_k(g, limit)
    verts = g.coin_vertices
    bit = {x: i for i, x in enumerate(verts)}
    hits = {}
    for a, b in g.doors:
        hits[(a, b)] = 0
        hits[(b, a)] = 0
    for mask in range(1 << len(verts)):
        steps, _, _ = _walk(g, lambda x, mask=mask: mask >> bit[x] & 1 == 1)
        seen = set()
        for step in steps:
            key = frozenset(step)
            if key not in seen:
                seen.add(key)
                hits[step] += 1
    total = 1 << len(verts)
    return {d: Fraction(n, total) for d, n in hits.items()}


def shortest_path_lengths(g: RoomGraph) -> dict[str, int]:
    """Breadth-first distances from A to each exit."""
    dist = {ENTRANCE: 0}
    queue = deque([ENTRANCE])
    while queue:
        v = queue.popleft()
        for w in g.rotation[v]:
            if w not in dist:
                dist[w] = dist[v] + 1
                queue.append(w)
    return {e: dist[e] for e in g.exits}


@dataclass
class PathComparison:
    dfs_steps: tuple
    wall_steps: tuple
    equal: bool
    divergence: int | None

    def describe(self) -> str:
        if self.equal:
            return "equal"
        return f"differs at step {self.divergence}"


def _compare(a: Sequence, b: Sequence) -> PathComparison:
    a, b = tuple(a), tuple(b)
    if a == b:
        return PathComparison(a, b, True, None)
    i = next((i for i, (x, y) in enumerate(zip(a, b)) if x != y), min(len(a), len(b)))
    return PathComparison(a, b, False, i)


def compare_dfs_wallfollower(maze: GridMaze) -> dict[str, PathComparison]:
    """RDFS vs RHOW and LDFS vs LHOW, each up to the first exit."""
    g = to_room_graph(maze)
    out = {}
    for name, hand in (("right", Handedness.RIGHT), ("left", Handedness.LEFT)):
        dfs = explore(g, hand, EXIT)
        wall, _ = wall_follower(maze, hand)
        out[name] = _compare(dfs.steps, wall.steps)
    return out


def exit_order_report(g: RoomGraph) -> dict[str, str]:
    return {
        "RDFS": exit_order(explore(g, Handedness.RIGHT)),
        "LDFS": exit_order(explore(g, Handedness.LEFT)),
    }


def exit_probability_bounds_ok(report: EnumerationReport) -> bool:
    """Every probability lies in [1/4, 1/2]."""
    return all(Fraction(1, 4) <= p <= Fraction(1, 2) for p in report.probability.values())


def divides_power_of_two(p: Fraction, k: int, factor: int = 1) -> bool:
    return (factor << k) % p.denominator == 0


@dataclass
class SearchReport:
    value: Fraction
    searched: int
    skipped: int
    hits: list[dict]
    nearest: Fraction | None
    nearest_config: dict | None

    def to_json(self) -> dict:
        return {
            "value": fmt_fraction(self.value),
            "searched": self.searched,
            "skipped": self.skipped,
            "hits": self.hits,
            "nearest": None if self.nearest is None else fmt_fraction(self.nearest),
            "nearest_config": self.nearest_config,
        }


def search_exit_probability(
    configs: Iterable, value: Fraction, targets: Sequence[str] = ("B", "C", "D"), limit: int = 14
) -> SearchReport:
    """Enumerate each generated maze and record exits whose probability equals ``value``.

    Mazes whose k exceeds ``limit`` are skipped and counted.  ``configs``
    yields :class:`~mazedfs.mazegen.GenConfig` objects.
    """
    from .mazegen import generate

    hits = []
    searched = skipped = 0
    nearest = nearest_cfg = None
    for cfg in configs:
        g = to_room_graph(generate(cfg))
        if g.k > limit:
            skipped += 1
            continue
        searched += 1
        rep = enumerate_first_arrival(g, targets, limit=limit)
        for t, p in rep.probability.items():
            desc = {"rows": cfg.rows, "cols": cfg.cols, "seed": str(cfg.seed), "mode": cfg.mode,
                    "extra_doors": cfg.extra_doors, "exit": t, "k": g.k}
            if p == value:
                hits.append(desc)
            if nearest is None or abs(p - value) < abs(nearest - value):
                nearest, nearest_cfg = p, desc
    return SearchReport(value, searched, skipped, hits, nearest, nearest_cfg)
