"""Command-line front end.

Exit codes: 0 success, 1 invalid input, 2 usage error.  Structured output
goes to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import analysis
from .explorer import (
    CLOSED,
    EXIT,
    CoinAssignment,
    Handedness,
    dfs_tree,
    exit_order,
    explore,
    involution_flip,
    parse_trace,
    pivot_vertex,
    serialize_trace,
    wall_follower,
)
from .mazegen import GENERAL, TREE, GenConfig, generate, generate_graph
from .model import (
    GridMaze,
    MazeError,
    as_graph,
    load,
    ring_transform,
    serialize_graph,
    serialize_grid_maze,
)
from .render import RenderStyle, render
from .rng import stream


class UsageError(Exception):
    pass


def _read(path: str, kind: str | None = None):
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
    except OSError as exc:
        raise MazeError(f"cannot read {path}: {exc.strerror}") from exc
    return load(text, kind)


def _dump(obj) -> None:
    print(json.dumps(obj, indent=2))


def _coins(g, bits: str, root_choice=None) -> CoinAssignment:
    try:
        return CoinAssignment.from_bits(g, bits, root_choice)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _policy(g, tokens: list[str], root_choice=None):
    name = tokens[0]
    if name in ("right", "left") and len(tokens) == 1:
        return Handedness(name)
    if name == "coins" and len(tokens) == 2:
        return _coins(g, tokens[1], root_choice)
    if name == "seed" and len(tokens) == 2:
        rng = stream(int(tokens[1]), 0)
        coins = {}

        def coin(v):
            if v not in coins:
                coins[v] = rng.bit()
            return coins[v]

        return coin
    raise UsageError("policy must be one of: right | left | coins <bits> | seed <n>")


def cmd_validate(args) -> int:
    obj = _read(args.path)
    if isinstance(obj, GridMaze):
        g = as_graph(obj)
        print(f"ok: MZ1 {obj.rows}x{obj.cols}, {g.door_count} doors, k={g.k}")
    else:
        print(f"ok: GR1 {obj.kind}, {len(obj.vertices)} vertices, {obj.door_count} doors, k={obj.k}")
    return 0


def cmd_explore(args) -> int:
    g = as_graph(_read(args.path))
    policy = _policy(g, args.policy, args.root_choice)
    trace = explore(g, policy, args.mode, args.root_choice)
    if args.mode == EXIT:
        label = trace.end if trace.end in g.exits else None
    else:
        label = exit_order(trace) if {"B", "C"} <= set(g.vertices) else None
    sys.stdout.write(serialize_trace(trace, label))
    return 0


def _targets(g, args) -> tuple[str, ...]:
    targets = tuple(args.targets) if args.targets else g.exits
    if not targets:
        raise UsageError("no targets: the input has no exits; pass --targets or --doors")
    return targets


def cmd_stats(args) -> int:
    g = as_graph(_read(args.path, "ex1" if args.ex1 else None))
    try:
        if args.doors:
            table = analysis.door_direction_table(g, args.limit)
            _dump(
                {
                    "k": g.k,
                    "denominator": str(1 << g.k),
                    "doors": [
                        {"door": f"{u}->{v}", "probability": analysis.fmt_fraction(p)}
                        for (u, v), p in table.items()
                    ],
                }
            )
            return 0
        targets = _targets(g, args)
        if args.mc is not None:
            rep = analysis.monte_carlo_first_arrival(g, targets, args.mc, args.seed, args.jobs)
            out = rep.to_json()
            out["k"] = g.k
            _dump(out)
            return 0
        variant = analysis.EX1_ROOT if args.ex1 else analysis.STANDARD
        rep = analysis.enumerate_first_arrival(g, targets, variant, args.limit, args.jobs)
    except ValueError as exc:
        if "enumeration too large" in str(exc) or "trials" in str(exc):
            raise UsageError(str(exc)) from exc
        raise
    _dump(rep.to_json())
    return 0


def cmd_walk(args) -> int:
    g = as_graph(_read(args.path))
    if args.mc is not None:
        _dump(analysis.monte_carlo_random_walk(g, args.mc, args.seed, args.jobs).to_json())
    else:
        _dump(analysis.random_walk_exit_probabilities(g).to_json())
    return 0


def cmd_tree(args) -> int:
    g = as_graph(_read(args.path))
    coins = _coins(g, args.coins)
    trace = explore(g, coins)
    tree = dfs_tree(trace)
    piv = pivot_vertex(tree)
    partner = involution_flip(g, coins)
    trace2 = explore(g, partner)
    print("tree: " + " ".join(f"{p}->{c}" for p, c in trace.tree_doors))
    print(f"pivot: {piv.pivot}")
    for t in ("A", "B", "C"):
        print(f"component {t}: " + " ".join(sorted(piv.components[t])))
    print(f"coins: {coins.bits(g)}")
    print(f"partner: {partner.bits(g)}")
    print(f"exit-order: {exit_order(trace)}")
    print(f"partner-exit-order: {exit_order(trace2)}")
    print(f"tree-preserved: {'yes' if dfs_tree(trace2) == tree else 'no'}")
    return 0


def cmd_render(args) -> int:
    maze = _read(args.path)
    if not isinstance(maze, GridMaze):
        raise UsageError("render needs an MZ1 grid maze")
    trace = None
    if args.trace:
        trace = parse_trace(Path(args.trace).read_text())
    elif args.overlay:
        name = args.overlay[0]
        if name in ("rhow", "lhow") and len(args.overlay) == 1:
            trace, _ = wall_follower(maze, Handedness.RIGHT if name == "rhow" else Handedness.LEFT)
        else:
            g = as_graph(maze)
            trace = explore(g, _policy(g, args.overlay), args.mode)
    sys.stdout.write(render(maze, RenderStyle(args.format, args.scale), trace))
    return 0


def cmd_transform(args) -> int:
    g = _read(args.path, "general")
    sys.stdout.write(serialize_graph(ring_transform(g)))
    return 0


def cmd_gen(args) -> int:
    if args.graph:
        g = generate_graph(args.seed, args.internal, args.extra_edges, args.exits, args.general, args.hub_degree)
        sys.stdout.write(serialize_graph(g))
    else:
        cfg = GenConfig(args.rows, args.cols, args.seed, args.mode, args.extra_doors, args.exits)
        sys.stdout.write(serialize_grid_maze(generate(cfg)))
    return 0


def cmd_compare(args) -> int:
    obj = _read(args.path)
    g = as_graph(obj)
    out: dict = {"shortest": analysis.shortest_path_lengths(g)}
    if {"B", "C"} <= set(g.vertices):
        out["exit_order"] = analysis.exit_order_report(g)
    if isinstance(obj, GridMaze):
        out["wall_follower"] = {
            hand.value: wall_follower(obj, hand)[1] for hand in Handedness
        }
        out["dfs_vs_wall"] = {
            name: cmp.describe() for name, cmp in analysis.compare_dfs_wallfollower(obj).items()
        }
    _dump(out)
    return 0


def cmd_search(args) -> int:
    try:
        value = Fraction(args.value)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"bad probability {args.value!r}") from exc
    if args.count < 1 or args.max_side < 1:
        raise UsageError("--count and --max-side must be positive")
    configs = (
        GenConfig(
            1 + (i % args.max_side),
            2 + (i // args.max_side) % max(args.max_side - 1, 1),
            args.seed + i,
            GENERAL if i % 2 else TREE,
            (i // 2) % (args.max_side + 1) if i % 2 else 0,
            3,
        )
        for i in range(args.count)
    )
    _dump(analysis.search_exit_probability(configs, value, limit=args.limit).to_json())
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="mazedfs", description="Explore two-exit mazes and verify probabilistic DFS.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check an MZ1 or GR1 file")
    p.add_argument("path")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("explore", help="run the depth-first exploration and print the trace")
    p.add_argument("path")
    p.add_argument("--policy", nargs="+", default=["right"], metavar="TOKEN",
                   help="right | left | coins <bits> | seed <n>")
    p.add_argument("--mode", choices=[CLOSED, EXIT], default=EXIT)
    p.add_argument("--root-choice", type=int, default=None, help="first door out of a degree-3 entrance")
    p.set_defaults(func=cmd_explore)

    p = sub.add_parser("stats", help="exact enumeration or Monte Carlo over coin assignments")
    p.add_argument("path")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--exact", action="store_true", help="enumerate every coin assignment (default)")
    g.add_argument("--mc", type=int, metavar="TRIALS")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--targets", nargs="+")
    p.add_argument("--ex1", action="store_true", help="degree-3 entrance with a uniform first door")
    p.add_argument("--doors", action="store_true", help="door-direction probabilities for every door")
    p.add_argument("--limit", type=int, default=analysis.DEFAULT_LIMIT, help="largest k to enumerate")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("walk", help="exit probabilities of the uniform random walk")
    p.add_argument("path")
    p.add_argument("--mc", type=int, metavar="TRIALS")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_walk)

    p = sub.add_parser("tree", help="DFS tree, pivot and involution partner of a coin assignment")
    p.add_argument("path")
    p.add_argument("--coins", required=True)
    p.set_defaults(func=cmd_tree)

    p = sub.add_parser("render", help="draw a grid maze as ASCII or SVG")
    p.add_argument("path")
    p.add_argument("--format", choices=["ascii", "svg"], default="ascii")
    p.add_argument("--scale", type=int, default=20)
    p.add_argument("--overlay", nargs="+", metavar="TOKEN",
                   help="rhow | lhow | right | left | coins <bits> | seed <n>")
    p.add_argument("--mode", choices=[CLOSED, EXIT], default=EXIT)
    p.add_argument("--trace", help="trace file to overlay")
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("transform-ring", help="replace degree>=4 vertices by rings")
    p.add_argument("path")
    p.set_defaults(func=cmd_transform)

    p = sub.add_parser("gen", help="generate a random maze (MZ1) or graph (GR1)")
    p.add_argument("--rows", type=int, default=4)
    p.add_argument("--cols", type=int, default=4)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--mode", choices=[TREE, GENERAL], default=TREE)
    p.add_argument("--extra-doors", type=int, default=0)
    p.add_argument("--exits", type=int, choices=[0, 2, 3], default=2)
    p.add_argument("--graph", action="store_true", help="emit a GR1 graph instead")
    p.add_argument("--internal", type=int, default=4)
    p.add_argument("--extra-edges", type=int, default=0)
    p.add_argument("--general", action="store_true", help="include a hub of degree >= 4")
    p.add_argument("--hub-degree", type=int, default=4)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("search", help="bounded search of generated 3-exit mazes for a given exit probability")
    p.add_argument("--value", default="1/3", help="probability to look for, as p/q")
    p.add_argument("--count", type=int, default=200, help="number of generated mazes")
    p.add_argument("--max-side", type=int, default=4)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--limit", type=int, default=14, help="skip mazes with more coins than this")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("compare", help="shortest paths, RDFS/LDFS exits, DFS vs wall follower")
    p.add_argument("path")
    p.set_defaults(func=cmd_compare)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except MazeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
