#!/usr/bin/env python3
"""Tallies for open-ended questions over generated grid mazes.

* wall: how often the RDFS/LDFS exit-mode paths differ from RHOW/LHOW,
  with the first such maze printed.
* order: how often RDFS and LDFS reach the same exit first.
* cross: how many distinct closed tours have no self-crossing, and how
  many of those are neither RDFS nor LDFS.

Nothing here settles a question; it only reports what the sample shows.

    python scripts/survey.py wall --count 2000
"""

from __future__ import annotations

import argparse
import sys
from collections import Counter

from mazedfs.analysis import compare_dfs_wallfollower, exit_order_report
from mazedfs.explorer import CLOSED, Handedness, all_assignments, explore, noncrossing_check
from mazedfs.mazegen import GENERAL, TREE, GenConfig, generate
from mazedfs.model import serialize_grid_maze, to_room_graph


def configs(count, seed, max_side, general_only=False):
    for i in range(count):
        rows, cols = 1 + i % max_side, 1 + (i // max_side) % max_side
        general = (general_only or i % 2) and rows * cols > 1
        extra = 1 + (i // 2) % (rows + cols) if general else 0
        yield GenConfig(rows, cols, seed + i, GENERAL if general else TREE, extra)


def survey_wall(args) -> None:
    tally = Counter()
    shown = False
    for cfg in configs(args.count, args.seed, args.max_side):
        m = generate(cfg)
        for name, cmp in compare_dfs_wallfollower(m).items():
            tally[(cfg.mode, name, cmp.equal)] += 1
            if not cmp.equal and not shown:
                print(f"first difference ({name}-handed, {cmp.describe()}):")
                print(serialize_grid_maze(m))
                shown = True
    for (mode, hand, equal), n in sorted(tally.items()):
        print(f"{mode:8s} {hand:5s} {'equal' if equal else 'differs':8s} {n}")


def survey_order(args) -> None:
    tally = Counter()
    for cfg in configs(args.count, args.seed, args.max_side):
        rep = exit_order_report(to_room_graph(generate(cfg)))
        tally[(rep["RDFS"], rep["LDFS"])] += 1
    for (r, l), n in sorted(tally.items()):
        print(f"RDFS first reaches {r}, LDFS first reaches {l}: {n}")


def survey_cross(args) -> None:
    mazes = tours = drawable = extra = 0
    only_one_handed = 0
    for cfg in configs(args.count, args.seed, args.max_side, general_only=True):
        g = to_room_graph(generate(cfg))
        if g.k > args.max_k:
            continue
        mazes += 1
        hands = {tuple(explore(g, h, CLOSED).steps) for h in Handedness}
        seen = {}
        for coins in all_assignments(g):
            t = explore(g, coins, CLOSED)
            key = tuple(t.steps)
            if key not in seen:
                seen[key] = noncrossing_check(g, t).ok
        tours += len(seen)
        drawable += sum(seen.values())
        others = sum(ok for key, ok in seen.items() if key not in hands)
        extra += others
        only_one_handed += others == 0
    print(f"{mazes} mazes, {tours} distinct tours, {drawable} drawable")
    print(f"drawable tours other than RDFS/LDFS: {extra}")
    print(f"mazes where only RDFS/LDFS are drawable: {only_one_handed}")


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("question", choices=["wall", "order", "cross"])
    ap.add_argument("--count", type=int, default=500)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--max-side", type=int, default=5)
    ap.add_argument("--max-k", type=int, default=10, help="cross: skip mazes with more coins")
    args = ap.parse_args(argv)
    {"wall": survey_wall, "order": survey_order, "cross": survey_cross}[args.question](args)
    return 0


if __name__ == "__main__":
    sys.exit(main())
