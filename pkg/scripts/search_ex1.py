#!/usr/bin/env python3
"""Exhaustive search for small graphs where a modified start makes P(B) != P(C).

Part 1: A has degree 3, B and C are leaves, the first door out of A is
chosen uniformly.  Part 2: A and B are leaves, C has degree 2, ordinary
PDFS.  Graphs are enumerated by increasing number of internal vertices,
over all edge sets and all plane rotation systems with A, B, C on a
common face, in a fixed order.  The first graph with P(B) != P(C) is
printed as GR1 (and written with --write).

    python scripts/search_ex1.py [--max-internal 3] [--write]
"""

from __future__ import annotations

import argparse
import itertools
import sys
from pathlib import Path

from mazedfs.analysis import EX1_ROOT, STANDARD, enumerate_first_arrival
from mazedfs.model import MazeError, RoomGraph, is_plane, serialize_graph, terminals_share_face, validate_graph

FIXTURES = Path(__file__).resolve().parents[1] / "src" / "mazedfs" / "fixtures"


def rotations(adj):
    """Every rotation system: each vertex of degree 3 has two cyclic orders."""
    verts = list(adj)
    choices = []
    for v in verts:
        nbrs = sorted(adj[v])
        if len(nbrs) == 3:
            choices.append([tuple(nbrs), (nbrs[0], nbrs[2], nbrs[1])])
        else:
            choices.append([tuple(nbrs)])
    for combo in itertools.product(*choices):
        yield dict(zip(verts, combo))


def graphs(n_internal, degrees):
    internal = [f"v{i}" for i in range(1, n_internal + 1)]
    verts = ["A"] + internal + ["B", "C"]
    pairs = [(a, b) for a, b in itertools.combinations(verts, 2)]
    for r in range(len(verts) - 1, len(pairs) + 1):
        for edges in itertools.combinations(pairs, r):
            adj = {v: [] for v in verts}
            for a, b in edges:
                adj[a].append(b)
                adj[b].append(a)
            if any(len(adj[t]) != d for t, d in degrees.items()):
                continue
            if any(len(n) > 3 or not n for n in adj.values()):
                continue
            for rot in rotations(adj):
                g = RoomGraph(rot, "ex1")
                try:
                    validate_graph(g)
                except MazeError:
                    break
                # planar, with A, B, C on one face (the outer boundary)
                if is_plane(g) and terminals_share_face(g):
                    yield g


def search(degrees, variant, max_internal):
    for n in range(0, max_internal + 1):
        for g in graphs(n, degrees):
            rep = enumerate_first_arrival(g, ("B", "C"), variant)
            p = rep.probability
            if p["B"] != p["C"]:
                return g, rep
    return None, None


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--max-internal", type=int, default=3)
    ap.add_argument("--write", action="store_true", help="write the fixtures into the package")
    args = ap.parse_args(argv)

    parts = [
        ("FIX-E1", {"A": 3, "B": 1, "C": 1}, EX1_ROOT),
        ("FIX-E1B", {"A": 1, "B": 1, "C": 2}, STANDARD),
    ]
    status = 0
    for name, degrees, variant in parts:
        g, rep = search(degrees, variant, args.max_internal)
        if g is None:
            print(f"{name}: no counterexample up to {args.max_internal} internal vertices")
            status = 1
            continue
        text = serialize_graph(g)
        probs = {t: f"{p.numerator}/{p.denominator}" for t, p in rep.probability.items()}
        print(f"{name} ({variant}): P = {probs}")
        print(text)
        if args.write:
            header = f"# found by scripts/search_ex1.py ({variant}); P(B)={probs['B']} P(C)={probs['C']}\n"
            (FIXTURES / f"{name}.gr1").write_text(header + text)
    return status


if __name__ == "__main__":
    sys.exit(main())
