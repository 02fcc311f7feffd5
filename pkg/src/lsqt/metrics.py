"""Stretch metrics and the exhaustive small-graph oracle.

The stretch of an edge is the hop length of the unique tree path between its
endpoints (1 for backbone edges); the graph's stretch is the mean over all
edges, carried exactly as a Fraction and converted to float only for
display.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .errors import SizeLimitError
from .graph import Edge, Graph
from .routing import RoutingTree, preprocess
from .tree import SpanningTree

BRUTE_FORCE_EDGE_LIMIT = 20


@dataclass(frozen=True)
class StretchReport:
    per_edge: dict[Edge, int]
    average: Fraction
    max_stretch: int
    remainder_count: int

    @property
    def average_float(self) -> float:
        return float(self.average)


def worker_count() -> int:
    """Worker cap from LSQT_THREADS (default 1)."""
    raw = os.environ.get("LSQT_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def stretch_report(tree: SpanningTree, threads: int | None = None) -> StretchReport:
    """Per-edge and average stretch of every graph edge under `tree`.

    With threads > 1 the per-edge queries are chunked across workers, each
    holding its own RoutingTree scratch clone; results are merged in edge
    order so the report is identical either way.
    """
    g = tree.graph
    rt = preprocess(tree)
    edge_rows = [(int(u), int(v)) for u, v in g.edges]
    if threads is None:
        threads = worker_count()
    threads = min(threads, max(1, len(edge_rows)))
    if threads <= 1 or len(edge_rows) < 1024:
        stretches = _stretch_chunk(rt, tree, edge_rows)
    else:
        chunks = [edge_rows[i::threads] for i in range(threads)]
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(
                pool.map(
                    lambda args: _stretch_chunk(*args),
                    [(rt.clone_for_worker(), tree, chunk) for chunk in chunks],
                )
            )
        stretches = [0] * len(edge_rows)
        for k, part in enumerate(parts):
            stretches[k::threads] = part
    per_edge = dict(zip(edge_rows, stretches))
    total = sum(stretches)
    return StretchReport(
        per_edge=per_edge,
        average=Fraction(total, g.m),
        max_stretch=max(stretches),
        remainder_count=g.m - len(tree.edge_ids),
    )


def _stretch_chunk(
    rt: RoutingTree, tree: SpanningTree, edges: list[Edge]
) -> list[int]:
    depth = rt._depth
    out = []
    for u, v in edges:
        if tree.is_tree_edge(u, v):
            out.append(1)
        else:
            ell = rt.lca(u, v)
            out.append(depth[u] + depth[v] - 2 * depth[ell])
    return out


def average_stretch(tree: SpanningTree) -> Fraction:
    return stretch_report(tree).average


# -- exhaustive oracle ------------------------------------------------------


def brute_force_best_tree(g: Graph) -> tuple[SpanningTree, StretchReport]:
    """Enumerate all spanning trees and return one of minimum average
    stretch (ties broken by lexicographically smallest edge-id list).

    Only feasible for tiny graphs; refuses m > BRUTE_FORCE_EDGE_LIMIT.
    The stretch of each candidate is evaluated with BFS distances inside
    the candidate tree, independent of the routing machinery.
    """
    if g.m > BRUTE_FORCE_EDGE_LIMIT:
        raise SizeLimitError(
            f"spanning-tree enumeration refused for m={g.m} "
            f"(limit {BRUTE_FORCE_EDGE_LIMIT})"
        )
    n = g.n
    if n < 1:
        raise ValueError("empty graph")
    edge_rows = g.edge_list()
    best_ids: tuple[int, ...] | None = None
    best_avg: Fraction | None = None
    best_key: list[Edge] | None = None
    for ids in combinations(range(g.m), n - 1):
        if not _is_spanning(n, edge_rows, ids):
            continue
        total = _total_tree_stretch(n, edge_rows, ids)
        avg = Fraction(total, g.m)
        if best_avg is None or avg < best_avg:
            best_avg = avg
            best_ids = ids
            best_key = None
        elif avg == best_avg:
            if best_key is None:
                best_key = sorted(edge_rows[i] for i in best_ids)
            key = sorted(edge_rows[i] for i in ids)
            if key < best_key:
                best_ids = ids
                best_key = key
    if best_ids is None:
        raise ValueError("graph is not connected; no spanning tree exists")
    tree = SpanningTree.from_edge_ids(g, list(best_ids))
    return tree, stretch_report(tree)


def _is_spanning(n: int, edges: list[Edge], ids) -> bool:
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    merged = 0
    for i in ids:
        u, v = edges[i]
        ru, rv = find(u), find(v)
        if ru == rv:
            return False
        parent[ru] = rv
        merged += 1
    return merged == n - 1


def _total_tree_stretch(n: int, edges: list[Edge], ids) -> int:
    # parent/depth from vertex 0, then depth-equalizing climbs per edge;
    # independent of the production routing code on purpose
    adj: list[list[int]] = [[] for _ in range(n)]
    for i in ids:
        u, v = edges[i]
        adj[u].append(v)
        adj[v].append(u)
    parent = [-1] * n
    depth = [0] * n
    parent[0] = 0
    queue = [0]
    head = 0
    while head < len(queue):
        x = queue[head]
        head += 1
        for y in adj[x]:
            if parent[y] < 0:
                parent[y] = x
                depth[y] = depth[x] + 1
                queue.append(y)
    total = 0
    for u, v in edges:
        a, b = u, v
        da, db = depth[a], depth[b]
        while da > db:
            a = parent[a]
            da -= 1
        while db > da:
            b = parent[b]
            db -= 1
        while a != b:
            a = parent[a]
            b = parent[b]
            da -= 1
        total += depth[u] + depth[v] - 2 * da
    return total
