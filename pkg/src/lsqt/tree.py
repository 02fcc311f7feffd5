"""Spanning trees over a Graph: the low-stretch builder and baselines.

A SpanningTree stores the selected edge ids plus the rooted form (parent
pointers and depths, one root per connected component, roots at the smallest
vertex id unless a builder dictates otherwise). Disconnected graphs yield a
spanning forest with n - c edges.
"""

from __future__ import annotations

from collections import deque

import numpy as np

from . import akpw
from .errors import NotConnectedError
from .graph import Edge, Graph, grid_graph


class SpanningTree:
    """Rooted spanning tree (or forest) of a source graph.

    Immutable after construction; share freely across readers.
    """

    __slots__ = ("graph", "edge_ids", "parent", "depth", "roots", "_edge_set")

    def __init__(
        self,
        graph: Graph,
        edge_ids: np.ndarray,
        parent: np.ndarray,
        depth: np.ndarray,
        roots: tuple[int, ...],
    ):
        self.graph = graph
        self.edge_ids = edge_ids
        self.parent = parent
        self.depth = depth
        self.roots = roots
        self._edge_set: frozenset[Edge] | None = None

    @classmethod
    def from_edge_ids(
        cls,
        graph: Graph,
        edge_ids,
        roots: list[int] | None = None,
    ) -> "SpanningTree":
        """Root the given tree edges and derive parent/depth arrays.

        Roots default to the smallest vertex id of each component. A BFS
        with ascending neighbor order fills parent and depth; the edge set
        is verified to be spanning and acyclic.
        """
        ids = sorted(int(i) for i in edge_ids)
        if any(a == b for a, b in zip(ids, ids[1:])):
            raise ValueError("duplicate tree edge id")
        edge_ids = np.asarray(ids, dtype=np.int64)
        n = graph.n
        adj: list[list[int]] = [[] for _ in range(n)]
        for i in edge_ids:
            u, v = graph.edges[i]
            adj[int(u)].append(int(v))
            adj[int(v)].append(int(u))
        for lst in adj:
            lst.sort()
        parent = np.full(n, -1, dtype=np.int64)
        depth = np.zeros(n, dtype=np.int64)
        chosen_roots: list[int] = []
        forced = iter(roots) if roots is not None else None
        for start in _root_order(n, forced):
            if parent[start] != -1:
                continue
            parent[start] = start
            chosen_roots.append(start)
            queue = deque([start])
            while queue:
                v = queue.popleft()
                for w in adj[v]:
                    if parent[w] == -1:
                        parent[w] = v
                        depth[w] = depth[v] + 1
                        queue.append(w)
        if len(edge_ids) != n - len(chosen_roots):
            raise ValueError(
                f"{len(edge_ids)} edges cannot span {n} vertices in "
                f"{len(chosen_roots)} components (cycle or missing edge)"
            )
        return cls(graph, edge_ids, parent, depth, tuple(chosen_roots))

    # -- accessors -------------------------------------------------------

    @property
    def root(self) -> int:
        return self.roots[0]

    @property
    def n_components(self) -> int:
        return len(self.roots)

    def tree_edges(self) -> frozenset[Edge]:
        if self._edge_set is None:
            self._edge_set = frozenset(
                (int(self.graph.edges[i, 0]), int(self.graph.edges[i, 1]))
                for i in self.edge_ids
            )
        return self._edge_set

    def is_tree_edge(self, u: int, v: int) -> bool:
        """O(1) membership via parent pointers (roots parent themselves,
        so a self-parent can never match the other endpoint)."""
        return self.parent[u] == v or self.parent[v] == u

    def remainder_edge_ids(self) -> np.ndarray:
        mask = np.ones(self.graph.m, dtype=bool)
        mask[self.edge_ids] = False
        return np.flatnonzero(mask)

    def __repr__(self) -> str:
        return (
            f"SpanningTree(n={self.graph.n}, edges={len(self.edge_ids)}, "
            f"components={self.n_components})"
        )


def _root_order(n: int, forced):
    if forced is not None:
        yield from forced
    yield from range(n)


# -- builders -------------------------------------------------------------


def build_lst(g: Graph, seed: int = 0) -> SpanningTree:
    """Low-stretch spanning tree via iterative ball-growing coarsening.

    Deterministic for fixed (g, seed). Disconnected graphs yield a forest
    (each component processed independently by construction).
    """
    edge_ids = akpw.coarsening_tree_edges(g, seed)
    return SpanningTree.from_edge_ids(g, edge_ids)


def build_bfs_tree(g: Graph, root: int = 0) -> SpanningTree:
    """BFS tree from `root`, neighbors visited in ascending id order."""
    if not 0 <= root < g.n:
        raise ValueError(f"root {root} out of range for n={g.n}")
    indptr, nbr, eid = g.adjacency_arrays()
    il, nl, el = indptr.tolist(), nbr.tolist(), eid.tolist()
    parent = [-1] * g.n
    parent[root] = root
    edge_ids: list[int] = []
    queue = deque([root])
    while queue:
        v = queue.popleft()
        for i in range(il[v], il[v + 1]):
            w = nl[i]
            if parent[w] == -1:
                parent[w] = v
                edge_ids.append(el[i])
                queue.append(w)
    if len(edge_ids) != g.n - 1:
        raise NotConnectedError("BFS tree requires a connected graph")
    return SpanningTree.from_edge_ids(g, edge_ids, roots=[root])


def build_bfs_forest(g: Graph) -> SpanningTree:
    """BFS forest: one BFS tree per component, rooted at its smallest id."""
    indptr, nbr, eid = g.adjacency_arrays()
    il, nl, el = indptr.tolist(), nbr.tolist(), eid.tolist()
    parent = [-1] * g.n
    edge_ids: list[int] = []
    for root in range(g.n):
        if parent[root] != -1:
            continue
        parent[root] = root
        queue = deque([root])
        while queue:
            v = queue.popleft()
            for i in range(il[v], il[v + 1]):
                w = nl[i]
                if parent[w] == -1:
                    parent[w] = v
                    edge_ids.append(el[i])
                    queue.append(w)
    return SpanningTree.from_edge_ids(g, edge_ids)


def build_comb_tree(g: Graph, rows: int, cols: int) -> SpanningTree:
    """Comb spanning tree of a grid: full first column plus every row.

    The input must be grid_graph(rows, cols); the comb is the standard
    high-stretch baseline whose average stretch grows with the grid side.
    """
    expected = grid_graph(rows, cols)
    if g.n != expected.n or not np.array_equal(g.edges, expected.edges):
        raise ValueError(f"input is not grid_graph({rows}, {cols})")
    index = g.edge_index()
    edge_ids: list[int] = []
    for r in range(rows):
        for c in range(cols - 1):
            v = r * cols + c
            edge_ids.append(index[(v, v + 1)])
    for r in range(rows - 1):
        edge_ids.append(index[(r * cols, (r + 1) * cols)])
    return SpanningTree.from_edge_ids(g, edge_ids)


def build_spanning_tree(
    g: Graph,
    kind: str = "lst",
    seed: int = 0,
    grid_dims: tuple[int, int] | None = None,
) -> SpanningTree:
    """Dispatch on tree kind: 'lst', 'bfs' or 'comb'.

    Handles disconnected input for lst/bfs by building a forest.
    """
    if kind == "lst":
        return build_lst(g, seed)
    if kind == "bfs":
        return build_bfs_forest(g)
    if kind == "comb":
        if grid_dims is None:
            raise ValueError("comb tree requires grid dimensions")
        return build_comb_tree(g, *grid_dims)
    raise ValueError(f"unknown tree kind {kind!r}")
