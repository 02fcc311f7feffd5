"""Rooted-tree path machinery: LCA queries and remainder-edge segmentation.

Queries climb from both endpoints toward the root in strictly alternating
single steps, stamping visited vertices with the current query epoch; the
first already-stamped vertex reached is the lowest common ancestor, so a
query costs time proportional to the returned path, not the tree height.
Epoch stamps make the between-query reset O(1).

`segment_all` routes every remainder edge with the same climb, batched into
flat arrays (jitted when numba is present); per-edge `segment_edge` is the
plain-Python reference path and the two must agree exactly.

Concurrency contract: a RoutingTree owns mutable per-query scratch state and
must not be queried from multiple threads at once. Parallel callers take
`clone_for_worker()` clones, which share the read-only parent/depth arrays
but carry their own scratch.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

import numpy as np

from ._fr import HAVE_NUMBA, njit
from .errors import NotARemainderEdgeError, NotConnectedError
from .graph import Edge, Graph
from .tree import SpanningTree


class RoutingTree:
    """Query structure over a rooted SpanningTree."""

    __slots__ = ("tree", "_parent", "_depth", "_mark", "_epoch")

    def __init__(self, tree: SpanningTree, _shared: tuple | None = None):
        self.tree = tree
        if _shared is None:
            # plain lists: climbing loops index them far faster than ndarrays
            self._parent = tree.parent.tolist()
            self._depth = tree.depth.tolist()
        else:
            self._parent, self._depth = _shared
        self._mark = [0] * len(self._parent)
        self._epoch = 0

    def clone_for_worker(self) -> "RoutingTree":
        """Scratch-independent clone for use on another thread."""
        return RoutingTree(self.tree, _shared=(self._parent, self._depth))

    def depth_of(self, v: int) -> int:
        return self._depth[v]

    def lca(self, u: int, v: int) -> int:
        """Lowest common ancestor of u and v.

        Both climbers step alternately toward the root and stop stepping
        once parked there; a cross-component query (climbers park at
        different roots) raises NotConnectedError.
        """
        if u == v:
            return u
        parent = self._parent
        mark = self._mark
        self._epoch += 1
        epoch = self._epoch
        mark[u] = epoch
        mark[v] = epoch
        a, b = u, v
        while True:
            moved = False
            pa = parent[a]
            if pa != a:
                a = pa
                if mark[a] == epoch:
                    return a
                mark[a] = epoch
                moved = True
            pb = parent[b]
            if pb != b:
                b = pb
                if mark[b] == epoch:
                    return b
                mark[b] = epoch
                moved = True
            if not moved:
                raise NotConnectedError(
                    f"vertices {u} and {v} are in different components"
                )

    def path(self, u: int, v: int) -> list[int]:
        """Vertex sequence of the unique tree path u..v (inclusive)."""
        ell = self.lca(u, v)
        parent = self._parent
        up = [u]
        a = u
        while a != ell:
            a = parent[a]
            up.append(a)
        down = [v]
        b = v
        while b != ell:
            b = parent[b]
            down.append(b)
        down.pop()  # drop the lca, already at the end of `up`
        up.extend(reversed(down))
        return up


def preprocess(tree: SpanningTree) -> RoutingTree:
    """O(n) setup: adopt the rooted arrays and zero the query scratch."""
    return RoutingTree(tree)


@dataclass(frozen=True)
class PathEntry:
    """Segmentation of one remainder edge: its routed tree path."""

    edge: Edge
    lca: int
    path: tuple[int, ...]

    @property
    def segments(self) -> tuple[tuple[int, int], ...]:
        """Directed tree edges along the u -> v walk."""
        return tuple(zip(self.path, self.path[1:]))

    @property
    def segment_count(self) -> int:
        return len(self.path) - 1

    def tree_edges(self) -> list[Edge]:
        """Canonical (undirected) tree edges along the path, path order."""
        return [
            (a, b) if a < b else (b, a)
            for a, b in zip(self.path, self.path[1:])
        ]


class Segmentation:
    """Per-remainder-edge routed paths, in graph edge order.

    Paths are held in one flat vertex array with offsets; `paths` and
    `edges` materialize Python views lazily.
    """

    __slots__ = (
        "tree", "edge_ids", "lca_array", "indptr", "flat",
        "total_segments", "_edges", "_paths", "_index",
    )

    def __init__(
        self,
        tree: SpanningTree,
        edge_ids: np.ndarray,
        lca_array: np.ndarray,
        indptr: np.ndarray,
        flat: np.ndarray,
    ):
        self.tree = tree
        self.edge_ids = edge_ids
        self.lca_array = lca_array
        self.indptr = indptr
        self.flat = flat
        self.total_segments = int(len(flat) - (len(indptr) - 1)) if len(indptr) else 0
        self._edges: list[Edge] | None = None
        self._paths: list[list[int]] | None = None
        self._index: dict[Edge, int] | None = None

    @property
    def edges(self) -> list[Edge]:
        if self._edges is None:
            rows = self.tree.graph.edges[self.edge_ids]
            self._edges = [(int(u), int(v)) for u, v in rows]
        return self._edges

    @property
    def paths(self) -> list[list[int]]:
        if self._paths is None:
            flat = self.flat.tolist()
            ptr = self.indptr.tolist()
            self._paths = [flat[a:b] for a, b in zip(ptr, ptr[1:])]
        return self._paths

    @property
    def lcas(self) -> list[int]:
        return self.lca_array.tolist()

    def __len__(self) -> int:
        return len(self.edge_ids)

    def __iter__(self) -> Iterator[PathEntry]:
        for i in range(len(self.edge_ids)):
            yield self._entry_at(i)

    def __contains__(self, edge: Edge) -> bool:
        return edge in self._edge_index()

    def entry(self, edge: Edge) -> PathEntry:
        return self._entry_at(self._edge_index()[edge])

    def _entry_at(self, i: int) -> PathEntry:
        a, b = int(self.indptr[i]), int(self.indptr[i + 1])
        return PathEntry(
            self.edges[i],
            int(self.lca_array[i]),
            tuple(int(x) for x in self.flat[a:b]),
        )

    def _edge_index(self) -> dict[Edge, int]:
        if self._index is None:
            self._index = {e: i for i, e in enumerate(self.edges)}
        return self._index


def segment_edge(rt: RoutingTree, edge: Edge) -> PathEntry:
    """Route one remainder edge through the tree.

    Backbone edges are never segmented; passing one (or a pair that is not
    a graph edge at all) is a contract violation.
    """
    u, v = edge
    if u > v:
        u, v = v, u
    if rt.tree.is_tree_edge(u, v):
        raise NotARemainderEdgeError(
            f"({u}, {v}) is a backbone edge; only remainder edges are routed"
        )
    if not rt.tree.graph.has_edge(u, v):
        raise NotARemainderEdgeError(f"({u}, {v}) is not an edge of the graph")
    ell = rt.lca(u, v)
    path = rt.path(u, v)
    return PathEntry((u, v), ell, tuple(path))


def segment_all(rt: RoutingTree, g: Graph | None = None) -> Segmentation:
    """Route every remainder edge; one entry per edge, graph order.

    Total cost is proportional to the summed stretch of the remainder
    edges (each query walks only its own path).
    """
    tree = rt.tree
    graph = tree.graph if g is None else g
    if graph is not tree.graph:
        raise ValueError("routing tree was built for a different graph")
    rem_ids = tree.remainder_edge_ids()
    eu = graph.edges[rem_ids, 0].astype(np.int64)
    ev = graph.edges[rem_ids, 1].astype(np.int64)
    parent = tree.parent.astype(np.int64)
    depth = tree.depth.astype(np.int64)
    if HAVE_NUMBA and len(rem_ids) >= 512:
        lca_arr, indptr, flat = _batch_routes_jit(parent, depth, eu, ev)
    else:
        lca_arr, indptr, flat = _batch_routes_py(
            parent.tolist(), depth.tolist(), eu.tolist(), ev.tolist()
        )
    if len(lca_arr) and int(lca_arr.min()) < 0:
        raise NotConnectedError("remainder edge spans two components")
    return Segmentation(tree, rem_ids, lca_arr, indptr, flat)


@njit(cache=True)
def _batch_routes_jit(parent, depth, eu, ev):  # pragma: no cover
    k = eu.shape[0]
    n = parent.shape[0]
    mark = np.zeros(n, np.int64)
    lca = np.empty(k, np.int64)
    indptr = np.zeros(k + 1, np.int64)
    for i in range(k):
        u = eu[i]
        v = ev[i]
        epoch = i + 1
        mark[u] = epoch
        mark[v] = epoch
        a = u
        b = v
        ell = np.int64(-1)
        while True:
            moved = False
            pa = parent[a]
            if pa != a:
                a = pa
                if mark[a] == epoch:
                    ell = a
                    break
                mark[a] = epoch
                moved = True
            pb = parent[b]
            if pb != b:
                b = pb
                if mark[b] == epoch:
                    ell = b
                    break
                mark[b] = epoch
                moved = True
            if not moved:
                break
        lca[i] = ell
        if ell < 0:
            return lca, indptr, np.empty(0, np.int64)
        indptr[i + 1] = indptr[i] + (depth[u] + depth[v] - 2 * depth[ell]) + 1
    flat = np.empty(indptr[k], np.int64)
    for i in range(k):
        ell = lca[i]
        pos = indptr[i]
        a = eu[i]
        while a != ell:
            flat[pos] = a
            pos += 1
            a = parent[a]
        flat[pos] = ell
        end = indptr[i + 1] - 1
        b = ev[i]
        while b != ell:
            flat[end] = b
            end -= 1
            b = parent[b]
    return lca, indptr, flat


def _batch_routes_py(parent, depth, eu, ev):
    k = len(eu)
    n = len(parent)
    mark = [0] * n
    lca = [0] * k
    indptr = [0] * (k + 1)
    for i in range(k):
        u = eu[i]
        v = ev[i]
        epoch = i + 1
        mark[u] = epoch
        mark[v] = epoch
        a = u
        b = v
        ell = -1
        while True:
            moved = False
            pa = parent[a]
            if pa != a:
                a = pa
                if mark[a] == epoch:
                    ell = a
                    break
                mark[a] = epoch
                moved = True
            pb = parent[b]
            if pb != b:
                b = pb
                if mark[b] == epoch:
                    ell = b
                    break
                mark[b] = epoch
                moved = True
            if not moved:
                break
        lca[i] = ell
        if ell < 0:
            return (
                np.asarray(lca, dtype=np.int64),
                np.zeros(k + 1, dtype=np.int64),
                np.empty(0, dtype=np.int64),
            )
        indptr[i + 1] = indptr[i] + (depth[u] + depth[v] - 2 * depth[ell]) + 1
    flat = [0] * indptr[k]
    for i in range(k):
        ell = lca[i]
        pos = indptr[i]
        a = eu[i]
        while a != ell:
            flat[pos] = a
            pos += 1
            a = parent[a]
        flat[pos] = ell
        end = indptr[i + 1] - 1
        b = ev[i]
        while b != ell:
            flat[end] = b
            end -= 1
            b = parent[b]
    return (
        np.asarray(lca, dtype=np.int64),
        np.asarray(indptr, dtype=np.int64),
        np.asarray(flat, dtype=np.int64),
    )
