"""Bundles: segments grouped by the backbone edge they ride on.

A bundle is a backbone edge carried by two or more routed remainder edges.
Membership is purely topological — it is fixed once the segmentation exists
and no vertex position ever enters this module — so re-laying-out the graph
never changes any bundle. The index is immutable after build and safe for
concurrent readers.

Internally a backbone edge is keyed by its child vertex (the deeper
endpoint): every non-root vertex identifies exactly one tree edge, which
lets the grouping run as an integer sort instead of tuple hashing.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass

import numpy as np

from .errors import NotARemainderEdgeError, NotATreeEdgeError
from .graph import Edge
from .routing import Segmentation
from .tree import SpanningTree


class BundleIndex:
    """Bidirectional map between backbone edges and the remainder edges
    routed across them."""

    __slots__ = (
        "tree", "_seg", "_child_keys", "_member_indptr", "_member_rows",
        "_rem_index", "_hash",
    )

    def __init__(
        self,
        tree: SpanningTree,
        seg: Segmentation,
        child_keys: np.ndarray,
        member_indptr: np.ndarray,
        member_rows: np.ndarray,
    ):
        self.tree = tree
        self._seg = seg
        self._child_keys = child_keys          # deeper endpoint per tree edge
        self._member_indptr = member_indptr
        self._member_rows = member_rows        # indices into seg.edges
        self._rem_index: dict[Edge, int] | None = None
        self._hash: str | None = None

    # -- lookups ---------------------------------------------------------

    @property
    def total_segments(self) -> int:
        return self._seg.total_segments

    def _slice_for_child(self, child: int) -> np.ndarray:
        i = int(np.searchsorted(self._child_keys, child))
        if i >= len(self._child_keys) or self._child_keys[i] != child:
            return np.empty(0, dtype=np.int64)
        return self._member_rows[self._member_indptr[i] : self._member_indptr[i + 1]]

    def _child_of(self, tree_edge: Edge) -> int:
        u, v = tree_edge
        return u if self.tree.parent[u] == v else v

    def member_count(self, tree_edge: Edge) -> int:
        return len(self._slice_for_child(self._child_of(tree_edge)))

    def members(self, tree_edge: Edge) -> list[Edge]:
        """Member remainder edges, ascending canonical order."""
        seg_edges = self._seg.edges
        return [seg_edges[i] for i in self._slice_for_child(self._child_of(tree_edge))]

    def carrying_tree_edges(self) -> list[Edge]:
        """Backbone edges with at least one member, ascending."""
        parent = self.tree.parent
        out = []
        for c in self._child_keys.tolist():
            p = int(parent[c])
            out.append((c, p) if c < p else (p, c))
        out.sort()
        return out

    def bundles(self) -> list[tuple[Edge, list[Edge]]]:
        """(tree edge, members) for every bundle (>= 2 members), ascending."""
        parent = self.tree.parent
        seg_edges = self._seg.edges
        out = []
        ptr = self._member_indptr
        for i, c in enumerate(self._child_keys.tolist()):
            lo, hi = int(ptr[i]), int(ptr[i + 1])
            if hi - lo < 2:
                continue
            p = int(parent[c])
            t = (c, p) if c < p else (p, c)
            out.append((t, [seg_edges[j] for j in self._member_rows[lo:hi]]))
        out.sort(key=lambda pair: pair[0])
        return out

    def traversed(self, edge: Edge) -> list[Edge]:
        """Backbone edges along `edge`'s routed path, path order."""
        i = self._remainder_position(edge)
        a, b = int(self._seg.indptr[i]), int(self._seg.indptr[i + 1])
        path = self._seg.flat[a:b].tolist()
        return [
            (x, y) if x < y else (y, x) for x, y in zip(path, path[1:])
        ]

    def _remainder_position(self, edge: Edge) -> int:
        if self._rem_index is None:
            self._rem_index = {e: i for i, e in enumerate(self._seg.edges)}
        u, v = edge
        if u > v:
            u, v = v, u
        pos = self._rem_index.get((u, v))
        if pos is None:
            raise NotARemainderEdgeError(f"({u}, {v}) is not a remainder edge")
        return pos

    def structural_hash(self) -> str:
        """Digest of the full membership map; layout must never change it."""
        if self._hash is None:
            rows = [
                [list(t), [list(e) for e in self.members(t)]]
                for t in self.carrying_tree_edges()
            ]
            blob = json.dumps(rows, separators=(",", ":"))
            self._hash = hashlib.sha256(blob.encode()).hexdigest()
        return self._hash


def build_bundles(seg: Segmentation, tree: SpanningTree | None = None) -> BundleIndex:
    """Group all segments by their backbone edge.

    Every path vertex except the edge's LCA is the deeper endpoint of
    exactly one traversed tree edge, so the grouping is a sort over
    (child vertex, remainder-edge rank). Member lists come out ascending
    by remainder-edge canonical order.
    """
    if tree is None:
        tree = seg.tree
    if tree is not seg.tree:
        raise ValueError("segmentation was computed for a different tree")
    k = len(seg)
    if k == 0:
        empty = np.empty(0, dtype=np.int64)
        return BundleIndex(tree, seg, empty, np.zeros(1, dtype=np.int64), empty)
    indptr = seg.indptr
    flat = seg.flat
    graph = tree.graph
    eu = graph.edges[seg.edge_ids, 0].astype(np.int64)
    depth = tree.depth
    # drop each path's LCA: everything else is a child key
    ell_pos = indptr[:-1] + (depth[eu] - depth[seg.lca_array])
    keep = np.ones(len(flat), dtype=bool)
    keep[ell_pos] = False
    children = flat[keep]
    owner = np.repeat(np.arange(k, dtype=np.int64), np.diff(indptr))[keep]
    # ascending member order = lexicographic remainder-edge order; a single
    # combined key sorts by (child, edge rank) in one pass
    rows = graph.edges[seg.edge_ids]
    rank_order = np.lexsort((rows[:, 1], rows[:, 0]))
    rem_rank = np.empty(k, dtype=np.int64)
    rem_rank[rank_order] = np.arange(k)
    key = children * np.int64(k) + rem_rank[owner]
    key.sort()
    children = key // k
    owner = rank_order[key % k]
    first = np.concatenate([[True], children[1:] != children[:-1]])
    starts = np.flatnonzero(first)
    child_keys = children[starts]
    member_indptr = np.concatenate([starts, [len(children)]]).astype(np.int64)
    return BundleIndex(tree, seg, child_keys, member_indptr, owner)


def edges_of_bundle(idx: BundleIndex, tree_edge: Edge) -> list[Edge]:
    """Remainder edges riding on `tree_edge`, ascending (possibly empty).

    Raises NotATreeEdgeError if the argument is not a backbone edge.
    """
    u, v = tree_edge
    if u > v:
        u, v = v, u
    if not (0 <= u < idx.tree.graph.n and 0 <= v < idx.tree.graph.n):
        raise NotATreeEdgeError(f"({u}, {v}) is out of range")
    if not idx.tree.is_tree_edge(u, v):
        raise NotATreeEdgeError(f"({u}, {v}) is not a backbone edge")
    return idx.members((u, v))


def bundles_of_edge(idx: BundleIndex, edge: Edge) -> list[Edge]:
    """Backbone edges along `edge`'s routed path, in path order.

    Raises NotARemainderEdgeError if the argument is not a remainder edge.
    """
    return idx.traversed(edge)


@dataclass(frozen=True)
class BundleStats:
    bundle_count: int
    max_bundle_size: int
    size_histogram: dict[int, int]
    bundled_segment_fraction: float


def bundle_stats(idx: BundleIndex) -> BundleStats:
    """Aggregate bundle sizes.

    The histogram covers every backbone edge with at least one member
    (singletons included); only sizes >= 2 count as bundles.
    """
    sizes = np.diff(idx._member_indptr)
    histogram: dict[int, int] = {}
    bundle_count = 0
    max_size = 0
    bundled_segments = 0
    for size in sizes.tolist():
        histogram[size] = histogram.get(size, 0) + 1
        if size >= 2:
            bundle_count += 1
            bundled_segments += size
            if size > max_size:
                max_size = size
    total = idx.total_segments
    fraction = bundled_segments / total if total else 0.0
    return BundleStats(
        bundle_count=bundle_count,
        max_bundle_size=max_size,
        size_histogram=dict(sorted(histogram.items())),
        bundled_segment_fraction=fraction,
    )
