"""Immutable simple undirected graph: parsing, canonicalization, generators.

Vertices are dense integer ids 0..n-1. Edges are stored canonically with the
smaller endpoint first, self-loops dropped and duplicates collapsed, in first
appearance order. The adjacency structure is CSR-like with neighbors sorted
ascending per vertex, which makes every traversal in the package
deterministic.
"""

from __future__ import annotations

import heapq
from collections import deque
from typing import Iterable, Iterator

import numpy as np

from .errors import EdgeListParseError, EmptyGraphError, NotConnectedError

Edge = tuple[int, int]


class Graph:
    """Simple undirected graph over dense vertex ids.

    Treat instances as immutable: all pipeline stages share the same object
    and none of them may mutate it. Construction is single-threaded; after
    that the graph is safe to read concurrently.
    """

    __slots__ = ("n", "edges", "labels", "_indptr", "_nbr", "_eid", "_edge_index")

    def __init__(self, n: int, edges: np.ndarray, labels: list[str] | None = None):
        # `edges` must already be canonical (u < v per row, no dups/loops).
        self.n = int(n)
        self.edges = edges
        self.labels = labels
        self._build_adjacency()
        self._edge_index: dict[Edge, int] | None = None

    # -- construction --------------------------------------------------

    @classmethod
    def from_edges(
        cls,
        pairs: Iterable[tuple[int, int]],
        n: int | None = None,
        labels: list[str] | None = None,
    ) -> "Graph":
        """Build a graph from (u, v) pairs.

        Pairs are canonicalized (swapped so u < v), self-loops dropped and
        duplicates collapsed keeping first appearance. `n` defaults to
        max vertex id + 1.
        """
        seen: set[Edge] = set()
        out: list[Edge] = []
        hi = -1
        for u, v in pairs:
            u = int(u)
            v = int(v)
            if u < 0 or v < 0:
                raise ValueError(f"negative vertex id in edge ({u}, {v})")
            if u == v:
                continue
            if u > v:
                u, v = v, u
            if v > hi:
                hi = v
            e = (u, v)
            if e in seen:
                continue
            seen.add(e)
            out.append(e)
        if n is None:
            n = hi + 1
        elif hi >= n:
            raise ValueError(f"edge endpoint {hi} out of range for n={n}")
        arr = np.asarray(out, dtype=np.int64).reshape(len(out), 2)
        return cls(int(n), arr, labels)

    def _build_adjacency(self) -> None:
        m = len(self.edges)
        u = self.edges[:, 0] if m else np.empty(0, dtype=np.int64)
        v = self.edges[:, 1] if m else np.empty(0, dtype=np.int64)
        rows = np.concatenate([u, v])
        cols = np.concatenate([v, u])
        eids = np.concatenate([np.arange(m), np.arange(m)])
        order = np.lexsort((cols, rows))
        counts = np.bincount(rows, minlength=self.n)
        self._indptr = np.concatenate([[0], np.cumsum(counts)]).astype(np.int64)
        self._nbr = cols[order].astype(np.int64)
        self._eid = eids[order].astype(np.int64)

    # -- basic accessors -----------------------------------------------

    @property
    def m(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return int(self._indptr[v + 1] - self._indptr[v])

    def neighbors(self, v: int) -> np.ndarray:
        """Neighbor ids of v, ascending."""
        return self._nbr[self._indptr[v] : self._indptr[v + 1]]

    def adjacency_arrays(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """CSR arrays (indptr, neighbor, edge_id); shared, do not mutate."""
        return self._indptr, self._nbr, self._eid

    def edge_list(self) -> list[Edge]:
        return [(int(a), int(b)) for a, b in self.edges]

    def edge_index(self) -> dict[Edge, int]:
        """Canonical edge -> position in the edge array (built lazily)."""
        if self._edge_index is None:
            self._edge_index = {
                (int(a), int(b)): i for i, (a, b) in enumerate(self.edges)
            }
        return self._edge_index

    def has_edge(self, u: int, v: int) -> bool:
        if u > v:
            u, v = v, u
        return (u, v) in self.edge_index()

    def label_of(self, v: int) -> str:
        return self.labels[v] if self.labels is not None else str(v)

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


# -- parsing and serialization ------------------------------------------


def parse_edge_list(text: str | Iterable[str]) -> Graph:
    """Parse whitespace-separated vertex pairs, one edge per line.

    `#` starts a comment; blank lines are skipped. Labels (numeric or not)
    are mapped to dense ids in first-appearance order. Self-loops are
    dropped and duplicate edges collapsed.

    Raises EdgeListParseError with a line number on malformed lines and
    EmptyGraphError when no edges survive canonicalization.
    """
    lines: Iterable[str] = text.splitlines() if isinstance(text, str) else text
    ids: dict[str, int] = {}
    labels: list[str] = []
    pairs: list[tuple[int, int]] = []
    raw_edge_lines = 0
    for lineno, line in enumerate(lines, start=1):
        hash_pos = line.find("#")
        if hash_pos >= 0:
            line = line[:hash_pos]
        tokens = line.split()
        if not tokens:
            continue
        if len(tokens) != 2:
            raise EdgeListParseError(
                f"expected two vertex labels, got {len(tokens)}", lineno
            )
        raw_edge_lines += 1
        uv = []
        for tok in tokens:
            if tok not in ids:
                ids[tok] = len(labels)
                labels.append(tok)
            uv.append(ids[tok])
        pairs.append((uv[0], uv[1]))
    g = Graph.from_edges(pairs, n=len(labels) or None, labels=labels or None)
    if g.m == 0:
        raise EmptyGraphError(
            f"no edges after canonicalization ({raw_edge_lines} input lines)"
        )
    return g


def parse_edge_list_file(path: str) -> Graph:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_edge_list(fh)


def to_edge_list_text(g: Graph) -> str:
    """Serialize as parseable edge-list text (labels preserved)."""
    out = [f"{g.label_of(int(u))} {g.label_of(int(v))}" for u, v in g.edges]
    return "\n".join(out) + "\n"


# -- structure queries ----------------------------------------------------


def connected_components(g: Graph) -> list[list[int]]:
    """Partition of vertices into connected components.

    Each component is sorted by id; components are ordered by smallest
    member.
    """
    seen = bytearray(g.n)
    comps: list[list[int]] = []
    for start in range(g.n):
        if seen[start]:
            continue
        seen[start] = 1
        comp = [start]
        queue = deque([start])
        while queue:
            v = queue.popleft()
            for w in g.neighbors(v):
                w = int(w)
                if not seen[w]:
                    seen[w] = 1
                    comp.append(w)
                    queue.append(w)
        comp.sort()
        comps.append(comp)
    return comps


def is_connected(g: Graph) -> bool:
    return len(connected_components(g)) <= 1


def require_connected(g: Graph) -> None:
    if not is_connected(g):
        raise NotConnectedError("graph is not connected")


# -- generators -----------------------------------------------------------


def grid_graph(rows: int, cols: int) -> Graph:
    """rows x cols grid, vertices row-major, edges to right/down neighbors."""
    if rows < 1 or cols < 1:
        raise ValueError("rows and cols must be >= 1")
    pairs: list[tuple[int, int]] = []
    for r in range(rows):
        for c in range(cols):
            v = r * cols + c
            if c + 1 < cols:
                pairs.append((v, v + 1))
            if r + 1 < rows:
                pairs.append((v, v + cols))
    return Graph.from_edges(pairs, n=rows * cols)


def _decode_triangular(codes: np.ndarray, n: int) -> tuple[np.ndarray, np.ndarray]:
    # invert t = u*(2n-u-1)/2 + (v-u-1); float estimate then exact fixup
    t = codes.astype(np.float64)
    u = np.floor((2 * n - 1 - np.sqrt((2.0 * n - 1) ** 2 - 8.0 * t)) / 2).astype(
        np.int64
    )
    u = np.clip(u, 0, n - 2)
    base = u * (2 * n - u - 1) // 2
    while np.any(base > codes):
        u = np.where(base > codes, u - 1, u)
        base = u * (2 * n - u - 1) // 2
    nxt = (u + 1) * (2 * n - (u + 1) - 1) // 2
    while np.any(codes >= nxt):
        u = np.where(codes >= nxt, u + 1, u)
        nxt = (u + 1) * (2 * n - (u + 1) - 1) // 2
    base = u * (2 * n - u - 1) // 2
    v = u + 1 + (codes - base)
    return u, v


def random_connected_graph(n: int, m: int, seed: int = 0) -> Graph:
    """Random simple connected graph with n vertices and m distinct edges.

    Draws Erdos-Renyi G(n, m) and rejects disconnected samples. At
    densities where conditioning on connectivity is hopeless (rejection
    keeps failing), falls back to a uniform random spanning tree (Prufer
    decode) plus uniformly sampled extra edges. Deterministic for a fixed
    seed.
    """
    if n < 2:
        raise ValueError("need n >= 2")
    total = n * (n - 1) // 2
    if not n - 1 <= m <= total:
        raise ValueError(f"m={m} out of range [{n - 1}, {total}]")
    for attempt in range(20):
        rng = np.random.default_rng((seed, attempt))
        # Floyd's sampling: m distinct codes from [0, total)
        chosen: set[int] = set()
        for j in range(total - m, total):
            t = int(rng.integers(0, j + 1))
            chosen.add(t if t not in chosen else j)
        codes = np.fromiter(chosen, dtype=np.int64, count=m)
        codes.sort()
        u, v = _decode_triangular(codes, n)
        g = Graph(n, np.column_stack([u, v]))
        if is_connected(g):
            return g
    rng = np.random.default_rng((seed, 10_000))
    tree_codes = {_pair_code(u, v, n) for u, v in _prufer_tree_edges(n, rng)}
    chosen = set(tree_codes)
    while len(chosen) < m:
        draws = rng.integers(0, total, size=2 * (m - len(chosen)) + 8)
        for t in draws.tolist():
            if t not in chosen:
                chosen.add(t)
                if len(chosen) == m:
                    break
    codes = np.fromiter(chosen, dtype=np.int64, count=m)
    codes.sort()
    u, v = _decode_triangular(codes, n)
    return Graph(n, np.column_stack([u, v]))


def _pair_code(u: int, v: int, n: int) -> int:
    if u > v:
        u, v = v, u
    return u * (2 * n - u - 1) // 2 + (v - u - 1)


def _prufer_tree_edges(n: int, rng) -> list[tuple[int, int]]:
    """Uniform random labeled tree from a random Prufer sequence."""
    if n == 2:
        return [(0, 1)]
    seq = rng.integers(0, n, size=n - 2).tolist()
    degree = [1] * n
    for x in seq:
        degree[x] += 1
    edges = []
    leaves = [v for v in range(n) if degree[v] == 1]
    heapq.heapify(leaves)
    for x in seq:
        leaf = heapq.heappop(leaves)
        edges.append((leaf, x) if leaf < x else (x, leaf))
        degree[x] -= 1
        if degree[x] == 1:
            heapq.heappush(leaves, x)
    a = heapq.heappop(leaves)
    b = heapq.heappop(leaves)
    edges.append((a, b) if a < b else (b, a))
    return edges


def vertex_degrees(g: Graph) -> Iterator[int]:
    """Degrees in vertex order (sum equals 2m)."""
    for v in range(g.n):
        yield g.degree(v)
