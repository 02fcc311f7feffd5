"""Independent reference implementations used to check the package.

Everything here is deliberately naive (BFS distances, ancestor-set walks,
union-find, recounts) and shares no code with the production paths it
verifies.
"""

from __future__ import annotations

import random
from collections import deque
from fractions import Fraction
from itertools import combinations


def tree_adjacency(n, tree_edges):
    adj = [[] for _ in range(n)]
    for u, v in tree_edges:
        adj[u].append(v)
        adj[v].append(u)
    return adj


def bfs_distances(adj, src):
    dist = [-1] * len(adj)
    dist[src] = 0
    q = deque([src])
    while q:
        x = q.popleft()
        for y in adj[x]:
            if dist[y] < 0:
                dist[y] = dist[x] + 1
                q.append(y)
    return dist


def tree_path_length(n, tree_edges, u, v):
    """Hop distance between u and v using only the given tree edges."""
    return bfs_distances(tree_adjacency(n, tree_edges), u)[v]


def stretch_by_bfs(graph, tree_edges):
    """Per-edge stretch via BFS distances restricted to tree edges."""
    adj = tree_adjacency(graph.n, tree_edges)
    out = {}
    for u, v in graph.edge_list():
        out[(u, v)] = bfs_distances(adj, u)[v]
    return out


def average_stretch_by_bfs(graph, tree_edges):
    per_edge = stretch_by_bfs(graph, tree_edges)
    return Fraction(sum(per_edge.values()), graph.m)


def ancestor_set_lca(parent, u, v):
    """Collect u's ancestors, then walk v upward to the first hit."""
    anc = {u}
    x = u
    while parent[x] != x:
        x = parent[x]
        anc.add(x)
    y = v
    while y not in anc:
        y = parent[y]
    return y


def is_spanning_forest(graph, edge_ids):
    """Union-find check: the edges are acyclic and one short of spanning
    each component."""
    parent = list(range(graph.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i in edge_ids:
        u, v = graph.edges[int(i)]
        ru, rv = find(int(u)), find(int(v))
        if ru == rv:
            return False
        parent[ru] = rv
    roots = {find(x) for x in range(graph.n)}
    # components of the forest must match components of the graph
    gparent = list(range(graph.n))

    def gfind(x):
        while gparent[x] != x:
            gparent[x] = gparent[gparent[x]]
            x = gparent[x]
        return x

    for u, v in graph.edge_list():
        ru, rv = gfind(u), gfind(v)
        if ru != rv:
            gparent[ru] = rv
    groots = {gfind(x) for x in range(graph.n)}
    return len(roots) == len(groots)


def recount_members(paths, remainder_edges):
    """Group remainder edges by traversed tree edge, straight from paths."""
    members = {}
    for e, path in zip(remainder_edges, paths):
        for a, b in zip(path, path[1:]):
            t = (a, b) if a < b else (b, a)
            members.setdefault(t, []).append(e)
    return {t: sorted(mem) for t, mem in members.items()}


def random_connected_edge_set(rng: random.Random, n_lo=3, n_hi=9, m_cap=20):
    """Uniform-ish small connected graph as a sorted edge list."""
    while True:
        n = rng.randint(n_lo, n_hi)
        pairs = list(combinations(range(n), 2))
        rng.shuffle(pairs)
        m = rng.randint(n - 1, min(len(pairs), m_cap))
        edges = sorted(pairs[:m])
        parent = list(range(n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        comps = n
        for u, v in edges:
            ru, rv = find(u), find(v)
            if ru != rv:
                parent[ru] = rv
                comps -= 1
        if comps == 1:
            return n, edges


def random_tree_parent(rng: random.Random, n: int):
    """Random rooted tree as a parent array (root 0)."""
    parent = [0] * n
    for v in range(1, n):
        parent[v] = rng.randint(0, v - 1)
    parent[0] = 0
    return parent
