"""Self-contained scene files: everything an interactive viewer needs.

A scene is one JSON document with six blocks — graph, tree, segmentation,
bundles, layout, meta — written canonically (sorted keys, compact
separators, floats rounded to six significant digits) so equal scenes are
byte-identical files. The segmentation block stores each remainder edge's
routed vertex path; spline control points are exactly the layout positions
of those path vertices, so they are not duplicated.
"""

from __future__ import annotations

import json
import math
from typing import Any

from .bundles import BundleIndex
from .errors import SceneValidationError
from .graph import Graph
from .layout import LayoutResult
from .routing import Segmentation
from .tree import SpanningTree

TOOL_VERSION = "0.1.0"


def build_scene(
    graph: Graph,
    tree: SpanningTree,
    seg: Segmentation,
    bundle_index: BundleIndex,
    layout: LayoutResult,
    dataset: str = "",
    tree_kind: str = "lst",
    seed: int = 0,
) -> dict:
    """Assemble the scene dict (already canonical in value shape)."""
    backbone = [
        [int(graph.edges[i, 0]), int(graph.edges[i, 1])] for i in tree.edge_ids
    ]
    remainder_ids = tree.remainder_edge_ids()
    remainder = [
        [int(graph.edges[i, 0]), int(graph.edges[i, 1])] for i in remainder_ids
    ]
    if [tuple(e) for e in remainder] != seg.edges:
        raise ValueError("segmentation does not align with the remainder edges")
    rem_pos = {tuple(e): i for i, e in enumerate(remainder)}
    tree_edges = []
    members = []
    sizes = []
    for t, mem in bundle_index.bundles():
        tree_edges.append([t[0], t[1]])
        members.append([rem_pos[e] for e in mem])
        sizes.append(len(mem))
    pos = layout.positions
    return {
        "graph": {
            "n": graph.n,
            "labels": list(graph.labels) if graph.labels is not None else None,
            "backbone": backbone,
            "remainder": remainder,
        },
        "tree": {
            "root": int(tree.root),
            "roots": [int(r) for r in tree.roots],
            "parent": [int(p) for p in tree.parent],
        },
        "segmentation": {
            "paths": [list(p) for p in seg.paths],
        },
        "bundles": {
            "tree_edges": tree_edges,
            "members": members,
            "sizes": sizes,
        },
        "layout": {
            "kind": layout.layout_kind,
            "x": [_round6(float(v)) for v in pos[:, 0]],
            "y": [_round6(float(v)) for v in pos[:, 1]],
            "params": layout.params,
        },
        "meta": {
            "dataset": dataset,
            "tool": "lsqt",
            "version": TOOL_VERSION,
            "seed": seed,
            "tree_kind": tree_kind,
        },
    }


def _round6(x: float) -> float:
    """Six significant digits; idempotent, so round trips are stable."""
    if x == 0 or not math.isfinite(x):
        return 0.0 if x == 0 else x
    return float(f"{x:.6g}")


def _canonical(obj: Any) -> Any:
    if isinstance(obj, float):
        return _round6(obj)
    if isinstance(obj, dict):
        return {k: _canonical(obj[k]) for k in sorted(obj)}
    if isinstance(obj, (list, tuple)):
        return [_canonical(v) for v in obj]
    return obj


def scene_to_json(scene: dict) -> str:
    """Canonical serialization: sorted keys, compact, rounded floats."""
    return json.dumps(_canonical(scene), sort_keys=True, separators=(",", ":")) + "\n"


def write_scene(scene: dict, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(scene_to_json(scene))


def read_scene(path: str) -> dict:
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def graph_from_scene(scene: dict) -> Graph:
    """Rebuild the Graph from a scene's graph block (backbone edges first)."""
    block = scene["graph"]
    pairs = [tuple(e) for e in block["backbone"]] + [
        tuple(e) for e in block["remainder"]
    ]
    labels = block.get("labels")
    return Graph.from_edges(pairs, n=block["n"], labels=labels)


# -- validation -------------------------------------------------------------


def validate_scene(scene: dict) -> list[str]:
    """Internal-consistency checks; returns a list of problems (empty when
    the scene is valid)."""
    problems: list[str] = []

    def bad(msg: str) -> None:
        problems.append(msg)

    for block in ("graph", "tree", "segmentation", "bundles", "layout", "meta"):
        if block not in scene:
            bad(f"missing block {block!r}")
    if problems:
        return problems

    gb = scene["graph"]
    n = gb.get("n")
    if not isinstance(n, int) or n < 1:
        return [f"graph.n must be a positive integer, got {n!r}"]
    labels = gb.get("labels")
    if labels is not None and len(labels) != n:
        bad(f"labels length {len(labels)} != n {n}")

    def check_edges(name: str, rows) -> list[tuple[int, int]]:
        out = []
        for i, row in enumerate(rows):
            if len(row) != 2:
                bad(f"{name}[{i}] is not a pair")
                continue
            u, v = row
            if not (isinstance(u, int) and isinstance(v, int)):
                bad(f"{name}[{i}] has non-integer endpoints")
                continue
            if not (0 <= u < n and 0 <= v < n):
                bad(f"{name}[{i}]=({u},{v}) out of range")
                continue
            if u >= v:
                bad(f"{name}[{i}]=({u},{v}) not canonical (u < v)")
                continue
            out.append((u, v))
        return out

    backbone = check_edges("graph.backbone", gb.get("backbone", []))
    remainder = check_edges("graph.remainder", gb.get("remainder", []))
    backbone_set = set(backbone)
    remainder_set = set(remainder)
    if len(backbone_set) != len(backbone):
        bad("duplicate backbone edges")
    if len(remainder_set) != len(remainder):
        bad("duplicate remainder edges")
    if backbone_set & remainder_set:
        bad("backbone and remainder overlap")

    tb = scene["tree"]
    parent = tb.get("parent", [])
    roots = tb.get("roots", [])
    if len(parent) != n:
        bad(f"tree.parent length {len(parent)} != n {n}")
        return problems
    if tb.get("root") not in roots:
        bad("tree.root not listed in tree.roots")
    for r in roots:
        if not (0 <= r < n) or parent[r] != r:
            bad(f"root {r} is not its own parent")
    root_set = set(roots)
    # parent pointers must reproduce exactly the backbone and be acyclic
    derived = set()
    for v in range(n):
        p = parent[v]
        if not (0 <= p < n):
            bad(f"parent[{v}]={p} out of range")
            return problems
        if v in root_set:
            continue
        if p == v:
            bad(f"vertex {v} is its own parent but not a root")
            continue
        derived.add((v, p) if v < p else (p, v))
    if derived != backbone_set:
        bad("parent pointers do not match the backbone edge set")
    if len(backbone) != n - len(root_set):
        bad(
            f"backbone size {len(backbone)} != n - #roots = {n - len(root_set)}"
        )
    depth = _depths_or_none(parent, root_set)
    if depth is None:
        bad("parent pointers contain a cycle")
        return problems

    paths = scene["segmentation"].get("paths", [])
    if len(paths) != len(remainder):
        bad(f"{len(paths)} paths for {len(remainder)} remainder edges")
        return problems
    carried: dict[tuple[int, int], int] = {}
    for i, (path, (u, v)) in enumerate(zip(paths, remainder)):
        if len(path) < 3:
            bad(f"path[{i}] shorter than 2 segments")
            continue
        if path[0] != u or path[-1] != v:
            bad(f"path[{i}] endpoints {path[0]},{path[-1]} != edge ({u},{v})")
            continue
        ok = True
        for a, b in zip(path, path[1:]):
            e = (a, b) if a < b else (b, a)
            if e not in backbone_set:
                bad(f"path[{i}] uses non-backbone segment ({a},{b})")
                ok = False
                break
            carried[e] = carried.get(e, 0) + 1
        if ok and len(set(path)) != len(path):
            bad(f"path[{i}] revisits a vertex")

    bb = scene["bundles"]
    b_edges = [tuple(e) for e in bb.get("tree_edges", [])]
    b_members = bb.get("members", [])
    b_sizes = bb.get("sizes", [])
    if not (len(b_edges) == len(b_members) == len(b_sizes)):
        bad("bundle arrays have mismatched lengths")
        return problems
    if b_edges != sorted(b_edges):
        bad("bundle tree_edges not in ascending order")
    # recount membership from the paths themselves
    expected: dict[tuple[int, int], list[int]] = {}
    for i, path in enumerate(paths):
        for a, b in zip(path, path[1:]):
            e = (a, b) if a < b else (b, a)
            expected.setdefault(e, []).append(i)
    expected_bundles = {
        e: sorted(mem) for e, mem in expected.items() if len(mem) >= 2
    }
    listed = {}
    for e, mem, size in zip(b_edges, b_members, b_sizes):
        if e not in backbone_set:
            bad(f"bundle edge {e} is not a backbone edge")
        if size != len(mem):
            bad(f"bundle {e} size {size} != member count {len(mem)}")
        if size < 2:
            bad(f"bundle {e} has fewer than 2 members")
        listed[e] = sorted(mem)
    if listed != expected_bundles:
        bad("bundle membership does not match a recount of the paths")

    lb = scene["layout"]
    xs = lb.get("x", [])
    ys = lb.get("y", [])
    if len(xs) != n or len(ys) != n:
        bad(f"layout arrays have length {len(xs)}/{len(ys)}, expected {n}")
    else:
        for i in range(n):
            x, y = xs[i], ys[i]
            if (
                not isinstance(x, (int, float))
                or not isinstance(y, (int, float))
                or not (math.isfinite(x) and math.isfinite(y))
            ):
                bad(f"non-finite position for vertex {i}")
                break
    if lb.get("kind") not in ("force_directed", "radial_tree"):
        bad(f"unknown layout kind {lb.get('kind')!r}")

    return problems


def require_valid_scene(scene: dict) -> None:
    problems = validate_scene(scene)
    if problems:
        raise SceneValidationError(problems)


def _depths_or_none(parent: list[int], roots: set[int]) -> list[int] | None:
    n = len(parent)
    depth = [-1] * n
    for r in roots:
        depth[r] = 0
    for v in range(n):
        if depth[v] >= 0:
            continue
        chain = []
        x = v
        while depth[x] < 0:
            chain.append(x)
            x = parent[x]
            if len(chain) > n:
                return None
        base = depth[x]
        for i, y in enumerate(reversed(chain)):
            depth[y] = base + i + 1
    return depth
