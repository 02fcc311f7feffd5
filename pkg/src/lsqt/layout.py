"""Vertex placement from the backbone tree alone, plus edge spline control
points.

Two layouts are provided: a Fruchterman-Reingold style spring simulation
over the backbone edges only (remainder edges exert no forces), and a radial
tree drawing that runs the classic first/second contour walks and maps the
resulting x-coordinates to angles, with radius proportional to tree depth.
Neither layout feeds back into segmentation or bundling; positions are pure
presentation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _fr
from .graph import Edge
from .routing import Segmentation
from .tree import SpanningTree


@dataclass(frozen=True)
class LayoutResult:
    positions: np.ndarray  # (n, 2) float64
    layout_kind: str  # "force_directed" | "radial_tree"
    params: dict

    def position(self, v: int) -> tuple[float, float]:
        return float(self.positions[v, 0]), float(self.positions[v, 1])


@dataclass(frozen=True)
class ForceParams:
    """Spring-simulation knobs; defaults follow a fixed iteration budget
    with linear cooling rather than convergence detection."""

    iterations: int = 300
    ideal_length: float = 1.0
    start_temperature: float | None = None  # default: 10% of canvas extent
    theta: float = 0.9
    bh_threshold: int = 2000

    def as_dict(self, seed: int) -> dict:
        t0 = self.start_temperature
        return {
            "iterations": self.iterations,
            "ideal_length": self.ideal_length,
            "start_temperature": t0 if t0 is not None else "auto",
            "theta": self.theta,
            "bh_threshold": self.bh_threshold,
            "seed": seed,
        }


def layout_force(
    tree: SpanningTree,
    params: ForceParams | None = None,
    seed: int = 0,
) -> LayoutResult:
    """Spring layout of the backbone; deterministic for a fixed seed.

    Initial positions are seeded-random in a square of side sqrt(n) (canvas
    units are abstract); repulsion is all-pairs below `bh_threshold`
    vertices and Barnes-Hut approximated above it.
    """
    if params is None:
        params = ForceParams()
    n = tree.graph.n
    rng = np.random.default_rng(seed)
    extent = math.sqrt(max(n, 1)) * params.ideal_length
    pos = rng.random((n, 2)) * extent
    if n > 1:
        t0 = params.start_temperature
        if t0 is None:
            t0 = 0.1 * extent
        ea = tree.graph.edges[tree.edge_ids, 0]
        eb = tree.graph.edges[tree.edge_ids, 1]
        pos = _fr.run_force_simulation(
            pos,
            ea,
            eb,
            params.iterations,
            params.ideal_length,
            t0,
            params.theta,
            params.bh_threshold,
        )
    pos -= pos.mean(axis=0)  # center on the origin
    return LayoutResult(pos, "force_directed", params.as_dict(seed))


def layout_radial(tree: SpanningTree, r0: float = 1.0) -> LayoutResult:
    """Radial tree drawing: contour-walk x-coordinates become angles, radius
    is depth * r0. Deterministic; components are laid out side by side."""
    if r0 <= 0:
        raise ValueError("r0 must be positive")
    n = tree.graph.n
    parent = tree.parent.tolist()
    children: list[list[int]] = [[] for _ in range(n)]
    roots = list(tree.roots)
    root_set = set(roots)
    for v in range(n):  # ascending order keeps child lists sorted
        if v not in root_set:
            children[parent[v]].append(v)
    depth = tree.depth.tolist()
    pos = np.zeros((n, 2))
    offset = 0.0
    for ci, root in enumerate(roots):
        xs, members = _contour_walk_x(root, children)
        max_depth = max(depth[v] for v in members)
        radius_extent = max_depth * r0
        if ci > 0:
            offset += radius_extent + r0
        if len(members) == 1:
            pos[root] = (offset, 0.0)
        else:
            xmin = min(xs[v] for v in members)
            xmax = max(xs[v] for v in members)
            span = xmax - xmin + 1.0  # unit sibling separation closes the circle
            for v in members:
                angle = 2.0 * math.pi * (xs[v] - xmin) / span
                r = depth[v] * r0
                pos[v, 0] = offset + r * math.cos(angle)
                pos[v, 1] = r * math.sin(angle)
        offset += radius_extent + r0
    return LayoutResult(pos, "radial_tree", {"r0": r0})


def _contour_walk_x(root: int, children: list[list[int]]) -> tuple[dict, list[int]]:
    """First/second walk of the linear-time contour algorithm (Walker's
    spacing as reformulated by Buchheim, Junger and Leipert), iterative so
    path-shaped trees cannot blow the recursion limit. Returns final x per
    vertex and the vertices of this component."""
    prelim: dict[int, float] = {}
    mod: dict[int, float] = {}
    change: dict[int, float] = {}
    shift: dict[int, float] = {}
    thread: dict[int, int | None] = {}
    ancestor: dict[int, int] = {}
    number: dict[int, int] = {}
    wparent: dict[int, int | None] = {root: None}
    members: list[int] = []

    def init(v: int) -> None:
        prelim[v] = 0.0
        mod[v] = 0.0
        change[v] = 0.0
        shift[v] = 0.0
        thread[v] = None
        ancestor[v] = v
        members.append(v)

    def next_left(v: int) -> int | None:
        return children[v][0] if children[v] else thread[v]

    def next_right(v: int) -> int | None:
        return children[v][-1] if children[v] else thread[v]

    def move_subtree(wm: int, wp: int, sh: float) -> None:
        subtrees = number[wp] - number[wm]
        change[wp] -= sh / subtrees
        shift[wp] += sh
        change[wm] += sh / subtrees
        prelim[wp] += sh
        mod[wp] += sh

    def apportion(v: int, default_ancestor: int) -> int:
        pv = wparent[v]
        idx = number[v]
        if idx == 0:
            return default_ancestor
        w = children[pv][idx - 1]  # left sibling
        vip = vop = v
        vim = w
        vom = children[pv][0]
        sip = mod[vip]
        sop = mod[vop]
        sim = mod[vim]
        som = mod[vom]
        while next_right(vim) is not None and next_left(vip) is not None:
            vim = next_right(vim)
            vip = next_left(vip)
            vom = next_left(vom)
            vop = next_right(vop)
            ancestor[vop] = v
            sh = (prelim[vim] + sim) - (prelim[vip] + sip) + 1.0
            if sh > 0:
                anc = ancestor[vim]
                if wparent.get(anc) != pv:
                    anc = default_ancestor
                move_subtree(anc, v, sh)
                sip += sh
                sop += sh
            sim += mod[vim]
            sip += mod[vip]
            som += mod[vom]
            sop += mod[vop]
        if next_right(vim) is not None and next_right(vop) is None:
            thread[vop] = next_right(vim)
            mod[vop] += sim - sop
        if next_left(vip) is not None and next_left(vom) is None:
            thread[vom] = next_left(vip)
            mod[vom] += sip - som
            default_ancestor = v
        return default_ancestor

    def execute_shifts(v: int) -> None:
        sh = 0.0
        ch = 0.0
        for w in reversed(children[v]):
            prelim[w] += sh
            mod[w] += sh
            ch += change[w]
            sh += shift[w] + ch

    def finish(v: int) -> None:
        kids = children[v]
        idx = number.get(v, 0)
        if not kids:
            if idx > 0:
                left = children[wparent[v]][idx - 1]
                prelim[v] = prelim[left] + 1.0
            else:
                prelim[v] = 0.0
        else:
            execute_shifts(v)
            midpoint = 0.5 * (prelim[kids[0]] + prelim[kids[-1]])
            if idx > 0:
                left = children[wparent[v]][idx - 1]
                prelim[v] = prelim[left] + 1.0
                mod[v] = prelim[v] - midpoint
            else:
                prelim[v] = midpoint

    # first walk, post-order with child-completion hooks
    init(root)
    number[root] = 0
    default_anc: dict[int, int] = {}
    stack: list[tuple[int, int]] = [(root, 0)]
    while stack:
        v, ci = stack.pop()
        kids = children[v]
        if ci > 0:
            default_anc[v] = apportion(kids[ci - 1], default_anc[v])
        if ci < len(kids):
            w = kids[ci]
            init(w)
            number[w] = ci
            wparent[w] = v
            if ci == 0:
                default_anc[v] = w
            stack.append((v, ci + 1))
            stack.append((w, 0))
        else:
            finish(v)

    # second walk: x = prelim + accumulated mods
    xs: dict[int, float] = {}
    stack2: list[tuple[int, float]] = [(root, -prelim[root])]
    while stack2:
        v, m = stack2.pop()
        xs[v] = prelim[v] + m
        for w in children[v]:
            stack2.append((w, m + mod[v]))
    return xs, members


@dataclass(frozen=True)
class EdgeSpline:
    """Spline control points of one remainder edge: the positions of its
    routed path's vertices, endpoints first and last."""

    edge: Edge
    points: tuple[tuple[float, float], ...]

    @property
    def control_point_count(self) -> int:
        return len(self.points)


def splines(seg: Segmentation, layout: LayoutResult) -> list[EdgeSpline]:
    """Control points for every remainder edge, in segmentation order.

    Curve interpolation (B-spline vs polyline) is the renderer's choice;
    only the control points are produced here.
    """
    pos = layout.positions
    out: list[EdgeSpline] = []
    for e, path in zip(seg.edges, seg.paths):
        pts = tuple((float(pos[v, 0]), float(pos[v, 1])) for v in path)
        out.append(EdgeSpline(e, pts))
    return out
