"""End-to-end pipeline: tree -> segmentation -> bundles -> layout -> scene.

Phase timings (tree construction, segmentation+bundling, layout) use the
monotonic clock and cover compute only; file I/O and JSON encoding are
excluded. Callers wanting averaged numbers run a discarded warm-up first
(`repeats` in the CLI).
"""

from __future__ import annotations

import time
from dataclasses import dataclass

from .bundles import BundleIndex, build_bundles
from .graph import Graph
from .layout import ForceParams, LayoutResult, layout_force, layout_radial
from .routing import Segmentation, preprocess, segment_all
from .scene import build_scene
from .tree import SpanningTree, build_spanning_tree


@dataclass(frozen=True)
class TimingBreakdown:
    lst_seconds: float
    bundle_seconds: float
    layout_seconds: float

    @property
    def total_seconds(self) -> float:
        return self.lst_seconds + self.bundle_seconds + self.layout_seconds

    def as_dict(self) -> dict:
        return {
            "lst_seconds": self.lst_seconds,
            "bundle_seconds": self.bundle_seconds,
            "layout_seconds": self.layout_seconds,
            "total_seconds": self.total_seconds,
        }


@dataclass(frozen=True)
class PipelineResult:
    graph: Graph
    tree: SpanningTree
    segmentation: Segmentation
    bundle_index: BundleIndex
    layout: LayoutResult
    scene: dict
    timings: TimingBreakdown


def run_pipeline(
    graph: Graph,
    tree_kind: str = "lst",
    layout_kind: str = "force",
    seed: int = 0,
    grid_dims: tuple[int, int] | None = None,
    force_params: ForceParams | None = None,
    r0: float = 1.0,
    dataset: str = "",
) -> PipelineResult:
    t0 = time.perf_counter()
    tree = build_spanning_tree(graph, tree_kind, seed, grid_dims)
    t1 = time.perf_counter()
    rt = preprocess(tree)
    seg = segment_all(rt)
    idx = build_bundles(seg)
    t2 = time.perf_counter()
    layout = _run_layout(tree, layout_kind, seed, force_params, r0)
    t3 = time.perf_counter()
    scene = build_scene(
        graph, tree, seg, idx, layout,
        dataset=dataset, tree_kind=tree_kind, seed=seed,
    )
    timings = TimingBreakdown(t1 - t0, t2 - t1, t3 - t2)
    return PipelineResult(graph, tree, seg, idx, layout, scene, timings)


def _run_layout(
    tree: SpanningTree,
    layout_kind: str,
    seed: int,
    force_params: ForceParams | None,
    r0: float,
) -> LayoutResult:
    if layout_kind == "force":
        return layout_force(tree, force_params, seed)
    if layout_kind == "radial":
        return layout_radial(tree, r0)
    raise ValueError(f"unknown layout kind {layout_kind!r}")
