/**
 * Draw-list construction: a pure function of the view state.
 *
 * The renderer consumes primitives in array order (painter's algorithm);
 * building the list does no drawing and touches no DOM, so the same state
 * always yields an identical list and tests can run headless.
 *
 * Layering: backbone edges and vertices are always drawn plainly at the
 * bottom; then, depending on the mode, bundles and/or remainder-edge
 * splines, with the background layer at reduced opacity and the foreground
 * at full opacity. Hover highlights ride on top.
 */

import { catmullRom, taperedQuad, Vec } from "./geometry.js";
import { ViewState } from "./state.js";

export const BACKGROUND_OPACITY = 0.25;

/** Base bundle width as a fraction of the scene's coordinate spread;
 * thickness = base * sqrt(size), clamped to [base, 12 * base]. */
export const BUNDLE_BASE_WIDTH = 0.004;

export const SPLINE_SAMPLES_PER_SPAN = 8;

export type Primitive =
  | {
      kind: "backbone";
      index: number;
      a: Vec;
      b: Vec;
      opacity: number;
      highlighted: boolean;
    }
  | {
      kind: "bundle";
      index: number;
      size: number;
      outline: Vec[];
      opacity: number;
      highlighted: boolean;
    }
  | {
      kind: "edge";
      index: number;
      samples: Vec[];
      opacity: number;
      highlighted: boolean;
    }
  | { kind: "vertex"; index: number; at: Vec; highlighted: boolean };

export function bundleWidth(size: number, base = BUNDLE_BASE_WIDTH): number {
  return Math.min(Math.max(base * Math.sqrt(size), base), 12 * base);
}

function layerPlan(mode: ViewState["mode"]): { bundles: number | null; edges: number | null; order: ("bundles" | "edges")[] } {
  switch (mode) {
    case "bundles_only":
      return { bundles: 1, edges: null, order: ["bundles"] };
    case "edges_only":
      return { bundles: null, edges: 1, order: ["edges"] };
    case "bundles_foreground":
      return { bundles: 1, edges: BACKGROUND_OPACITY, order: ["edges", "bundles"] };
    case "edges_foreground":
      return { bundles: BACKGROUND_OPACITY, edges: 1, order: ["bundles", "edges"] };
  }
}

/** Scale geometry constants to the scene's original coordinate spread so
 * the same code works for unit-sized and hundred-wide layouts. Frozen at
 * the as-loaded layout on purpose: widths must not breathe while vertices
 * are dragged around, and incremental draw-list updates rely on it. */
export function sceneScale(state: ViewState): number {
  const { x, y } = state.scene.layout;
  let minX = Infinity,
    maxX = -Infinity,
    minY = Infinity,
    maxY = -Infinity;
  for (let i = 0; i < x.length; i++) {
    if (x[i] < minX) minX = x[i];
    if (x[i] > maxX) maxX = x[i];
    if (y[i] < minY) minY = y[i];
    if (y[i] > maxY) maxY = y[i];
  }
  const spread = Math.max(maxX - minX, maxY - minY);
  return spread > 0 ? spread : 1;
}

export function buildDrawList(state: ViewState): Primitive[] {
  const scene = state.scene;
  const { x, y } = state;
  const plan = layerPlan(state.mode);
  const scale = sceneScale(state);
  const out: Primitive[] = [];
  const hover = state.hover;
  const highlightedEdges = new Set<number>(
    hover?.kind === "bundle" ? hover.memberEdges : hover?.kind === "edge" ? [hover.index] : [],
  );
  const outlinedTree = new Set<number>();
  if (hover?.kind === "edge") {
    const n = scene.graph.n;
    for (const [u, v] of hover.treeEdges) outlinedTree.add(u * n + v);
  }

  const n = scene.graph.n;
  scene.graph.backbone.forEach(([u, v], i) => {
    out.push({
      kind: "backbone",
      index: i,
      a: { x: x[u], y: y[u] },
      b: { x: x[v], y: y[v] },
      opacity: 1,
      highlighted: outlinedTree.has(u * n + v),
    });
  });

  const pushBundles = (opacity: number) => {
    scene.bundles.tree_edges.forEach(([u, v], i) => {
      const size = scene.bundles.sizes[i];
      out.push({
        kind: "bundle",
        index: i,
        size,
        outline: taperedQuad(
          { x: x[u], y: y[u] },
          { x: x[v], y: y[v] },
          bundleWidth(size) * scale,
        ),
        opacity,
        highlighted: hover?.kind === "bundle" && hover.index === i,
      });
    });
  };
  const pushEdges = (opacity: number) => {
    scene.segmentation.paths.forEach((path, i) => {
      const pts = path.map((v) => ({ x: x[v], y: y[v] }));
      out.push({
        kind: "edge",
        index: i,
        samples: catmullRom(pts, SPLINE_SAMPLES_PER_SPAN),
        opacity,
        highlighted: highlightedEdges.has(i),
      });
    });
  };
  for (const layer of plan.order) {
    if (layer === "bundles" && plan.bundles !== null) pushBundles(plan.bundles);
    if (layer === "edges" && plan.edges !== null) pushEdges(plan.edges);
  }

  for (let v = 0; v < n; v++) {
    out.push({
      kind: "vertex",
      index: v,
      at: { x: x[v], y: y[v] },
      highlighted: state.drag?.vertex === v,
    });
  }
  return out;
}
