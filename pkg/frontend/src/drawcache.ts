/**
 * Incremental draw-list maintenance.
 *
 * A full draw list is built once per mode change; a vertex drag then
 * recomputes only the primitives whose geometry involves that vertex:
 * incident backbone lines, bundle quads on incident tree edges, splines
 * whose control-point sequence contains the vertex, and the vertex dot
 * itself. Hover changes only flip highlight flags. The result must always
 * equal a fresh buildDrawList of the same state (tested), it just gets
 * there without rebuilding thousands of untouched primitives.
 */

import { buildDrawList, bundleWidth, Primitive, sceneScale, SPLINE_SAMPLES_PER_SPAN } from "./drawlist.js";
import { catmullRom, taperedQuad } from "./geometry.js";
import { Highlight, ViewState } from "./state.js";

interface Incidence {
  backbone: number[][]; // vertex -> backbone indexes
  bundles: number[][]; // vertex -> bundle indexes
  edges: number[][]; // vertex -> remainder edge indexes (via path membership)
}

export class DrawCache {
  private prims: Primitive[] = [];
  private mode: ViewState["mode"] | null = null;
  private hover: Highlight | null = null;
  private dragVertexShown: number | null = null;
  private incidence: Incidence;
  private primAt = {
    backbone: [] as number[],
    bundle: [] as number[],
    edge: [] as number[],
    vertex: [] as number[],
  };

  constructor(private state: ViewState) {
    this.incidence = buildIncidence(state);
    this.rebuild();
  }

  list(): Primitive[] {
    this.sync();
    return this.prims;
  }

  /** Bring the cached list up to date with the state. */
  private sync(): void {
    if (this.mode !== this.state.mode) {
      this.rebuild();
      return;
    }
    if (this.hoverKey(this.hover) !== this.hoverKey(this.state.hover)) {
      this.applyHover();
    }
    if ((this.state.drag?.vertex ?? null) !== this.dragVertexShown) {
      this.applyDragFlag();
    }
  }

  /** Recompute the primitives that involve `vertex` after a position
   * change. */
  onVertexMoved(vertex: number): void {
    this.sync();
    const state = this.state;
    const { x, y } = state;
    const scale = sceneScale(state);
    const scene = state.scene;
    for (const i of this.incidence.backbone[vertex]) {
      const at = this.primAt.backbone[i];
      if (at < 0) continue;
      const [u, v] = scene.graph.backbone[i];
      const prim = this.prims[at];
      if (prim.kind === "backbone") {
        prim.a = { x: x[u], y: y[u] };
        prim.b = { x: x[v], y: y[v] };
      }
    }
    for (const i of this.incidence.bundles[vertex]) {
      const at = this.primAt.bundle[i];
      if (at < 0) continue;
      const [u, v] = scene.bundles.tree_edges[i];
      const prim = this.prims[at];
      if (prim.kind === "bundle") {
        prim.outline = taperedQuad(
          { x: x[u], y: y[u] },
          { x: x[v], y: y[v] },
          bundleWidth(prim.size) * scale,
        );
      }
    }
    for (const i of this.incidence.edges[vertex]) {
      const at = this.primAt.edge[i];
      if (at < 0) continue;
      const prim = this.prims[at];
      if (prim.kind === "edge") {
        const pts = scene.segmentation.paths[i].map((v2) => ({ x: x[v2], y: y[v2] }));
        prim.samples = catmullRom(pts, SPLINE_SAMPLES_PER_SPAN);
      }
    }
    const atV = this.primAt.vertex[vertex];
    if (atV >= 0) {
      const prim = this.prims[atV];
      if (prim.kind === "vertex") prim.at = { x: x[vertex], y: y[vertex] };
    }
  }

  private rebuild(): void {
    this.prims = buildDrawList(this.state);
    this.mode = this.state.mode;
    this.hover = this.state.hover;
    this.dragVertexShown = this.state.drag?.vertex ?? null;
    const scene = this.state.scene;
    this.primAt.backbone = new Array(scene.graph.backbone.length).fill(-1);
    this.primAt.bundle = new Array(scene.bundles.tree_edges.length).fill(-1);
    this.primAt.edge = new Array(scene.graph.remainder.length).fill(-1);
    this.primAt.vertex = new Array(scene.graph.n).fill(-1);
    this.prims.forEach((prim, i) => {
      this.primAt[prim.kind][prim.index] = i;
    });
  }

  private hoverKey(h: Highlight | null): string {
    return h === null ? "" : `${h.kind}:${h.index}`;
  }

  private applyHover(): void {
    // flip highlight flags from the old hover to the new one, in place
    const setFor = (h: Highlight | null) => {
      const edges = new Set<number>();
      const tree = new Set<number>();
      let bundle = -1;
      if (h?.kind === "bundle") {
        bundle = h.index;
        for (const e of h.memberEdges) edges.add(e);
      } else if (h?.kind === "edge") {
        edges.add(h.index);
        const n = this.state.scene.graph.n;
        for (const [u, v] of h.treeEdges) tree.add(u * n + v);
      }
      return { edges, tree, bundle };
    };
    const next = setFor(this.state.hover);
    const n = this.state.scene.graph.n;
    for (const prim of this.prims) {
      switch (prim.kind) {
        case "bundle":
          prim.highlighted = prim.index === next.bundle;
          break;
        case "edge":
          prim.highlighted = next.edges.has(prim.index);
          break;
        case "backbone": {
          const [u, v] = this.state.scene.graph.backbone[prim.index];
          prim.highlighted = next.tree.has(u * n + v);
          break;
        }
        default:
          break;
      }
    }
    this.hover = this.state.hover;
  }

  private applyDragFlag(): void {
    const current = this.state.drag?.vertex ?? null;
    if (this.dragVertexShown !== null) {
      const at = this.primAt.vertex[this.dragVertexShown];
      const prim = at >= 0 ? this.prims[at] : null;
      if (prim && prim.kind === "vertex") prim.highlighted = false;
    }
    if (current !== null) {
      const at = this.primAt.vertex[current];
      const prim = at >= 0 ? this.prims[at] : null;
      if (prim && prim.kind === "vertex") prim.highlighted = true;
    }
    this.dragVertexShown = current;
  }
}

function buildIncidence(state: ViewState): Incidence {
  const scene = state.scene;
  const n = scene.graph.n;
  const backbone: number[][] = Array.from({ length: n }, () => []);
  const bundles: number[][] = Array.from({ length: n }, () => []);
  const edges: number[][] = Array.from({ length: n }, () => []);
  scene.graph.backbone.forEach(([u, v], i) => {
    backbone[u].push(i);
    backbone[v].push(i);
  });
  scene.bundles.tree_edges.forEach(([u, v], i) => {
    bundles[u].push(i);
    bundles[v].push(i);
  });
  scene.segmentation.paths.forEach((path, i) => {
    for (const v of path) edges[v].push(i);
  });
  return { backbone, bundles, edges };
}
