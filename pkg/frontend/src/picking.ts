/**
 * Hover picking over the current draw list.
 *
 * A uniform grid over primitive bounding boxes narrows the candidates, then
 * exact distances decide: 0 inside a bundle quad, polyline distance for
 * splines. The nearest primitive within the tolerance wins; exact ties
 * prefer edges over bundles (a spline sample can sit inside a quad, the
 * reverse almost never happens), then the lower index. Only primitives the
 * current mode displays are pickable; backbone lines and vertices are not
 * hover targets.
 */

import { bboxOf, BBox, distPointPolygon, distPointPolyline, Vec } from "./geometry.js";
import { Primitive } from "./drawlist.js";
import { Highlight, ViewState } from "./state.js";

export const PICK_TOLERANCE_PX = 6;

interface Entry {
  prim: Primitive;
  bbox: BBox;
}

export class PickIndex {
  private entries: Entry[] = [];
  private grid = new Map<number, number[]>();
  private cell = 1;
  private minX = 0;
  private minY = 0;
  private cols = 1;

  constructor(primitives: Primitive[]) {
    let world: BBox = { minX: 0, minY: 0, maxX: 1, maxY: 1 };
    let first = true;
    for (const prim of primitives) {
      const pts = pickPoints(prim);
      if (!pts) continue;
      const bb = bboxOf(pts);
      this.entries.push({ prim, bbox: bb });
      world = first
        ? { ...bb }
        : {
            minX: Math.min(world.minX, bb.minX),
            minY: Math.min(world.minY, bb.minY),
            maxX: Math.max(world.maxX, bb.maxX),
            maxY: Math.max(world.maxY, bb.maxY),
          };
      first = false;
    }
    const spanX = Math.max(world.maxX - world.minX, 1e-9);
    const spanY = Math.max(world.maxY - world.minY, 1e-9);
    const target = Math.max(8, Math.ceil(Math.sqrt(this.entries.length)));
    this.cell = Math.max(spanX, spanY) / target;
    this.minX = world.minX;
    this.minY = world.minY;
    this.cols = Math.ceil(spanX / this.cell) + 1;
    this.entries.forEach((entry, idx) => {
      const { bbox } = entry;
      const c0 = this.colOf(bbox.minX);
      const c1 = this.colOf(bbox.maxX);
      const r0 = this.rowOf(bbox.minY);
      const r1 = this.rowOf(bbox.maxY);
      for (let r = r0; r <= r1; r++) {
        for (let c = c0; c <= c1; c++) {
          const key = r * this.cols + c;
          const cellList = this.grid.get(key);
          if (cellList) cellList.push(idx);
          else this.grid.set(key, [idx]);
        }
      }
    });
  }

  private colOf(x: number): number {
    return Math.max(0, Math.floor((x - this.minX) / this.cell));
  }

  private rowOf(y: number): number {
    return Math.max(0, Math.floor((y - this.minY) / this.cell));
  }

  /** Entries whose cells overlap the tolerance square around p. */
  candidates(p: Vec, tolerance: number): Entry[] {
    const c0 = this.colOf(p.x - tolerance);
    const c1 = this.colOf(p.x + tolerance);
    const r0 = this.rowOf(p.y - tolerance);
    const r1 = this.rowOf(p.y + tolerance);
    const seen = new Set<number>();
    const out: Entry[] = [];
    for (let r = r0; r <= r1; r++) {
      for (let c = c0; c <= c1; c++) {
        const idxs = this.grid.get(r * this.cols + c);
        if (!idxs) continue;
        for (const i of idxs) {
          if (!seen.has(i)) {
            seen.add(i);
            out.push(this.entries[i]);
          }
        }
      }
    }
    return out;
  }
}

function pickPoints(prim: Primitive): Vec[] | null {
  switch (prim.kind) {
    case "bundle":
      return prim.outline;
    case "edge":
      return prim.samples;
    default:
      return null;
  }
}

function distanceTo(prim: Primitive, p: Vec): number {
  switch (prim.kind) {
    case "bundle":
      return distPointPolygon(p, prim.outline);
    case "edge":
      return distPointPolyline(p, prim.samples);
    default:
      return Infinity;
  }
}

/** Tie-break rank: edges beat bundles at equal distance. */
function kindRank(prim: Primitive): number {
  return prim.kind === "edge" ? 0 : 1;
}

/**
 * Nearest pickable primitive within `tolerance` world units of `p`, as a
 * Highlight (null when nothing is in range).
 */
export function hoverQuery(
  state: ViewState,
  index: PickIndex,
  p: Vec,
  tolerance: number,
): Highlight | null {
  let best: Primitive | null = null;
  let bestDist = Infinity;
  for (const { prim, bbox } of index.candidates(p, tolerance)) {
    if (
      p.x < bbox.minX - tolerance ||
      p.x > bbox.maxX + tolerance ||
      p.y < bbox.minY - tolerance ||
      p.y > bbox.maxY + tolerance
    ) {
      continue;
    }
    const d = distanceTo(prim, p);
    if (d > tolerance) continue;
    if (
      d < bestDist ||
      (d === bestDist &&
        best !== null &&
        (kindRank(prim) < kindRank(best) ||
          (kindRank(prim) === kindRank(best) && prim.index < best.index)))
    ) {
      best = prim;
      bestDist = d;
    }
  }
  if (!best) return null;
  return toHighlight(state, best);
}

export function toHighlight(state: ViewState, prim: Primitive): Highlight | null {
  const scene = state.scene;
  if (prim.kind === "bundle") {
    return {
      kind: "bundle",
      index: prim.index,
      memberEdges: [...scene.bundles.members[prim.index]],
    };
  }
  if (prim.kind === "edge") {
    const path = scene.segmentation.paths[prim.index];
    const treeEdges: [number, number][] = [];
    for (let j = 0; j + 1 < path.length; j++) {
      const a = path[j];
      const b = path[j + 1];
      treeEdges.push(a < b ? [a, b] : [b, a]);
    }
    return { kind: "edge", index: prim.index, treeEdges };
  }
  return null;
}

/** Reference anchor of a primitive: where hovering must return it. */
export function primitiveAnchor(prim: Primitive): Vec | null {
  if (prim.kind === "bundle") {
    // centroid of the outline = center of the tree edge
    let sx = 0;
    let sy = 0;
    for (const q of prim.outline) {
      sx += q.x;
      sy += q.y;
    }
    return { x: sx / prim.outline.length, y: sy / prim.outline.length };
  }
  if (prim.kind === "edge") {
    // a quarter of the way along: on the curve, but away from the control
    // points, which routed edges share with every other path through the
    // same tree vertices
    return prim.samples[Math.max(1, Math.floor(prim.samples.length / 4))];
  }
  return null;
}
