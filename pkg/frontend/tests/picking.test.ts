import { describe, expect, it } from "vitest";

import { buildDrawList } from "../src/drawlist.js";
import { distPointPolygon } from "../src/geometry.js";
import { hoverQuery, PickIndex, primitiveAnchor } from "../src/picking.js";
import { createViewState, setMode, ViewState } from "../src/state.js";
import { loadFixture } from "./helpers.js";

function pickSetup(state: ViewState) {
  const prims = buildDrawList(state);
  return { prims, index: new PickIndex(prims) };
}

describe("hover queries (K4 star: acceptance contract)", () => {
  const tol = 0.02;

  it("hovering each bundle highlights exactly its 2 member edges", () => {
    const state = createViewState(loadFixture("k4_star.scene.json"));
    setMode(state, "bundles_foreground");
    const { prims, index } = pickSetup(state);
    const bundles = prims.filter((p) => p.kind === "bundle");
    expect(bundles).toHaveLength(3);
    for (const bundle of bundles) {
      const hit = hoverQuery(state, index, primitiveAnchor(bundle)!, tol);
      expect(hit).not.toBeNull();
      expect(hit!.kind).toBe("bundle");
      if (hit!.kind !== "bundle") continue;
      expect(hit!.index).toBe(bundle.index);
      const expected = state.scene.bundles.members[bundle.index];
      expect(hit!.memberEdges).toEqual(expected);
      expect(hit!.memberEdges).toHaveLength(2);
    }
  });

  it("hovering each edge outlines exactly its 2 traversed tree edges", () => {
    const state = createViewState(loadFixture("k4_star.scene.json"));
    setMode(state, "edges_foreground");
    const { prims, index } = pickSetup(state);
    const quads = prims.filter((p) => p.kind === "bundle");
    const edges = prims.filter((p) => p.kind === "edge");
    expect(edges).toHaveLength(3);
    for (const edge of edges) {
      if (edge.kind !== "edge") continue;
      // probe where the spline is farthest from every bundle quad, so the
      // pick is unambiguous
      let probe = edge.samples[0];
      let bestClearance = -Infinity;
      for (const s of edge.samples) {
        let clearance = Infinity;
        for (const q of quads) {
          if (q.kind !== "bundle") continue;
          clearance = Math.min(clearance, distPointPolygon(s, q.outline));
        }
        if (clearance > bestClearance) {
          bestClearance = clearance;
          probe = s;
        }
      }
      const hit = hoverQuery(state, index, probe, tol);
      expect(hit).not.toBeNull();
      expect(hit!.kind).toBe("edge");
      if (hit!.kind !== "edge") continue;
      expect(hit!.index).toBe(edge.index);
      const [u, v] = state.scene.graph.remainder[edge.index];
      const path = state.scene.segmentation.paths[edge.index];
      expect(path[0]).toBe(u);
      expect(path[path.length - 1]).toBe(v);
      expect(hit!.treeEdges).toHaveLength(2);
      // K4 star routes 1-2 as 1-0-2: outlined spokes are (0,u) and (0,v)
      expect(hit!.treeEdges).toEqual([
        [0, u],
        [0, v],
      ]);
    }
  });

  it("hovering empty canvas returns nothing", () => {
    const state = createViewState(loadFixture("k4_star.scene.json"));
    setMode(state, "edges_foreground");
    const { index } = pickSetup(state);
    expect(hoverQuery(state, index, { x: 1e6, y: 1e6 }, tol)).toBeNull();
  });

  it("modes hide primitives from picking", () => {
    const state = createViewState(loadFixture("k4_star.scene.json"));
    setMode(state, "edges_only");
    const { prims, index } = pickSetup(state);
    expect(prims.some((p) => p.kind === "bundle")).toBe(false);
    // the spoke midpoint sits inside a (hidden) bundle; with bundles off it
    // either hits a nearby spline or nothing, never a bundle
    const hit = hoverQuery(state, index, { x: state.x[1] / 2, y: state.y[1] / 2 }, tol);
    expect(hit?.kind === "bundle").toBe(false);
  });
});

describe("pick consistency", () => {
  it("every primitive is returned when queried at its own anchor", () => {
    for (const fixture of ["k4_star.scene.json", "flare.scene.json"]) {
      const state = createViewState(loadFixture(fixture));
      setMode(state, "edges_foreground");
      const tol = 0.001; // tight: the anchor lies exactly on the primitive
      const { prims, index } = pickSetup(state);
      let checked = 0;
      for (const prim of prims) {
        const anchor = primitiveAnchor(prim);
        if (!anchor) continue;
        const hit = hoverQuery(state, index, anchor, tol);
        expect(hit, `${prim.kind} ${prim.index} in ${fixture}`).not.toBeNull();
        expect(`${hit!.kind}:${hit!.index}`).toBe(`${prim.kind}:${prim.index}`);
        checked++;
      }
      expect(checked).toBeGreaterThan(0);
    }
  });
});
