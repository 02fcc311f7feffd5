import { describe, expect, it } from "vitest";

import { buildDrawList } from "../src/drawlist.js";
import { stableStringify, topologyDigest } from "../src/scene.js";
import { createViewState, dragVertex, resetPositions, setMode } from "../src/state.js";
import { lcg, loadFixture } from "./helpers.js";

describe("vertex dragging (acceptance contract)", () => {
  it("100 scripted drags: topology bit-identical, re-render under 16 ms", () => {
    const scene = loadFixture("flare.scene.json");
    const state = createViewState(scene);
    setMode(state, "edges_foreground");
    buildDrawList(state); // warm-up (JIT, allocator)

    const before = stableStringify({
      bundles: scene.bundles,
      segmentation: scene.segmentation,
    });
    const digestBefore = topologyDigest(scene);

    const rand = lcg(1234);
    const n = scene.graph.n;
    const times: number[] = [];
    for (let i = 0; i < 100; i++) {
      const v = Math.floor(rand() * n);
      const to = { x: (rand() - 0.5) * 40, y: (rand() - 0.5) * 40 };
      const t0 = performance.now();
      dragVertex(state, v, to);
      const prims = buildDrawList(state); // the re-render
      times.push(performance.now() - t0);
      expect(prims.length).toBeGreaterThan(0);
    }
    const after = stableStringify({
      bundles: scene.bundles,
      segmentation: scene.segmentation,
    });
    expect(after).toBe(before); // bit-identical blocks
    expect(topologyDigest(scene)).toBe(digestBefore);

    const worst = Math.max(...times);
    const median = times.sort((a, b) => a - b)[50];
    expect(worst).toBeLessThan(16);
    expect(median).toBeLessThan(8);
  });

  it("dragged splines follow the vertex; drag back restores the frame", () => {
    const state = createViewState(loadFixture("k4_star.scene.json"));
    setMode(state, "edges_foreground");
    const original = JSON.stringify(buildDrawList(state));
    const ox = state.x[1];
    const oy = state.y[1];

    dragVertex(state, 1, { x: ox + 3, y: oy - 2 });
    const moved = buildDrawList(state);
    for (const prim of moved) {
      if (prim.kind === "edge") {
        const path = state.scene.segmentation.paths[prim.index];
        if (path.includes(1)) {
          const hit = prim.samples.some(
            (s) => Math.hypot(s.x - (ox + 3), s.y - (oy - 2)) < 1e-9,
          );
          expect(hit).toBe(true); // control point rode along
        }
      }
      if (prim.kind === "vertex" && prim.index === 1) {
        expect(prim.at).toEqual({ x: ox + 3, y: oy - 2 });
      }
    }
    expect(JSON.stringify(moved)).not.toBe(original);

    dragVertex(state, 1, { x: ox, y: oy });
    expect(JSON.stringify(buildDrawList(state))).toBe(original);
  });

  it("reset restores the scene layout", () => {
    const state = createViewState(loadFixture("k4_star.scene.json"));
    dragVertex(state, 2, { x: 99, y: 99 });
    resetPositions(state);
    expect(Array.from(state.x)).toEqual(state.scene.layout.x);
    expect(Array.from(state.y)).toEqual(state.scene.layout.y);
  });

  it("rejects out-of-range vertices", () => {
    const state = createViewState(loadFixture("k4_star.scene.json"));
    expect(() => dragVertex(state, 4, { x: 0, y: 0 })).toThrow(RangeError);
    expect(() => dragVertex(state, -1, { x: 0, y: 0 })).toThrow(RangeError);
  });

  it("drag state never leaks into the scene object", () => {
    const scene = loadFixture("k4_star.scene.json");
    const state = createViewState(scene);
    const xs = [...scene.layout.x];
    dragVertex(state, 0, { x: 123, y: 456 });
    expect(scene.layout.x).toEqual(xs);
    expect(state.x[0]).toBe(123);
  });
});
