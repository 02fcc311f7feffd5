/**
 * View state: the loaded scene plus everything the user can change.
 *
 * Scene data is frozen at load; interactions mutate only the working
 * position arrays, the display mode, hover/drag and the pan/zoom transform.
 */

import { Scene } from "./scene.js";

export const DISPLAY_MODES = [
  "bundles_only",
  "edges_only",
  "bundles_foreground",
  "edges_foreground",
] as const;

export type DisplayMode = (typeof DISPLAY_MODES)[number];

export type Highlight =
  | { kind: "bundle"; index: number; memberEdges: number[] }
  | { kind: "edge"; index: number; treeEdges: [number, number][] };

export interface Transform {
  k: number;
  tx: number;
  ty: number;
}

export interface ViewState {
  scene: Scene;
  /** Working copies; the only geometry interactions may change. */
  x: Float64Array;
  y: Float64Array;
  mode: DisplayMode;
  hover: Highlight | null;
  drag: { vertex: number } | null;
  transform: Transform;
  /** Bumped on any change that invalidates derived geometry. */
  revision: number;
}

export function createViewState(scene: Scene): ViewState {
  return {
    scene,
    x: Float64Array.from(scene.layout.x),
    y: Float64Array.from(scene.layout.y),
    mode: "edges_foreground",
    hover: null,
    drag: null,
    transform: { k: 1, tx: 0, ty: 0 },
    revision: 0,
  };
}

export function setMode(state: ViewState, mode: DisplayMode): void {
  state.mode = mode;
  state.revision++;
}

export function cycleMode(state: ViewState): DisplayMode {
  const i = DISPLAY_MODES.indexOf(state.mode);
  setMode(state, DISPLAY_MODES[(i + 1) % DISPLAY_MODES.length]);
  return state.mode;
}

/**
 * Move one vertex. Touches only the working positions — bundle membership
 * and segmentation come straight from the frozen scene and cannot change.
 */
export function dragVertex(state: ViewState, vertex: number, to: { x: number; y: number }): void {
  if (vertex < 0 || vertex >= state.scene.graph.n) {
    throw new RangeError(`vertex ${vertex} out of range`);
  }
  state.x[vertex] = to.x;
  state.y[vertex] = to.y;
  state.revision++;
}

export function resetPositions(state: ViewState): void {
  state.x.set(state.scene.layout.x);
  state.y.set(state.scene.layout.y);
  state.revision++;
}
