/**
 * Browser wiring: scene loading (file picker or ?scene=URL), pointer
 * interaction (hover queries, vertex dragging, pan/zoom) and keyboard
 * shortcuts. Everything testable lives in the other modules; this file is
 * the only one that touches the DOM.
 *
 * Keys: m cycles the four display modes, 1-4 select one directly,
 * f fits the view, r resets dragged vertices.
 */

import { DrawCache } from "./drawcache.js";
import { hoverQuery, PickIndex, PICK_TOLERANCE_PX } from "./picking.js";
import { fitTransform, renderDrawList } from "./render.js";
import { parseScene, SceneFormatError, topologyDigest } from "./scene.js";
import {
  createViewState,
  cycleMode,
  DISPLAY_MODES,
  dragVertex,
  resetPositions,
  setMode,
  ViewState,
} from "./state.js";

const canvas = document.getElementById("view") as HTMLCanvasElement;
const ctx = canvas.getContext("2d")!;
const banner = document.getElementById("banner")!;
const status = document.getElementById("status")!;
const filePicker = document.getElementById("file") as HTMLInputElement;

let state: ViewState | null = null;
let cache: DrawCache | null = null;
let pickIndex: PickIndex | null = null;
let pickRevision = -1;
let loadedDigest = "";

function showError(message: string): void {
  state = null;
  cache = null;
  pickIndex = null;
  banner.textContent = message;
  banner.style.display = "block";
  ctx.clearRect(0, 0, canvas.width, canvas.height);
}

function loadSceneText(text: string, name: string): void {
  try {
    const scene = parseScene(JSON.parse(text));
    state = createViewState(scene);
    cache = new DrawCache(state);
    pickIndex = null;
    pickRevision = -1;
    loadedDigest = topologyDigest(scene);
    state.transform = fitTransform(state, canvas.width, canvas.height);
    banner.style.display = "none";
    const meta = scene.meta;
    status.textContent =
      `${name} — n=${scene.graph.n}, backbone=${scene.graph.backbone.length}, ` +
      `remainder=${scene.graph.remainder.length}, bundles=${scene.bundles.sizes.length} ` +
      `(tree=${meta.tree_kind}, layout=${scene.layout.kind}) — mode: ${state.mode}`;
    frame();
  } catch (err) {
    if (err instanceof SceneFormatError || err instanceof SyntaxError) {
      showError(`Not a valid scene file: ${err.message}`);
    } else {
      throw err;
    }
  }
}

function frame(): void {
  if (!state || !cache) return;
  renderDrawList(ctx, state, cache.list(), canvas.width, canvas.height);
}

function freshPickIndex(): PickIndex | null {
  if (!state || !cache) return null;
  if (!pickIndex || pickRevision !== state.revision) {
    pickIndex = new PickIndex(cache.list());
    pickRevision = state.revision;
  }
  return pickIndex;
}

function toWorld(ev: MouseEvent): { x: number; y: number } {
  const rect = canvas.getBoundingClientRect();
  const px = ev.clientX - rect.left;
  const py = ev.clientY - rect.top;
  const { k, tx, ty } = state!.transform;
  return { x: (px - tx) / k, y: (py - ty) / k };
}

function nearestVertex(p: { x: number; y: number }, radius: number): number | null {
  if (!state) return null;
  let best = -1;
  let bestD = radius;
  for (let v = 0; v < state.scene.graph.n; v++) {
    const d = Math.hypot(state.x[v] - p.x, state.y[v] - p.y);
    if (d < bestD) {
      best = v;
      bestD = d;
    }
  }
  return best >= 0 ? best : null;
}

function describeHover(): string {
  if (!state) return "";
  const h = state.hover;
  const labels = state.scene.graph.labels;
  const edgeName = (i: number): string => {
    const [u, v] = state!.scene.graph.remainder[i];
    const lu = labels ? labels[u] : String(u);
    const lv = labels ? labels[v] : String(v);
    return `${lu}–${lv}`;
  };
  if (!h) return "";
  if (h.kind === "bundle") {
    const [u, v] = state.scene.bundles.tree_edges[h.index];
    return ` | bundle on ${u}–${v} (${h.memberEdges.length} edges: ${h.memberEdges
      .map(edgeName)
      .join(", ")})`;
  }
  return ` | edge ${edgeName(h.index)} over ${h.treeEdges.length} backbone edges`;
}

function updateStatus(): void {
  if (!state) return;
  const base = status.textContent?.split(" — mode:")[0] ?? "";
  status.textContent = `${base} — mode: ${state.mode}${describeHover()}`;
}

filePicker.addEventListener("change", () => {
  const f = filePicker.files?.[0];
  if (!f) return;
  f.text().then((text) => loadSceneText(text, f.name));
});

let panning = false;
let panStart = { x: 0, y: 0, tx: 0, ty: 0 };

canvas.addEventListener("mousedown", (ev) => {
  if (!state) return;
  const world = toWorld(ev);
  const v = nearestVertex(world, 10 / state.transform.k);
  if (v !== null) {
    state.drag = { vertex: v };
    state.revision++;
  } else {
    panning = true;
    panStart = { x: ev.clientX, y: ev.clientY, tx: state.transform.tx, ty: state.transform.ty };
  }
});

canvas.addEventListener("mousemove", (ev) => {
  if (!state || !cache) return;
  if (state.drag) {
    const v = state.drag.vertex;
    dragVertex(state, v, toWorld(ev));
    cache.onVertexMoved(v);
    // drags never touch topology; cheap to assert while developing
    if (topologyDigest(state.scene) !== loadedDigest) {
      showError("internal error: topology changed during drag");
      return;
    }
    frame();
    return;
  }
  if (panning) {
    state.transform.tx = panStart.tx + (ev.clientX - panStart.x);
    state.transform.ty = panStart.ty + (ev.clientY - panStart.y);
    frame();
    return;
  }
  const index = freshPickIndex();
  if (!index) return;
  const hover = hoverQuery(state, index, toWorld(ev), PICK_TOLERANCE_PX / state.transform.k);
  const changed = JSON.stringify(hover) !== JSON.stringify(state.hover);
  if (changed) {
    state.hover = hover;
    state.revision++;
    frame();
    updateStatus();
  }
});

window.addEventListener("mouseup", () => {
  if (!state) return;
  if (state.drag) {
    state.drag = null;
    state.revision++;
    frame();
  }
  panning = false;
});

canvas.addEventListener("wheel", (ev) => {
  if (!state) return;
  ev.preventDefault();
  const factor = ev.deltaY < 0 ? 1.15 : 1 / 1.15;
  const rect = canvas.getBoundingClientRect();
  const px = ev.clientX - rect.left;
  const py = ev.clientY - rect.top;
  const t = state.transform;
  t.tx = px - factor * (px - t.tx);
  t.ty = py - factor * (py - t.ty);
  t.k *= factor;
  frame();
});

window.addEventListener("keydown", (ev) => {
  if (!state) return;
  if (ev.key === "m") {
    cycleMode(state);
  } else if (ev.key >= "1" && ev.key <= "4") {
    setMode(state, DISPLAY_MODES[Number(ev.key) - 1]);
  } else if (ev.key === "f") {
    state.transform = fitTransform(state, canvas.width, canvas.height);
    state.revision++;
  } else if (ev.key === "r") {
    resetPositions(state);
  } else {
    return;
  }
  frame();
  updateStatus();
});

function resize(): void {
  canvas.width = canvas.clientWidth;
  canvas.height = canvas.clientHeight;
  frame();
}
window.addEventListener("resize", resize);
resize();

const params = new URLSearchParams(window.location.search);
const sceneUrl = params.get("scene");
if (sceneUrl) {
  fetch(sceneUrl)
    .then((r) => {
      if (!r.ok) throw new SceneFormatError(`HTTP ${r.status} for ${sceneUrl}`);
      return r.text();
    })
    .then((text) => loadSceneText(text, sceneUrl))
    .catch((err) => showError(String(err)));
}
