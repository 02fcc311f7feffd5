/**
 * Scene file model and loading.
 *
 * A scene is the single JSON document produced by `lsqt build`. The viewer
 * treats everything in it as read-only for the whole session: vertex drags
 * only ever touch the working position copies in the view state, never the
 * scene itself, so the bundles and segmentation blocks stay bit-identical
 * no matter what the user does.
 */

export interface GraphBlock {
  n: number;
  labels: string[] | null;
  backbone: [number, number][];
  remainder: [number, number][];
}

export interface TreeBlock {
  root: number;
  roots: number[];
  parent: number[];
}

export interface SegmentationBlock {
  paths: number[][];
}

export interface BundlesBlock {
  tree_edges: [number, number][];
  members: number[][];
  sizes: number[];
}

export interface LayoutBlock {
  kind: string;
  x: number[];
  y: number[];
  params: Record<string, unknown>;
}

export interface MetaBlock {
  dataset: string;
  tool: string;
  version: string;
  seed: number;
  tree_kind: string;
}

export interface Scene {
  graph: GraphBlock;
  tree: TreeBlock;
  segmentation: SegmentationBlock;
  bundles: BundlesBlock;
  layout: LayoutBlock;
  meta: MetaBlock;
}

export class SceneFormatError extends Error {}

function fail(msg: string): never {
  throw new SceneFormatError(msg);
}

function isPair(row: unknown): row is [number, number] {
  return (
    Array.isArray(row) &&
    row.length === 2 &&
    Number.isInteger(row[0]) &&
    Number.isInteger(row[1])
  );
}

/**
 * Validate raw JSON into a Scene. Throws SceneFormatError on any structural
 * problem so the caller can show an error banner instead of a partial
 * render.
 */
export function parseScene(raw: unknown): Scene {
  if (typeof raw !== "object" || raw === null) fail("scene is not an object");
  const obj = raw as Record<string, unknown>;
  for (const block of ["graph", "tree", "segmentation", "bundles", "layout", "meta"]) {
    if (typeof obj[block] !== "object" || obj[block] === null) {
      fail(`missing block "${block}"`);
    }
  }
  const graph = obj.graph as GraphBlock;
  const n = graph.n;
  if (!Number.isInteger(n) || n < 1) fail(`graph.n is not a positive integer`);
  if (graph.labels !== null && (!Array.isArray(graph.labels) || graph.labels.length !== n)) {
    fail("graph.labels must be null or one label per vertex");
  }
  const checkEdges = (name: string, rows: unknown): [number, number][] => {
    if (!Array.isArray(rows)) fail(`graph.${name} is not an array`);
    for (const row of rows as unknown[]) {
      if (!isPair(row)) fail(`graph.${name} contains a non-pair`);
      const [u, v] = row;
      if (u < 0 || v < 0 || u >= n || v >= n) fail(`graph.${name} id out of range`);
      if (u >= v) fail(`graph.${name} edge not canonical`);
    }
    return rows as [number, number][];
  };
  const backbone = checkEdges("backbone", graph.backbone);
  const remainder = checkEdges("remainder", graph.remainder);

  const tree = obj.tree as TreeBlock;
  if (!Array.isArray(tree.parent) || tree.parent.length !== n) {
    fail("tree.parent must have one entry per vertex");
  }
  if (!Array.isArray(tree.roots) || !tree.roots.includes(tree.root)) {
    fail("tree.root must be listed in tree.roots");
  }

  const seg = obj.segmentation as SegmentationBlock;
  if (!Array.isArray(seg.paths) || seg.paths.length !== remainder.length) {
    fail("segmentation.paths must align with graph.remainder");
  }
  const backboneSet = new Set(backbone.map(([u, v]) => u * n + v));
  seg.paths.forEach((path, i) => {
    if (!Array.isArray(path) || path.length < 3) fail(`path ${i} too short`);
    const [u, v] = remainder[i];
    if (path[0] !== u || path[path.length - 1] !== v) {
      fail(`path ${i} does not connect its edge endpoints`);
    }
    for (let j = 0; j + 1 < path.length; j++) {
      const a = Math.min(path[j], path[j + 1]);
      const b = Math.max(path[j], path[j + 1]);
      if (!backboneSet.has(a * n + b)) fail(`path ${i} leaves the backbone`);
    }
  });

  const bundles = obj.bundles as BundlesBlock;
  if (
    !Array.isArray(bundles.tree_edges) ||
    !Array.isArray(bundles.members) ||
    !Array.isArray(bundles.sizes) ||
    bundles.tree_edges.length !== bundles.members.length ||
    bundles.tree_edges.length !== bundles.sizes.length
  ) {
    fail("bundle arrays misaligned");
  }
  bundles.tree_edges.forEach((t, i) => {
    if (!isPair(t) || !backboneSet.has(t[0] * n + t[1])) {
      fail(`bundle ${i} is not on a backbone edge`);
    }
    if (bundles.sizes[i] !== bundles.members[i].length || bundles.sizes[i] < 2) {
      fail(`bundle ${i} size mismatch`);
    }
    for (const m of bundles.members[i]) {
      if (!Number.isInteger(m) || m < 0 || m >= remainder.length) {
        fail(`bundle ${i} member out of range`);
      }
    }
  });

  const layout = obj.layout as LayoutBlock;
  if (
    !Array.isArray(layout.x) ||
    !Array.isArray(layout.y) ||
    layout.x.length !== n ||
    layout.y.length !== n
  ) {
    fail("layout arrays must have one position per vertex");
  }
  for (let i = 0; i < n; i++) {
    if (!Number.isFinite(layout.x[i]) || !Number.isFinite(layout.y[i])) {
      fail(`non-finite position for vertex ${i}`);
    }
  }
  return deepFreeze(obj as unknown as Scene);
}

function deepFreeze<T>(value: T): T {
  if (value !== null && typeof value === "object") {
    for (const key of Object.keys(value as object)) {
      deepFreeze((value as Record<string, unknown>)[key]);
    }
    Object.freeze(value);
  }
  return value;
}

/** Stable stringify (sorted object keys) for topology digests. */
export function stableStringify(value: unknown): string {
  if (value === null || typeof value !== "object") return JSON.stringify(value);
  if (Array.isArray(value)) {
    return "[" + value.map(stableStringify).join(",") + "]";
  }
  const keys = Object.keys(value as object).sort();
  const parts = keys.map(
    (k) => JSON.stringify(k) + ":" + stableStringify((value as Record<string, unknown>)[k]),
  );
  return "{" + parts.join(",") + "}";
}

/**
 * Digest of the interaction-immutable blocks. Dragging, hovering and mode
 * switching must never change this value.
 */
export function topologyDigest(scene: Scene): string {
  const blob = stableStringify({
    bundles: scene.bundles,
    segmentation: scene.segmentation,
  });
  // FNV-1a, 64-bit via two 32-bit lanes; plenty for an equality check
  let h1 = 0x811c9dc5;
  let h2 = 0xcbf29ce4;
  for (let i = 0; i < blob.length; i++) {
    const c = blob.charCodeAt(i);
    h1 = Math.imul(h1 ^ c, 0x01000193) >>> 0;
    h2 = Math.imul(h2 ^ ((c + i) & 0xffff), 0x01000193) >>> 0;
  }
  return h1.toString(16).padStart(8, "0") + h2.toString(16).padStart(8, "0");
}
