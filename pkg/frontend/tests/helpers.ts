import { readFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";

import { parseScene, Scene } from "../src/scene.js";

const here = dirname(fileURLToPath(import.meta.url));

export function loadFixture(name: string): Scene {
  const text = readFileSync(join(here, "..", "fixtures", name), "utf-8");
  return parseScene(JSON.parse(text));
}

export function loadFixtureRaw(name: string): unknown {
  return JSON.parse(readFileSync(join(here, "..", "fixtures", name), "utf-8"));
}

/** Tiny deterministic RNG for scripted interaction sequences. */
export function lcg(seed: number): () => number {
  let s = seed >>> 0;
  return () => {
    s = (Math.imul(s, 1664525) + 1013904223) >>> 0;
    return s / 2 ** 32;
  };
}
