/**
 * Canvas 2D renderer: applies a draw list under the current pan/zoom
 * transform. All visual policy lives in the draw list; this file only
 * strokes and fills.
 */

import { Primitive } from "./drawlist.js";
import { sceneScale } from "./drawlist.js";
import { Transform, ViewState } from "./state.js";

const COLORS = {
  background: "#11151c",
  backbone: "#5c6570",
  backboneOutline: "#ffd166",
  bundle: "#4ea8de",
  bundleHighlight: "#ffd166",
  edge: "#c77dff",
  edgeHighlight: "#ff5d8f",
  vertex: "#e8edf2",
  vertexDrag: "#ff5d8f",
};

export function fitTransform(
  state: ViewState,
  width: number,
  height: number,
  margin = 40,
): Transform {
  const { x, y } = state;
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
  const spanX = Math.max(maxX - minX, 1e-9);
  const spanY = Math.max(maxY - minY, 1e-9);
  const k = Math.min((width - 2 * margin) / spanX, (height - 2 * margin) / spanY);
  return {
    k,
    tx: width / 2 - k * (minX + spanX / 2),
    ty: height / 2 - k * (minY + spanY / 2),
  };
}

export function renderDrawList(
  ctx: CanvasRenderingContext2D,
  state: ViewState,
  drawList: Primitive[],
  width: number,
  height: number,
): void {
  const { k, tx, ty } = state.transform;
  ctx.save();
  ctx.fillStyle = COLORS.background;
  ctx.fillRect(0, 0, width, height);
  ctx.translate(tx, ty);
  ctx.scale(k, k);
  const scale = sceneScale(state);
  const hairline = 1.2 / k;
  const vertexRadius = Math.max(0.003 * scale, 2.5 / k);
  for (const prim of drawList) {
    switch (prim.kind) {
      case "backbone": {
        ctx.globalAlpha = prim.opacity;
        ctx.strokeStyle = prim.highlighted ? COLORS.backboneOutline : COLORS.backbone;
        ctx.lineWidth = prim.highlighted ? 3 / k : hairline;
        ctx.beginPath();
        ctx.moveTo(prim.a.x, prim.a.y);
        ctx.lineTo(prim.b.x, prim.b.y);
        ctx.stroke();
        break;
      }
      case "bundle": {
        ctx.globalAlpha = prim.opacity;
        ctx.fillStyle = prim.highlighted ? COLORS.bundleHighlight : COLORS.bundle;
        ctx.beginPath();
        prim.outline.forEach((p, i) => (i ? ctx.lineTo(p.x, p.y) : ctx.moveTo(p.x, p.y)));
        ctx.closePath();
        ctx.fill();
        break;
      }
      case "edge": {
        ctx.globalAlpha = prim.opacity;
        ctx.strokeStyle = prim.highlighted ? COLORS.edgeHighlight : COLORS.edge;
        ctx.lineWidth = prim.highlighted ? 2.5 / k : hairline;
        ctx.beginPath();
        prim.samples.forEach((p, i) => (i ? ctx.lineTo(p.x, p.y) : ctx.moveTo(p.x, p.y)));
        ctx.stroke();
        break;
      }
      case "vertex": {
        ctx.globalAlpha = 1;
        ctx.fillStyle = prim.highlighted ? COLORS.vertexDrag : COLORS.vertex;
        ctx.beginPath();
        ctx.arc(prim.at.x, prim.at.y, prim.highlighted ? vertexRadius * 1.6 : vertexRadius, 0, Math.PI * 2);
        ctx.fill();
        break;
      }
    }
  }
  ctx.restore();
}
