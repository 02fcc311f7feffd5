/** Small 2D helpers shared by draw-list building and picking. */

export interface Vec {
  x: number;
  y: number;
}

export interface BBox {
  minX: number;
  minY: number;
  maxX: number;
  maxY: number;
}

export function bboxOf(points: Vec[], pad = 0): BBox {
  let minX = Infinity;
  let minY = Infinity;
  let maxX = -Infinity;
  let maxY = -Infinity;
  for (const p of points) {
    if (p.x < minX) minX = p.x;
    if (p.y < minY) minY = p.y;
    if (p.x > maxX) maxX = p.x;
    if (p.y > maxY) maxY = p.y;
  }
  return { minX: minX - pad, minY: minY - pad, maxX: maxX + pad, maxY: maxY + pad };
}

export function distPointSegment(p: Vec, a: Vec, b: Vec): number {
  const dx = b.x - a.x;
  const dy = b.y - a.y;
  const len2 = dx * dx + dy * dy;
  let t = 0;
  if (len2 > 0) {
    t = ((p.x - a.x) * dx + (p.y - a.y) * dy) / len2;
    t = Math.max(0, Math.min(1, t));
  }
  const qx = a.x + t * dx;
  const qy = a.y + t * dy;
  return Math.hypot(p.x - qx, p.y - qy);
}

export function distPointPolyline(p: Vec, pts: Vec[]): number {
  let best = Infinity;
  for (let i = 0; i + 1 < pts.length; i++) {
    const d = distPointSegment(p, pts[i], pts[i + 1]);
    if (d < best) best = d;
  }
  return best;
}

export function pointInPolygon(p: Vec, poly: Vec[]): boolean {
  let inside = false;
  for (let i = 0, j = poly.length - 1; i < poly.length; j = i++) {
    const a = poly[i];
    const b = poly[j];
    const crosses =
      a.y > p.y !== b.y > p.y &&
      p.x < ((b.x - a.x) * (p.y - a.y)) / (b.y - a.y) + a.x;
    if (crosses) inside = !inside;
  }
  return inside;
}

/** 0 inside the polygon, otherwise distance to its boundary. */
export function distPointPolygon(p: Vec, poly: Vec[]): number {
  if (pointInPolygon(p, poly)) return 0;
  let best = Infinity;
  for (let i = 0, j = poly.length - 1; i < poly.length; j = i++) {
    const d = distPointSegment(p, poly[j], poly[i]);
    if (d < best) best = d;
  }
  return best;
}

/**
 * Centripetal-flavored Catmull-Rom sampling through the control points
 * (endpoints duplicated for the boundary tangents). Deterministic:
 * `samplesPerSpan` points per control-point span, endpoints included once.
 */
export function catmullRom(points: Vec[], samplesPerSpan = 8): Vec[] {
  if (points.length < 3) return points.slice();
  const out: Vec[] = [points[0]];
  const P = (i: number) => points[Math.max(0, Math.min(points.length - 1, i))];
  for (let i = 0; i + 1 < points.length; i++) {
    const p0 = P(i - 1);
    const p1 = P(i);
    const p2 = P(i + 1);
    const p3 = P(i + 2);
    for (let s = 1; s <= samplesPerSpan; s++) {
      const t = s / samplesPerSpan;
      const t2 = t * t;
      const t3 = t2 * t;
      out.push({
        x:
          0.5 *
          (2 * p1.x +
            (p2.x - p0.x) * t +
            (2 * p0.x - 5 * p1.x + 4 * p2.x - p3.x) * t2 +
            (3 * p1.x - p0.x - 3 * p2.x + p3.x) * t3),
        y:
          0.5 *
          (2 * p1.y +
            (p2.y - p0.y) * t +
            (2 * p0.y - 5 * p1.y + 4 * p2.y - p3.y) * t2 +
            (3 * p1.y - p0.y - 3 * p2.y + p3.y) * t3),
      });
    }
  }
  return out;
}

/**
 * Tapered quad outline for a bundle: full width along the middle, narrowing
 * to `taperScale` of it over the terminal `taperSpan` fraction of length.
 */
export function taperedQuad(
  a: Vec,
  b: Vec,
  width: number,
  taperSpan = 0.15,
  taperScale = 0.3,
): Vec[] {
  const dx = b.x - a.x;
  const dy = b.y - a.y;
  const len = Math.hypot(dx, dy) || 1e-12;
  const nx = -dy / len;
  const ny = dx / len;
  const hw = width / 2;
  const he = hw * taperScale;
  const at = (t: number): Vec => ({ x: a.x + dx * t, y: a.y + dy * t });
  const off = (p: Vec, h: number): Vec => ({ x: p.x + nx * h, y: p.y + ny * h });
  const p0 = at(0);
  const p1 = at(taperSpan);
  const p2 = at(1 - taperSpan);
  const p3 = at(1);
  return [
    off(p0, he),
    off(p1, hw),
    off(p2, hw),
    off(p3, he),
    off(p3, -he),
    off(p2, -hw),
    off(p1, -hw),
    off(p0, -he),
  ];
}
