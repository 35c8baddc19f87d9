/** Pure complex-plane geometry: view fitting, world->screen mapping, and the
 * coincidence clustering that drives multiplicity badges. */

export type Point = [number, number]; // [re, im]

export interface Bounds {
  xmin: number;
  xmax: number;
  ymin: number;
  ymax: number;
}

/** Equal-aspect bounds containing all points with a relative margin. */
export function fitBounds(points: Point[], margin = 0.1, minSpan = 2): Bounds {
  let xmin = Infinity, xmax = -Infinity, ymin = Infinity, ymax = -Infinity;
  for (const [x, y] of points) {
    xmin = Math.min(xmin, x); xmax = Math.max(xmax, x);
    ymin = Math.min(ymin, y); ymax = Math.max(ymax, y);
  }
  if (!points.length || !isFinite(xmin)) {
    xmin = -1; xmax = 1; ymin = -1; ymax = 1;
  }
  const cx = (xmin + xmax) / 2;
  const cy = (ymin + ymax) / 2;
  let half = Math.max(xmax - xmin, ymax - ymin, minSpan) / 2;
  half *= 1 + margin;
  return { xmin: cx - half, xmax: cx + half, ymin: cy - half, ymax: cy + half };
}

export interface Transform {
  bounds: Bounds;
  width: number;
  height: number;
}

export function toScreen(tr: Transform, p: Point): Point {
  const sx = tr.width / (tr.bounds.xmax - tr.bounds.xmin);
  const sy = tr.height / (tr.bounds.ymax - tr.bounds.ymin);
  return [(p[0] - tr.bounds.xmin) * sx, tr.height - (p[1] - tr.bounds.ymin) * sy];
}

export function toWorld(tr: Transform, screen: Point): Point {
  const sx = (tr.bounds.xmax - tr.bounds.xmin) / tr.width;
  const sy = (tr.bounds.ymax - tr.bounds.ymin) / tr.height;
  return [tr.bounds.xmin + screen[0] * sx, tr.bounds.ymin + (tr.height - screen[1]) * sy];
}

function gap(a: Point, b: Point): number {
  return Math.hypot(a[0] - b[0], a[1] - b[1]);
}

/** Connected components of the graph "pairwise gap < eps"; components of two
 * or more points are rendered with a multiplicity badge. */
export function multiplicityClusters(points: Point[], eps = 1e-6): number[][] {
  const parent = points.map((_, i) => i);
  const find = (i: number): number => (parent[i] === i ? i : (parent[i] = find(parent[i])));
  for (let i = 0; i < points.length; i++) {
    for (let j = i + 1; j < points.length; j++) {
      if (gap(points[i], points[j]) < eps) parent[find(i)] = find(j);
    }
  }
  const groups = new Map<number, number[]>();
  points.forEach((_, i) => {
    const root = find(i);
    if (!groups.has(root)) groups.set(root, []);
    groups.get(root)!.push(i);
  });
  return [...groups.values()].filter((g) => g.length >= 2);
}
