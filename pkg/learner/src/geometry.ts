/**
 * 2-D point-robot geometry over axis-aligned rectangular obstacles,
 * matching the planner toolkit's semantics exactly: obstacles are closed
 * sets, edges are checked at interpolated configurations spaced at most
 * `resolution` apart.
 */

export type Rect = [number, number, number, number]; // xmin, ymin, xmax, ymax

export interface Env {
  bounds: Rect;
  obstacles: Rect[];
}

export function envFromJson(data: { bounds: number[]; obstacles: number[][] }): Env {
  return {
    bounds: data.bounds.slice(0, 4) as Rect,
    obstacles: data.obstacles.map((o) => o.slice(0, 4) as Rect),
  };
}

export function isPointFree(env: Env, x: number, y: number): boolean {
  const [bx0, by0, bx1, by1] = env.bounds;
  if (x < bx0 || x > bx1 || y < by0 || y > by1) return false;
  for (const [ox0, oy0, ox1, oy1] of env.obstacles) {
    if (ox0 <= x && x <= ox1 && oy0 <= y && y <= oy1) return false;
  }
  return true;
}

export function distance(ax: number, ay: number, bx: number, by: number): number {
  const dx = bx - ax;
  const dy = by - ay;
  return Math.sqrt(dx * dx + dy * dy);
}

export function isEdgeFree(
  env: Env,
  ax: number,
  ay: number,
  bx: number,
  by: number,
  resolution: number,
): boolean {
  const steps = Math.max(1, Math.ceil(distance(ax, ay, bx, by) / resolution));
  for (let i = 0; i <= steps; i++) {
    const t = i / steps;
    if (!isPointFree(env, ax + t * (bx - ax), ay + t * (by - ay))) return false;
  }
  return true;
}
