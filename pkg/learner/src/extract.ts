/**
 * Training-target extraction: label the bottleneck vertices of a dense
 * roadmap's shortest feasible path (those whose neighborhood free-edge
 * ratio falls below the threshold) and pair them with the conditioning
 * vector (start, goal, max-pooled occupancy grid).
 */

import { Env } from "./geometry.js";
import { Grid, maxPool, rasterize } from "./grid.js";
import {
  attachVertex,
  buildDenseGraph,
  freeEdgeRatio,
  shortestPath,
} from "./roadmap.js";

export interface ExtractParams {
  denseN: number;
  connectRadius: number;
  rCritical: number;
  threshold: number;
  resolution: number;
  gridSize: number;
  poolK: number;
}

export const DEFAULT_EXTRACT: ExtractParams = {
  denseN: 3000,
  connectRadius: 0.55,
  rCritical: 2.4,
  threshold: 0.4,
  resolution: 0.125,
  gridSize: 50,
  poolK: 5,
};

export interface TrainingExample {
  problemId: string;
  /** conditioning vector: start, goal, then the flattened pooled grid */
  condition: number[];
  /** one [x, y] row per bottleneck target */
  targets: number[][];
}

export function conditionVector(
  env: Env,
  start: [number, number],
  goal: [number, number],
  p: ExtractParams = DEFAULT_EXTRACT,
): { condition: number[]; pooled: Grid } {
  const pooled = maxPool(rasterize(env, p.gridSize, p.gridSize), p.poolK, p.poolK);
  const scale = env.bounds[2] - env.bounds[0];
  const condition = [
    (start[0] - env.bounds[0]) / scale,
    (start[1] - env.bounds[1]) / scale,
    (goal[0] - env.bounds[0]) / scale,
    (goal[1] - env.bounds[1]) / scale,
    ...Array.from(pooled.cells, (c) => c),
  ];
  return { condition, pooled };
}

export function extractTargets(
  env: Env,
  start: [number, number],
  goal: [number, number],
  p: ExtractParams = DEFAULT_EXTRACT,
): number[][] | null {
  const g = buildDenseGraph(env, p.denseN, p.connectRadius, p.resolution);
  const s = attachVertex(g, env, start[0], start[1], p.connectRadius, p.resolution);
  const t = attachVertex(g, env, goal[0], goal[1], p.connectRadius, p.resolution);
  const path = shortestPath(g, s, t);
  if (path === null) return null;
  const targets: number[][] = [];
  for (const v of path) {
    const ratio = freeEdgeRatio(g, env, g.xs[v], g.ys[v], v, p.rCritical, p.resolution);
    if (ratio !== null && ratio < p.threshold) targets.push([g.xs[v], g.ys[v]]);
  }
  return targets;
}

export function extractExample(
  problemId: string,
  env: Env,
  start: [number, number],
  goal: [number, number],
  p: ExtractParams = DEFAULT_EXTRACT,
): TrainingExample | null {
  const targets = extractTargets(env, start, goal, p);
  if (targets === null || targets.length === 0) return null;
  return { problemId, condition: conditionVector(env, start, goal, p).condition, targets };
}
