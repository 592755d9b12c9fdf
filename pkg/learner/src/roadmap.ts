/**
 * Dense-roadmap machinery for target extraction: Halton sampling over the
 * workspace, radius-connected graph, Dijkstra shortest path, and the
 * free-edge-ratio measure that labels bottleneck vertices.
 */

import { Env, distance, isEdgeFree, isPointFree } from "./geometry.js";

const PRIMES = [2, 3];

export function halton(index: number, base: number): number {
  let f = 1;
  let r = 0;
  let i = index;
  while (i > 0) {
    f /= base;
    r += f * (i % base);
    i = Math.floor(i / base);
  }
  return r;
}

export interface DenseGraph {
  xs: Float64Array;
  ys: Float64Array;
  n: number;
  adj: number[][];
}

export function buildDenseGraph(
  env: Env,
  n: number,
  connectRadius: number,
  resolution: number,
): DenseGraph {
  const [bx0, by0, bx1, by1] = env.bounds;
  const xs = new Float64Array(n);
  const ys = new Float64Array(n);
  let count = 0;
  let index = 1;
  const maxDraws = 100 * n;
  while (count < n && index <= maxDraws) {
    const x = bx0 + halton(index, PRIMES[0]) * (bx1 - bx0);
    const y = by0 + halton(index, PRIMES[1]) * (by1 - by0);
    index++;
    if (isPointFree(env, x, y)) {
      xs[count] = x;
      ys[count] = y;
      count++;
    }
  }
  if (count < n) throw new Error(`only ${count}/${n} free vertices found`);
  const adj: number[][] = Array.from({ length: n }, () => []);
  const r2 = connectRadius * connectRadius;
  for (let u = 0; u < n; u++) {
    for (let v = u + 1; v < n; v++) {
      const dx = xs[u] - xs[v];
      const dy = ys[u] - ys[v];
      if (dx * dx + dy * dy < r2 && isEdgeFree(env, xs[u], ys[u], xs[v], ys[v], resolution)) {
        adj[u].push(v);
        adj[v].push(u);
      }
    }
  }
  return { xs, ys, n, adj };
}

/** Append a vertex connected to everything strictly within the radius. */
export function attachVertex(
  g: DenseGraph,
  env: Env,
  x: number,
  y: number,
  connectRadius: number,
  resolution: number,
): number {
  const id = g.n;
  const xs = new Float64Array(g.n + 1);
  const ys = new Float64Array(g.n + 1);
  xs.set(g.xs.subarray(0, g.n));
  ys.set(g.ys.subarray(0, g.n));
  xs[id] = x;
  ys[id] = y;
  g.xs = xs;
  g.ys = ys;
  g.adj.push([]);
  g.n += 1;
  for (let v = 0; v < id; v++) {
    if (
      distance(x, y, g.xs[v], g.ys[v]) < connectRadius &&
      isEdgeFree(env, x, y, g.xs[v], g.ys[v], resolution)
    ) {
      g.adj[id].push(v);
      g.adj[v].push(id);
    }
  }
  return id;
}

export function shortestPath(g: DenseGraph, src: number, dst: number): number[] | null {
  const dist = new Float64Array(g.n).fill(Infinity);
  const prev = new Int32Array(g.n).fill(-1);
  const done = new Uint8Array(g.n);
  dist[src] = 0;
  // binary heap of [distance, vertex]
  const heap: [number, number][] = [[0, src]];
  const push = (item: [number, number]) => {
    heap.push(item);
    let i = heap.length - 1;
    while (i > 0) {
      const p = (i - 1) >> 1;
      if (heap[p][0] <= heap[i][0]) break;
      [heap[p], heap[i]] = [heap[i], heap[p]];
      i = p;
    }
  };
  const pop = (): [number, number] => {
    const top = heap[0];
    const last = heap.pop()!;
    if (heap.length) {
      heap[0] = last;
      let i = 0;
      for (;;) {
        const l = 2 * i + 1;
        const r = l + 1;
        let m = i;
        if (l < heap.length && heap[l][0] < heap[m][0]) m = l;
        if (r < heap.length && heap[r][0] < heap[m][0]) m = r;
        if (m === i) break;
        [heap[m], heap[i]] = [heap[i], heap[m]];
        i = m;
      }
    }
    return top;
  };
  while (heap.length) {
    const [d, u] = pop();
    if (done[u]) continue;
    done[u] = 1;
    if (u === dst) break;
    for (const v of g.adj[u]) {
      if (done[v]) continue;
      const nd = d + distance(g.xs[u], g.ys[u], g.xs[v], g.ys[v]);
      if (nd < dist[v]) {
        dist[v] = nd;
        prev[v] = u;
        push([nd, v]);
      }
    }
  }
  if (!Number.isFinite(dist[dst])) return null;
  const path = [dst];
  while (path[path.length - 1] !== src) path.push(prev[path[path.length - 1]]);
  path.reverse();
  return path;
}

/**
 * Fraction of graph vertices strictly within rCritical of (x, y) that a
 * collision-free straight edge can reach; null when no vertex is in range.
 */
export function freeEdgeRatio(
  g: DenseGraph,
  env: Env,
  x: number,
  y: number,
  self: number,
  rCritical: number,
  resolution: number,
): number | null {
  let free = 0;
  let total = 0;
  for (let v = 0; v < g.n; v++) {
    if (v === self) continue;
    if (distance(x, y, g.xs[v], g.ys[v]) >= rCritical) continue;
    total++;
    if (isEdgeFree(env, x, y, g.xs[v], g.ys[v], resolution)) free++;
  }
  return total === 0 ? null : free / total;
}
