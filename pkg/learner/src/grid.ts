/**
 * Occupancy grids in the shared exchange format: row-major 0/1 cells with
 * row 0 covering the minimum-y band. Rasterization uses closed-rectangle
 * intersection, identical to the planner side, so grids round-trip
 * bit-exactly between the two components.
 */

import { Env } from "./geometry.js";

export interface Grid {
  width: number;
  height: number;
  origin: [number, number];
  cellSize: number;
  cells: Uint8Array; // row-major, height x width
}

export function rasterize(env: Env, width: number, height: number): Grid {
  const [bx0, by0, bx1, by1] = env.bounds;
  const cw = (bx1 - bx0) / width;
  const ch = (by1 - by0) / height;
  if (Math.abs(cw - ch) > 1e-9 * Math.max(Math.abs(cw), Math.abs(ch))) {
    throw new Error(`non-square cells: ${cw} vs ${ch}`);
  }
  const cells = new Uint8Array(width * height);
  for (const [ox0, oy0, ox1, oy1] of env.obstacles) {
    for (let i = 0; i < height; i++) {
      const cy0 = by0 + i * ch;
      const cy1 = cy0 + ch;
      if (oy0 > cy1 || oy1 < cy0) continue;
      for (let j = 0; j < width; j++) {
        const cx0 = bx0 + j * cw;
        const cx1 = cx0 + cw;
        if (ox0 <= cx1 && ox1 >= cx0) cells[i * width + j] = 1;
      }
    }
  }
  return { width, height, origin: [bx0, by0], cellSize: cw, cells };
}

/** Max over non-overlapping k x k windows; requires k === stride. */
export function maxPool(grid: Grid, k: number, stride: number): Grid {
  if (k !== stride) throw new Error(`only non-overlapping windows: k=${k} stride=${stride}`);
  if (grid.width % stride || grid.height % stride) {
    throw new Error(`grid ${grid.width}x${grid.height} not divisible by ${stride}`);
  }
  const w = grid.width / stride;
  const h = grid.height / stride;
  const out = new Uint8Array(w * h);
  for (let i = 0; i < h; i++) {
    for (let j = 0; j < w; j++) {
      let v = 0;
      for (let di = 0; di < k && !v; di++) {
        for (let dj = 0; dj < k; dj++) {
          if (grid.cells[(i * stride + di) * grid.width + (j * stride + dj)]) {
            v = 1;
            break;
          }
        }
      }
      out[i * w + j] = v;
    }
  }
  return {
    width: w,
    height: h,
    origin: grid.origin,
    cellSize: grid.cellSize * stride,
    cells: out,
  };
}

export function gridToJson(grid: Grid): string {
  // key order and compact float forms match the planner's writer
  const obj = {
    width: grid.width,
    height: grid.height,
    origin: grid.origin,
    cell_size: grid.cellSize,
    cells: Array.from(grid.cells),
  };
  return JSON.stringify(obj);
}

export function gridFromJson(text: string): Grid {
  const data = JSON.parse(text);
  const cells = Uint8Array.from(data.cells as number[]);
  if (cells.length !== data.width * data.height) {
    throw new Error("cells length mismatch");
  }
  return {
    width: data.width,
    height: data.height,
    origin: (data.origin ?? [0, 0]) as [number, number],
    cellSize: data.cell_size ?? 1,
    cells,
  };
}
