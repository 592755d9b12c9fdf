/**
 * Toy training corpus: single-wall scenes with one extruded narrow passage
 * at a seed-determined location, plus a start/goal pair on opposite sides.
 * The passage center is recorded so evaluation can measure whether decoder
 * samples land in the right region.
 */

import { Env, Rect, isPointFree } from "./geometry.js";
import { Rng } from "./rng.js";

export interface ToyProblem {
  id: string;
  env: Env;
  start: [number, number];
  goal: [number, number];
  gapCenter: [number, number];
}

export interface CorpusParams {
  workspace: number;
  wallThickness: number;
  passageWidth: [number, number];
  extrusionDepth: number;
}

export const DEFAULT_CORPUS: CorpusParams = {
  workspace: 12,
  wallThickness: 0.25,
  passageWidth: [0.3, 0.45],
  extrusionDepth: 0.9,
};

export function toyProblem(seed: number, p: CorpusParams = DEFAULT_CORPUS): ToyProblem {
  const rng = new Rng(seed, "toy-corpus");
  const w = p.workspace;
  const t = p.wallThickness;
  const e = p.extrusionDepth;
  const cx = rng.uniform(3.2, w - 3.2);
  const width = rng.uniform(p.passageWidth[0], p.passageWidth[1]);
  const yPad = t + 0.4;
  const gLo = rng.uniform(yPad, w - yPad - width);
  const gHi = gLo + width;
  const obstacles: Rect[] = [
    [cx - t / 2, 0, cx + t / 2, gLo],
    [cx - t / 2, gHi, cx + t / 2, w],
    [cx - t / 2 - e, gLo - t, cx + t / 2 + e, gLo],
    [cx - t / 2 - e, gHi, cx + t / 2 + e, gHi + t],
  ];
  const env: Env = { bounds: [0, 0, w, w], obstacles };
  const draw = (lo: number, hi: number): [number, number] => {
    for (;;) {
      const x = rng.uniform(lo, hi);
      const y = rng.uniform(0.3, w - 0.3);
      if (isPointFree(env, x, y)) return [x, y];
    }
  };
  const start = draw(0.3, cx - t / 2 - e - 0.3);
  const goal = draw(cx + t / 2 + e + 0.3, w - 0.3);
  return {
    id: `toy${String(seed).padStart(4, "0")}`,
    env,
    start,
    goal,
    gapCenter: [cx, (gLo + gHi) / 2],
  };
}
