import assert from "node:assert/strict";
import { test } from "node:test";

import { toyProblem } from "../src/corpus.js";
import { envFromJson, isEdgeFree, isPointFree } from "../src/geometry.js";
import { gridFromJson, gridToJson, maxPool, rasterize } from "../src/grid.js";
import { Cvae, DEFAULT_CVAE } from "../src/cvae.js";
import { conditionVector, extractExample } from "../src/extract.js";
import { formatFloat, parseProposals, proposalsToText, sanitize } from "../src/proposals.js";
import { buildDenseGraph, freeEdgeRatio, halton, shortestPath } from "../src/roadmap.js";
import { Rng } from "../src/rng.js";

test("rng is deterministic per (seed, label) and labels separate streams", () => {
  const a = new Rng(7, "x");
  const b = new Rng(7, "x");
  const c = new Rng(7, "y");
  const seqA = Array.from({ length: 5 }, () => a.next());
  const seqB = Array.from({ length: 5 }, () => b.next());
  const seqC = Array.from({ length: 5 }, () => c.next());
  assert.deepEqual(seqA, seqB);
  assert.notDeepEqual(seqA, seqC);
});

test("gaussian draws have sane moments", () => {
  const rng = new Rng(3, "gauss");
  let sum = 0;
  let sq = 0;
  const n = 20000;
  for (let i = 0; i < n; i++) {
    const v = rng.gauss();
    sum += v;
    sq += v * v;
  }
  assert.ok(Math.abs(sum / n) < 0.03);
  assert.ok(Math.abs(sq / n - 1) < 0.05);
});

test("point collision uses closed obstacles inside bounds", () => {
  const env = envFromJson({ bounds: [0, 0, 10, 10], obstacles: [[2, 2, 4, 4]] });
  assert.ok(isPointFree(env, 1, 1));
  assert.ok(!isPointFree(env, 3, 3));
  assert.ok(!isPointFree(env, 2, 3)); // boundary counts
  assert.ok(!isPointFree(env, -1, 5)); // outside bounds
});

test("edge checking detects blocked segments", () => {
  const env = envFromJson({ bounds: [0, 0, 10, 10], obstacles: [[4, 4, 6, 6]] });
  assert.ok(!isEdgeFree(env, 1, 5, 9, 5, 0.25));
  assert.ok(isEdgeFree(env, 1, 1, 9, 1, 0.25));
  assert.ok(isEdgeFree(env, 5, 5, 5, 5, 0.25) === false); // inside the box
});

test("halton prefix matches radical-inverse values", () => {
  assert.deepEqual(
    [1, 2, 3, 4].map((i) => halton(i, 2)),
    [0.5, 0.25, 0.75, 0.125],
  );
  assert.deepEqual([1, 2, 3].map((i) => halton(i, 3)), [1 / 3, 2 / 3, 1 / 9]);
});

test("rasterize marks boundary-touching cells and pools by window max", () => {
  const env = envFromJson({ bounds: [0, 0, 1, 1], obstacles: [[0, 0.5, 0.5, 1]] });
  const grid = rasterize(env, 4, 4);
  for (let i = 0; i < 4; i++) {
    for (let j = 0; j < 4; j++) {
      const expected = i >= 1 && j <= 2 ? 1 : 0;
      assert.equal(grid.cells[i * 4 + j], expected, `cell ${i},${j}`);
    }
  }
  const pooled = maxPool(grid, 2, 2);
  assert.equal(pooled.width, 2);
  assert.deepEqual(Array.from(pooled.cells), [1, 1, 1, 1]);
});

test("grid json round trip", () => {
  const env = envFromJson({ bounds: [0, 0, 12, 12], obstacles: [[3, 0, 3.4, 9]] });
  const grid = rasterize(env, 50, 50);
  const again = gridFromJson(gridToJson(grid));
  assert.deepEqual(Array.from(again.cells), Array.from(grid.cells));
  assert.equal(again.cellSize, grid.cellSize);
});

test("dense graph finds the detour and rates bottlenecks low", () => {
  const p = toyProblem(0);
  const g = buildDenseGraph(p.env, 1500, 0.7, 0.125);
  // ratio in the passage interior is far below ratio in the open
  const inGap = freeEdgeRatio(g, p.env, p.gapCenter[0], p.gapCenter[1], -1, 2.4, 0.125);
  const open = freeEdgeRatio(g, p.env, 1.0, 1.0, -1, 2.4, 0.125);
  assert.ok(inGap !== null && open !== null);
  assert.ok(inGap < 0.4, `in-gap ratio ${inGap}`);
  assert.ok(open > 0.9, `open ratio ${open}`);
  const path = shortestPath(g, 0, g.n - 1);
  assert.ok(path === null || path.length >= 1);
});

test("extraction: condition is (start, goal, 10x10 grid) and targets are free", () => {
  const p = toyProblem(0);
  const ex = extractExample(p.id, p.env, p.start, p.goal);
  assert.ok(ex !== null);
  assert.equal(ex!.condition.length, 2 * 2 + 100);
  for (const [x, y] of ex!.targets) {
    assert.ok(isPointFree(p.env, x, y));
  }
});

test("toy corpus is deterministic and start/goal straddle the wall", () => {
  const a = toyProblem(5);
  const b = toyProblem(5);
  assert.deepEqual(a.env.obstacles, b.env.obstacles);
  assert.deepEqual(a.start, b.start);
  const wallX = a.gapCenter[0];
  assert.ok(a.start[0] < wallX && a.goal[0] > wallX);
});

test("proposal text round trips and floats avoid exponent notation", () => {
  assert.equal(formatFloat(6), "6.0");
  assert.equal(formatFloat(0.5), "0.5");
  assert.equal(sanitize(0.00003, 0, 12), 0.0);
  assert.equal(sanitize(-0.5, 0, 12), 0.0);
  assert.equal(sanitize(13.0, 0, 12), 12.0);
  const text = proposalsToText([
    { problemId: "p0001", proposer: "lego-global", dim: 2, samples: [[1.25, 3.5], [6, 0.1]] },
  ]);
  assert.ok(text.endsWith("\n"));
  const sections = parseProposals(text);
  assert.equal(sections.length, 1);
  assert.deepEqual(sections[0].samples, [[1.25, 3.5], [6, 0.1]]);
});

test("checkpoint round trip reproduces decoder outputs exactly", () => {
  const config = { ...DEFAULT_CVAE, hidden: 16, yDim: 6, epochs: 1 };
  const model = new Cvae(config, new Rng(1, "init"));
  const y = Float64Array.from({ length: 6 }, (_, i) => i / 6);
  const z = Float64Array.from([0.1, -0.2, 0.3]);
  const before = model.decode(z, y);
  const restored = Cvae.fromJson(JSON.parse(JSON.stringify(model.toJson())));
  const after = restored.decode(z, y);
  assert.deepEqual(Array.from(after), Array.from(before));
});

test("condition vector normalizes into the unit box", () => {
  const p = toyProblem(3);
  const { condition } = conditionVector(p.env, p.start, p.goal);
  for (const v of condition.slice(0, 4)) assert.ok(v >= 0 && v <= 1);
  for (const v of condition.slice(4)) assert.ok(v === 0 || v === 1);
});
