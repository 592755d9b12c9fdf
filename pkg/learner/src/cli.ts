/**
 * Learner command line.
 *
 *   extract --corpus-seed 0 --n 200 --out dataset.json [--dense-n 1200]
 *   train   --dataset dataset.json --out model.json [--epochs 120]
 *           [--hidden 512] [--latent 3] [--lr 1e-3] [--seed 0]
 *   sample  --model model.json --problem-seed 5 --n 10 --seed 1
 *           --out proposals.txt
 *
 * The toy corpus is generated on the fly from seeds so extract/train/
 * sample stay reproducible end to end; sample can alternatively condition
 * on an explicit environment file plus start/goal.
 */

import * as fs from "node:fs";
import * as process from "node:process";

import { DEFAULT_CORPUS, toyProblem } from "./corpus.js";
import { Cvae, DEFAULT_CVAE, Pair } from "./cvae.js";
import { envFromJson } from "./geometry.js";
import { DEFAULT_EXTRACT, conditionVector, extractExample, TrainingExample } from "./extract.js";
import { proposalsToText, sanitize } from "./proposals.js";
import { Rng } from "./rng.js";

function parseArgs(argv: string[]): Map<string, string> {
  const out = new Map<string, string>();
  for (let i = 0; i < argv.length; i += 2) {
    if (!argv[i].startsWith("--")) throw new Error(`expected flag, got ${argv[i]}`);
    out.set(argv[i].slice(2), argv[i + 1] ?? "");
  }
  return out;
}

function num(args: Map<string, string>, key: string, fallback: number): number {
  return args.has(key) ? Number(args.get(key)) : fallback;
}

function cmdExtract(args: Map<string, string>): number {
  const n = num(args, "n", 200);
  const corpusSeed = num(args, "corpus-seed", 0);
  const out = args.get("out");
  if (!out) throw new Error("extract requires --out");
  const params = { ...DEFAULT_EXTRACT, denseN: num(args, "dense-n", DEFAULT_EXTRACT.denseN) };
  const examples: TrainingExample[] = [];
  let skipped = 0;
  for (let i = 0; i < n; i++) {
    const problem = toyProblem(corpusSeed + i);
    const example = extractExample(problem.id, problem.env, problem.start, problem.goal, params);
    if (example === null) {
      skipped++;
      console.error(`${problem.id}: no solvable dense path or no targets; skipped`);
      continue;
    }
    examples.push(example);
  }
  fs.writeFileSync(out, JSON.stringify({ format: "dataset-v1", examples }), "utf-8");
  console.log(`extracted ${examples.length} examples (${skipped} skipped) -> ${out}`);
  return 0;
}

export function datasetToPairs(examples: TrainingExample[], workspace: number): Pair[] {
  const pairs: Pair[] = [];
  for (const ex of examples) {
    const y = Float64Array.from(ex.condition);
    for (const target of ex.targets) {
      pairs.push({ x: Float64Array.from(target, (v) => v / workspace), y });
    }
  }
  return pairs;
}

function cmdTrain(args: Map<string, string>): number {
  const datasetPath = args.get("dataset");
  const out = args.get("out");
  if (!datasetPath || !out) throw new Error("train requires --dataset and --out");
  const data = JSON.parse(fs.readFileSync(datasetPath, "utf-8"));
  if (data.format !== "dataset-v1") throw new Error(`unknown dataset format ${data.format}`);
  const workspace = num(args, "workspace", DEFAULT_CORPUS.workspace);
  const pairs = datasetToPairs(data.examples, workspace);
  const config = {
    ...DEFAULT_CVAE,
    hidden: num(args, "hidden", DEFAULT_CVAE.hidden),
    zDim: num(args, "latent", DEFAULT_CVAE.zDim),
    lr: num(args, "lr", DEFAULT_CVAE.lr),
    epochs: num(args, "epochs", DEFAULT_CVAE.epochs),
    seed: num(args, "seed", DEFAULT_CVAE.seed),
    yDim: pairs[0].y.length,
  };
  const model = new Cvae(config, new Rng(config.seed, "cvae-init"));
  const history = model.train(pairs, (s) => {
    if (s.epoch % 10 === 0 || s.epoch === config.epochs - 1) {
      console.log(`epoch ${s.epoch}: loss=${s.loss.toFixed(5)} kl=${s.kl.toFixed(5)}`);
    }
  });
  fs.writeFileSync(
    out,
    JSON.stringify({ ...model.toJson(), workspace, history }),
    "utf-8",
  );
  console.log(`trained on ${pairs.length} pairs -> ${out}`);
  return 0;
}

function cmdSample(args: Map<string, string>): number {
  const modelPath = args.get("model");
  const out = args.get("out");
  if (!modelPath || !out) throw new Error("sample requires --model and --out");
  const raw = JSON.parse(fs.readFileSync(modelPath, "utf-8"));
  const model = Cvae.fromJson(raw);
  const workspace: number = raw.workspace ?? DEFAULT_CORPUS.workspace;
  const n = num(args, "n", 10);
  const seed = num(args, "seed", 0);

  let condition: number[];
  let problemId: string;
  if (args.has("env")) {
    const envData = JSON.parse(fs.readFileSync(args.get("env")!, "utf-8"));
    const env = envFromJson(envData);
    const start = (args.get("start") ?? "").split(",").map(Number) as [number, number];
    const goal = (args.get("goal") ?? "").split(",").map(Number) as [number, number];
    if (start.length !== 2 || goal.length !== 2 || start.some(Number.isNaN) || goal.some(Number.isNaN)) {
      throw new Error("sample with --env requires --start x,y and --goal x,y");
    }
    condition = conditionVector(env, start, goal).condition;
    problemId = args.get("problem-id") ?? "p0000";
  } else {
    const problemSeed = num(args, "problem-seed", 0);
    const problem = toyProblem(problemSeed);
    condition = conditionVector(problem.env, problem.start, problem.goal).condition;
    problemId = problem.id;
  }

  const outputs = model.sample(Float64Array.from(condition), n, seed);
  const samples = outputs.map((o) =>
    Array.from(o, (v) => sanitize(v * workspace, 0, workspace)),
  );
  fs.writeFileSync(
    out,
    proposalsToText([
      { problemId, proposer: "lego-global", dim: model.config.xDim, samples },
    ]),
    "utf-8",
  );
  console.log(`${samples.length} samples for ${problemId} -> ${out}`);
  return 0;
}

export function main(argv: string[]): number {
  const [verb, ...rest] = argv;
  try {
    const args = parseArgs(rest);
    if (verb === "extract") return cmdExtract(args);
    if (verb === "train") return cmdTrain(args);
    if (verb === "sample") return cmdSample(args);
    console.error(`usage: cli.js {extract|train|sample} [--flag value ...]`);
    return 2;
  } catch (err) {
    console.error(`error: ${err instanceof Error ? err.message : err}`);
    return 2;
  }
}

if (process.argv[1] && process.argv[1].endsWith("cli.js")) {
  process.exit(main(process.argv.slice(2)));
}
