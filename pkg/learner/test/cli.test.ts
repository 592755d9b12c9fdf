import assert from "node:assert/strict";
import { execFileSync } from "node:child_process";
import * as fs from "node:fs";
import * as os from "node:os";
import * as path from "node:path";
import { test } from "node:test";
import { fileURLToPath } from "node:url";

import { parseProposals } from "../src/proposals.js";

const CLI = path.join(
  path.dirname(fileURLToPath(import.meta.url)),
  "..",
  "src",
  "cli.js",
);

function run(args: string[]): string {
  return execFileSync("node", [CLI, ...args], { encoding: "utf-8" });
}

test("extract -> train -> sample pipeline through the CLI", () => {
  const tmp = fs.mkdtempSync(path.join(os.tmpdir(), "learner-cli-"));
  const dataset = path.join(tmp, "dataset.json");
  const model = path.join(tmp, "model.json");
  const proposals = path.join(tmp, "proposals.txt");

  run(["extract", "--n", "6", "--corpus-seed", "0", "--out", dataset]);
  const data = JSON.parse(fs.readFileSync(dataset, "utf-8"));
  assert.equal(data.format, "dataset-v1");
  assert.ok(data.examples.length >= 5);

  run([
    "train",
    "--dataset",
    dataset,
    "--out",
    model,
    "--epochs",
    "3",
    "--hidden",
    "16",
  ]);
  const checkpoint = JSON.parse(fs.readFileSync(model, "utf-8"));
  assert.equal(checkpoint.format, "cvae-checkpoint-v1");
  assert.equal(checkpoint.history.length, 3);

  run([
    "sample",
    "--model",
    model,
    "--problem-seed",
    "1000",
    "--n",
    "4",
    "--seed",
    "2",
    "--out",
    proposals,
  ]);
  const sections = parseProposals(fs.readFileSync(proposals, "utf-8"));
  assert.equal(sections.length, 1);
  assert.equal(sections[0].samples.length, 4);
  assert.equal(sections[0].proposer, "lego-global");

  // conditioning on an explicit environment file (the planner's format)
  const envFile = path.join(tmp, "env.json");
  fs.writeFileSync(
    envFile,
    JSON.stringify({
      bounds: [0, 0, 12, 12],
      obstacles: [[5.8, 0, 6.2, 5.5], [5.8, 6.5, 6.2, 12]],
      robot: { type: "point" },
    }),
  );
  const fromEnv = path.join(tmp, "env_proposals.txt");
  run([
    "sample",
    "--model",
    model,
    "--env",
    envFile,
    "--start",
    "1,6",
    "--goal",
    "11,6",
    "--problem-id",
    "p0042",
    "--n",
    "3",
    "--out",
    fromEnv,
  ]);
  const envSections = parseProposals(fs.readFileSync(fromEnv, "utf-8"));
  assert.equal(envSections[0].problemId, "p0042");
  assert.equal(envSections[0].samples.length, 3);
});

test("sample with n=0 writes a valid header-only file", () => {
  const tmp = fs.mkdtempSync(path.join(os.tmpdir(), "learner-cli0-"));
  const dataset = path.join(tmp, "dataset.json");
  const model = path.join(tmp, "model.json");
  const proposals = path.join(tmp, "proposals.txt");
  run(["extract", "--n", "3", "--out", dataset]);
  run(["train", "--dataset", dataset, "--out", model, "--epochs", "1", "--hidden", "8"]);
  run(["sample", "--model", model, "--n", "0", "--out", proposals]);
  const sections = parseProposals(fs.readFileSync(proposals, "utf-8"));
  assert.equal(sections.length, 1);
  assert.equal(sections[0].samples.length, 0);
});

test("unknown verb exits with a config error", () => {
  assert.throws(() => run(["transmogrify"]));
});
