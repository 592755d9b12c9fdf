"""Benchmark harness: generate a problem corpus, run the configured
planners on it, and write one CSV row per (problem, planner) run.

Fairness: for each problem, the sparse graph and the proposal set are
computed once and every planner that consumes them receives the very same
objects; planners on the same problem share one rng seed.

Determinism: with time_mode="simulated" the planners stop on a fixed
collision-check budget instead of the wall clock and report time as
checks / checks_per_second, which makes repeated runs byte-identical.
"""

from __future__ import annotations

import csv
import io
import math
import os
import statistics
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from . import defaults
from .envgen import (
    default_arm,
    default_gen_params,
    generate_environment,
    generate_problem,
)
from .geometry import PlanningProblem, validate_path
from .planners import (
    PlannerParams,
    PlannerResult,
    csrrt_plan,
    lcsrrt_plan,
    lego_anytime_plan,
    rrt_connect_plan,
)
from .roadmap import build_sparse_graph
from .sources import (
    GcsParams,
    ProposalSet,
    bridge_test_proposer,
    get_critical_sources,
    load_proposals,
    oracle_bottleneck_proposer,
    uniform_proposer,
)
from .svg import render_svg

PLANNER_NAMES = ("csrrt", "lcsrrt", "rrtconnect", "lego")

CSV_COLUMNS = (
    "problem_id",
    "planner",
    "seed",
    "solved",
    "time_s",
    "path_length",
    "collision_checks",
    "vertices",
)


@dataclass
class RunRecord:
    problem_id: str
    planner: str
    seed: int
    solved: bool
    time_s: float
    path_length: float | None
    collision_checks: int
    vertices: int
    proposal_hash: str = field(default="", compare=False)

    def csv_row(self) -> list[str]:
        return [
            self.problem_id,
            self.planner,
            str(self.seed),
            "true" if self.solved else "false",
            f"{self.time_s:.6f}",
            "" if self.path_length is None else f"{self.path_length:.6f}",
            str(self.collision_checks),
            str(self.vertices),
        ]


@dataclass(frozen=True)
class BenchConfig:
    domain: str = "r2-point"
    n_problems: int = 100
    timeout_s: float = 5.0
    planners: tuple[str, ...] = PLANNER_NAMES
    seed: int = 0
    proposer: str = "oracle"  # oracle | bridge | uniform | file:<path> | none
    lego_proposals: str = "shared"  # shared | none
    sparse_n: int = defaults.R2["sparse_n"]
    connect_radius: float = defaults.R2["connect_radius"]
    edge_resolution: float = defaults.R2["edge_resolution"]
    gcs: GcsParams = GcsParams(
        source_sep=defaults.R2["source_sep"],
        r_critical=defaults.R2["r_critical"],
        threshold=defaults.R2["threshold"],
    )
    step_size: float = defaults.R2["step_size"]
    r_init: float = defaults.R2["r_init"]
    lam: float = defaults.R2["lambda"]
    M: int = defaults.R2["M"]
    time_mode: str = "wall"  # wall | simulated
    checks_per_second: float = 250_000.0
    out_csv: str | None = None
    svg_dir: str | None = None  # per-run scene renders next to the CSV
    jobs: int = 1
    gen_params: object = None

    def __post_init__(self):
        if self.n_problems < 1:
            raise ValueError("n_problems must be >= 1")
        if self.timeout_s <= 0:
            raise ValueError("timeout_s must be positive")
        for name in self.planners:
            if name not in PLANNER_NAMES:
                raise ValueError(f"unknown planner {name!r}")
        if self.time_mode not in ("wall", "simulated"):
            raise ValueError(f"unknown time_mode {self.time_mode!r}")
        if self.lego_proposals not in ("shared", "none"):
            raise ValueError(f"unknown lego_proposals {self.lego_proposals!r}")


def config_for_domain(domain: str, **overrides) -> BenchConfig:
    """BenchConfig seeded with the domain's tuned defaults."""
    d = defaults.for_domain(domain)
    base = dict(
        domain=domain,
        timeout_s=d["timeout_s"],
        sparse_n=d["sparse_n"],
        connect_radius=d["connect_radius"],
        edge_resolution=d["edge_resolution"],
        gcs=GcsParams(
            source_sep=d["source_sep"],
            r_critical=d["r_critical"],
            threshold=d["threshold"],
        ),
        step_size=d["step_size"],
        r_init=d["r_init"],
        lam=d["lambda"],
        M=d["M"],
    )
    base.update(overrides)
    return BenchConfig(**base)


def config_from_dict(data: dict) -> BenchConfig:
    data = dict(data)
    domain = data.pop("domain", "r2-point")
    if "gcs" in data:
        data["gcs"] = GcsParams(**data["gcs"])
    if "lambda" in data:
        data["lam"] = data.pop("lambda")
    if "planners" in data:
        data["planners"] = tuple(data["planners"])
    return config_for_domain(domain, **data)


def planner_params(config: BenchConfig, problem_seed: int) -> PlannerParams:
    if config.time_mode == "simulated":
        return PlannerParams(
            step_size=config.step_size,
            r_init=config.r_init,
            lam=config.lam,
            M=config.M,
            timeout=math.inf,
            rng_seed=problem_seed,
            edge_resolution=config.edge_resolution,
            check_budget=int(config.timeout_s * config.checks_per_second),
        )
    return PlannerParams(
        step_size=config.step_size,
        r_init=config.r_init,
        lam=config.lam,
        M=config.M,
        timeout=config.timeout_s,
        rng_seed=problem_seed,
        edge_resolution=config.edge_resolution,
    )


def make_proposals(
    config: BenchConfig, problem: PlanningProblem, problem_id: str, problem_seed: int
) -> ProposalSet:
    d = defaults.for_domain(config.domain)
    spec = config.proposer
    if spec == "none":
        return ProposalSet((), "none", problem_id)
    if spec == "bridge":
        return bridge_test_proposer(
            problem.environment,
            problem.robot,
            d["bridge_attempts"],
            d["bridge_len"],
            problem_seed,
            problem_id=problem_id,
        )
    if spec == "uniform":
        return uniform_proposer(
            problem.environment,
            problem.robot,
            d["proposal_count"],
            problem_seed,
            problem_id=problem_id,
        )
    if spec == "oracle":
        return oracle_bottleneck_proposer(
            problem,
            d["dense_n"],
            config.gcs,
            connect_radius=d["dense_radius"],
            seed=problem_seed,
            edge_resolution=config.edge_resolution,
            problem_id=problem_id,
        )
    if spec.startswith("file:"):
        return load_proposals(spec[5:], problem_id)
    raise ValueError(f"unknown proposer {spec!r}")


def run_problem(config: BenchConfig, index: int) -> list[RunRecord]:
    """Generate problem #index and run every configured planner on it."""
    problem_seed = config.seed + index
    problem_id = f"p{index:04d}"
    gen = config.gen_params or default_gen_params(config.domain)
    env = generate_environment(problem_seed, config.domain, gen)
    robot = default_arm(gen) if config.domain == "r7-arm" else None
    problem = generate_problem(
        env,
        problem_seed,
        config.domain,
        robot=robot,
        params=gen,
        edge_resolution=config.edge_resolution,
    )
    sg = build_sparse_graph(
        env,
        robot,
        config.sparse_n,
        config.connect_radius,
        "halton",
        seed=problem_seed,
        edge_resolution=config.edge_resolution,
    )
    needs_proposals = any(p in ("csrrt", "lcsrrt", "lego") for p in config.planners)
    proposals = (
        make_proposals(config, problem, problem_id, problem_seed)
        if needs_proposals
        else ProposalSet((), "none", problem_id)
    )
    cs = get_critical_sources(
        problem, sg, proposals, config.gcs, edge_resolution=config.edge_resolution
    )
    params = planner_params(config, problem_seed)

    records = []
    for name in config.planners:
        used_proposals = proposals
        if name == "csrrt":
            result = csrrt_plan(problem, sg, cs, params)
        elif name == "lcsrrt":
            result = lcsrrt_plan(problem, sg, cs, params)
        elif name == "rrtconnect":
            result = rrt_connect_plan(problem, params)
            used_proposals = ProposalSet((), "none", problem_id)
        elif name == "lego":
            if config.lego_proposals == "none":
                used_proposals = ProposalSet((), "none", problem_id)
            result = lego_anytime_plan(
                problem,
                sg,
                used_proposals,
                params,
                connect_radius=config.connect_radius,
            )
        else:  # pragma: no cover - rejected in __post_init__
            raise ValueError(name)
        if result.solved and not validate_path(
            problem, result.path, config.edge_resolution
        ):
            raise AssertionError(
                f"planner {name} returned an invalid path on {problem_id}"
            )
        if config.svg_dir and result.solved:
            os.makedirs(config.svg_dir, exist_ok=True)
            render_svg(
                env,
                {
                    "cs": list(cs.sources),
                    "path": result.path,
                    "start": problem.start,
                    "goal": problem.goal,
                },
                os.path.join(config.svg_dir, f"{problem_id}_{name}.svg"),
                arm=robot,
            )
        records.append(_record(config, problem_id, name, problem_seed, result, used_proposals))
    return records


def _record(
    config: BenchConfig,
    problem_id: str,
    planner: str,
    seed: int,
    result: PlannerResult,
    proposals: ProposalSet,
) -> RunRecord:
    if config.time_mode == "simulated":
        time_s = result.collision_checks / config.checks_per_second
    else:
        time_s = result.elapsed
    return RunRecord(
        problem_id=problem_id,
        planner=planner,
        seed=seed,
        solved=result.solved,
        time_s=time_s,
        path_length=result.path.length() if result.solved else None,
        collision_checks=result.collision_checks,
        vertices=result.vertices_added,
        proposal_hash=proposals.content_hash(),
    )


def run_benchmark(config: BenchConfig) -> list[RunRecord]:
    """All runs for the config, ordered by (problem_id, planner); writes
    the CSV when config.out_csv is set."""
    indices = list(range(config.n_problems))
    if config.jobs > 1:
        with ProcessPoolExecutor(max_workers=config.jobs) as pool:
            batches = list(pool.map(run_problem, [config] * len(indices), indices))
        records = [rec for batch in batches for rec in batch]
    else:
        records = [rec for i in indices for rec in run_problem(config, i)]
    records.sort(key=lambda r: (r.problem_id, r.planner))
    if config.out_csv:
        with open(config.out_csv, "w", encoding="utf-8", newline="\n") as f:
            f.write(records_to_csv(records))
    return records


def records_to_csv(records: list[RunRecord]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for rec in records:
        writer.writerow(rec.csv_row())
    return buf.getvalue()


def summarize(records: list[RunRecord]) -> str:
    """Per-planner success rate and solve-time stats, fixed-width text."""
    lines = [
        f"{'planner':<12}{'runs':>6}{'solved':>8}{'rate':>8}{'median_s':>10}{'mean_s':>10}"
    ]
    planners = sorted({r.planner for r in records})
    for name in planners:
        runs = [r for r in records if r.planner == name]
        solved = [r for r in runs if r.solved]
        times = [r.time_s for r in solved]
        med = f"{statistics.median(times):.3f}" if times else "-"
        mean = f"{statistics.mean(times):.3f}" if times else "-"
        lines.append(
            f"{name:<12}{len(runs):>6}{len(solved):>8}"
            f"{len(solved) / len(runs):>8.2f}{med:>10}{mean:>10}"
        )
    return "\n".join(lines)
