"""Command-line entry point.

Verbs: gen-env, gen-problems, gcs, plan, bench, render.
Exit codes: 0 success, 1 planning failure (plan), 2 config/format error.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys

from . import defaults
from .bench import (
    BenchConfig,
    config_from_dict,
    make_proposals,
    planner_params,
    run_benchmark,
    summarize,
)
from .envgen import default_arm, default_gen_params, generate_environment, generate_problem
from .fileio import (
    ProblemSet,
    load_environment,
    load_problem_set,
    save_environment,
    save_problem_set,
    save_result,
)
from .grids import preprocess_grid, rasterize, save_grid
from .planners import csrrt_plan, lcsrrt_plan, lego_anytime_plan, rrt_connect_plan
from .roadmap import build_sparse_graph
from .sources import (
    GcsParams,
    ProposalSet,
    get_critical_sources,
    save_proposals,
)
from .svg import render_svg


def _add_shared(p: argparse.ArgumentParser) -> None:
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--config", help="JSON config file")
    p.add_argument("--out", help="output path")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="csplan", description="critical-source motion planning toolkit"
    )
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("gen-env", help="generate an environment file")
    _add_shared(p)
    p.add_argument("--domain", choices=("r2-point", "r7-arm"), default="r2-point")
    p.add_argument("--grid", help="also write a rasterized occupancy grid here")
    p.add_argument("--grid-size", type=int, default=50)
    p.add_argument(
        "--grid-preprocessed",
        help="also write the max-pooled grid (kernel 5, stride 5) here",
    )

    p = sub.add_parser("gen-problems", help="generate a problem-set file")
    _add_shared(p)
    p.add_argument("--env", help="environment file (generated when omitted)")
    p.add_argument("--domain", choices=("r2-point", "r7-arm"), default="r2-point")
    p.add_argument("--n", type=int, default=1)

    p = sub.add_parser("gcs", help="select critical sources for one problem")
    _add_shared(p)
    p.add_argument("--problems", required=True)
    p.add_argument("--index", type=int, default=0)
    p.add_argument("--proposer", default="bridge")
    p.add_argument("--sparse-n", type=int)
    p.add_argument("--connect-radius", type=float)
    p.add_argument("--r-critical", type=float)
    p.add_argument("--source-sep", type=float)
    p.add_argument("--threshold", type=float)

    p = sub.add_parser("plan", help="run one planner on one problem")
    _add_shared(p)
    p.add_argument("--problems", required=True)
    p.add_argument("--index", type=int, default=0)
    p.add_argument(
        "--planner", choices=("csrrt", "lcsrrt", "rrtconnect", "lego"), default="csrrt"
    )
    p.add_argument("--proposer", default="bridge")
    p.add_argument("--timeout", type=float)
    p.add_argument("--svg", help="render the solved scene here")
    p.add_argument("--trace", help="write a per-iteration event log here")

    p = sub.add_parser("bench", help="run the benchmark from a config file")
    _add_shared(p)

    p = sub.add_parser("render", help="render an environment or problem to SVG")
    _add_shared(p)
    p.add_argument("--env", help="environment file")
    p.add_argument("--problems", help="problem-set file")
    p.add_argument("--index", type=int, default=0)
    return parser


def _domain_of(robot) -> str:
    return "r2-point" if robot is None else "r7-arm"


def _bench_config(args, *, domain: str | None = None, **overrides) -> BenchConfig:
    data = {}
    if args.config:
        with open(args.config, encoding="utf-8") as f:
            data = json.load(f)
    if domain is not None:
        data.setdefault("domain", domain)
    data.update(overrides)
    return config_from_dict(data)


def _cmd_gen_env(args) -> int:
    params = default_gen_params(args.domain)
    env = generate_environment(args.seed, args.domain, params)
    robot = default_arm(params) if args.domain == "r7-arm" else None
    if not args.out:
        raise ValueError("gen-env requires --out")
    save_environment(env, robot, args.out)
    if args.grid or args.grid_preprocessed:
        grid = rasterize(env, args.grid_size, args.grid_size)
        if args.grid:
            save_grid(grid, args.grid)
        if args.grid_preprocessed:
            save_grid(preprocess_grid(grid, 5, 5), args.grid_preprocessed)
    return 0


def _cmd_gen_problems(args) -> int:
    if not args.out:
        raise ValueError("gen-problems requires --out")
    params = default_gen_params(args.domain)
    if args.env:
        env, robot = load_environment(args.env)
        domain = _domain_of(robot)
    else:
        domain = args.domain
        env = generate_environment(args.seed, domain, params)
        robot = default_arm(params) if domain == "r7-arm" else None
    d = defaults.for_domain(domain)
    problems = tuple(
        (
            f"p{i:04d}",
            generate_problem(
                env,
                args.seed + i,
                domain,
                robot=robot,
                params=params,
                edge_resolution=d["edge_resolution"],
            ),
        )
        for i in range(args.n)
    )
    save_problem_set(ProblemSet(env, robot, problems), args.out)
    return 0


def _proposals_for(args, config: BenchConfig, problem, problem_id: str) -> ProposalSet:
    cfg = dataclasses.replace(config, proposer=args.proposer)
    return make_proposals(cfg, problem, problem_id, args.seed)


def _cmd_gcs(args) -> int:
    ps = load_problem_set(args.problems)
    domain = _domain_of(ps.robot)
    overrides = {}
    if args.sparse_n:
        overrides["sparse_n"] = args.sparse_n
    if args.connect_radius:
        overrides["connect_radius"] = args.connect_radius
    gcs_over = {}
    for key, flag in (
        ("r_critical", args.r_critical),
        ("source_sep", args.source_sep),
        ("threshold", args.threshold),
    ):
        if flag is not None:
            gcs_over[key] = flag
    config = _bench_config(args, domain=domain, **overrides)
    if gcs_over:
        base = {
            "source_sep": config.gcs.source_sep,
            "r_critical": config.gcs.r_critical,
            "threshold": config.gcs.threshold,
        }
        base.update(gcs_over)
        config = dataclasses.replace(config, gcs=GcsParams(**base))
    pid, problem = ps.problems[args.index]
    sg = build_sparse_graph(
        ps.environment,
        ps.robot,
        config.sparse_n,
        config.connect_radius,
        "halton",
        seed=args.seed,
        edge_resolution=config.edge_resolution,
    )
    proposals = _proposals_for(args, config, problem, pid)
    cs = get_critical_sources(
        problem, sg, proposals, config.gcs, edge_resolution=config.edge_resolution
    )
    out = ProposalSet(cs.sources, "gcs", pid)
    if args.out:
        save_proposals(args.out, out)
    print(f"{pid}: {len(proposals.samples)} proposals -> {len(cs)} critical sources")
    return 0


def _cmd_plan(args) -> int:
    ps = load_problem_set(args.problems)
    domain = _domain_of(ps.robot)
    overrides = {"timeout_s": args.timeout} if args.timeout else {}
    config = _bench_config(args, domain=domain, **overrides)
    pid, problem = ps.problems[args.index]
    params = planner_params(config, args.seed)
    trace_lines: list[str] = []
    trace = trace_lines.append if args.trace else None

    sg = None
    cs = None
    proposals = ProposalSet((), "none", pid)
    if args.planner in ("csrrt", "lcsrrt", "lego"):
        sg = build_sparse_graph(
            ps.environment,
            ps.robot,
            config.sparse_n,
            config.connect_radius,
            "halton",
            seed=args.seed,
            edge_resolution=config.edge_resolution,
        )
        proposals = _proposals_for(args, config, problem, pid)
    if args.planner in ("csrrt", "lcsrrt"):
        cs = get_critical_sources(
            problem, sg, proposals, config.gcs, edge_resolution=config.edge_resolution
        )

    if args.planner == "csrrt":
        result = csrrt_plan(problem, sg, cs, params, trace=trace)
    elif args.planner == "lcsrrt":
        result = lcsrrt_plan(problem, sg, cs, params, trace=trace)
    elif args.planner == "rrtconnect":
        result = rrt_connect_plan(problem, params, trace=trace)
    else:
        result = lego_anytime_plan(
            problem, sg, proposals, params, connect_radius=config.connect_radius
        )

    if args.out:
        save_result(result, args.out)
    if args.trace:
        with open(args.trace, "w", encoding="utf-8", newline="\n") as f:
            f.write("\n".join(trace_lines) + ("\n" if trace_lines else ""))
    if args.svg:
        overlays = {
            "cs": list(cs.sources) if cs is not None else [],
            "path": result.path,
            "start": problem.start,
            "goal": problem.goal,
        }
        render_svg(ps.environment, overlays, args.svg, arm=ps.robot)
    status = "solved" if result.solved else "failed"
    print(
        f"{pid}: {args.planner} {status} in {result.elapsed:.3f}s "
        f"({result.collision_checks} checks, {result.vertices_added} vertices)"
    )
    return 0 if result.solved else 1


def _cmd_bench(args) -> int:
    if not args.config:
        raise ValueError("bench requires --config")
    config = _bench_config(args)
    if args.out:
        config = dataclasses.replace(config, out_csv=args.out)
    records = run_benchmark(config)
    print(summarize(records))
    if config.out_csv:
        print(f"wrote {config.out_csv}")
    return 0


def _cmd_render(args) -> int:
    if not args.out:
        raise ValueError("render requires --out")
    if args.problems:
        ps = load_problem_set(args.problems)
        pid, problem = ps.problems[args.index]
        overlays = {"start": problem.start, "goal": problem.goal}
        render_svg(ps.environment, overlays, args.out, arm=ps.robot)
    elif args.env:
        env, robot = load_environment(args.env)
        render_svg(env, {}, args.out, arm=robot)
    else:
        raise ValueError("render needs --env or --problems")
    return 0


_COMMANDS = {
    "gen-env": _cmd_gen_env,
    "gen-problems": _cmd_gen_problems,
    "gcs": _cmd_gcs,
    "plan": _cmd_plan,
    "bench": _cmd_bench,
    "render": _cmd_render,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return _COMMANDS[args.verb](args)
    except (ValueError, KeyError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
