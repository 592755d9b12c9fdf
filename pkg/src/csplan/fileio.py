"""JSON file formats: environments (with robot), problem sets, roadmap
dumps, and planner results."""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .geometry import ArmModel, Environment, PlanningProblem
from .roadmap import Roadmap


def robot_to_dict(robot: ArmModel | None) -> dict:
    if robot is None:
        return {"type": "point"}
    return {
        "type": "arm7",
        "base": list(robot.base),
        "links": list(robot.link_lengths),
        "limits": [list(pair) for pair in robot.joint_limits],
    }


def robot_from_dict(data: dict) -> ArmModel | None:
    kind = data.get("type")
    if kind == "point":
        return None
    if kind == "arm7":
        return ArmModel(
            base=tuple(data["base"]),
            link_lengths=tuple(data["links"]),
            joint_limits=tuple(tuple(p) for p in data["limits"]),
        )
    raise ValueError(f"unknown robot type {kind!r}")


def environment_to_dict(env: Environment, robot: ArmModel | None = None) -> dict:
    return {
        "bounds": list(env.bounds),
        "obstacles": [list(ob) for ob in env.obstacles],
        "robot": robot_to_dict(robot),
    }


def environment_from_dict(data: dict) -> tuple[Environment, ArmModel | None]:
    env = Environment(
        tuple(data["bounds"]), tuple(tuple(ob) for ob in data["obstacles"])
    )
    return env, robot_from_dict(data.get("robot", {"type": "point"}))


def save_environment(env: Environment, robot: ArmModel | None, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        json.dump(environment_to_dict(env, robot), f, indent=2)
        f.write("\n")


def load_environment(path) -> tuple[Environment, ArmModel | None]:
    with open(path, encoding="utf-8") as f:
        return environment_from_dict(json.load(f))


@dataclass(frozen=True)
class ProblemSet:
    """Environment plus a list of (id, PlanningProblem) queries in it."""

    environment: Environment
    robot: ArmModel | None
    problems: tuple[tuple[str, PlanningProblem], ...]

    def ids(self) -> list[str]:
        return [pid for pid, _ in self.problems]

    def get(self, pid: str) -> PlanningProblem:
        for candidate, problem in self.problems:
            if candidate == pid:
                return problem
        raise KeyError(f"problem {pid!r} not in set")


def problem_set_to_dict(ps: ProblemSet) -> dict:
    return {
        "environment": environment_to_dict(ps.environment, ps.robot),
        "problems": [
            {
                "id": pid,
                "start": [float(v) for v in problem.start],
                "goal": [float(v) for v in problem.goal],
            }
            for pid, problem in ps.problems
        ],
    }


def problem_set_from_dict(data: dict) -> ProblemSet:
    env, robot = environment_from_dict(data["environment"])
    problems = tuple(
        (
            str(entry["id"]),
            PlanningProblem(
                np.asarray(entry["start"], dtype=float),
                np.asarray(entry["goal"], dtype=float),
                env,
                robot,
            ),
        )
        for entry in data["problems"]
    )
    return ProblemSet(env, robot, problems)


def save_problem_set(ps: ProblemSet, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        json.dump(problem_set_to_dict(ps), f, indent=2)
        f.write("\n")


def load_problem_set(path) -> ProblemSet:
    with open(path, encoding="utf-8") as f:
        return problem_set_from_dict(json.load(f))


def save_roadmap(g: Roadmap, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        json.dump(g.to_dict(), f)
        f.write("\n")


def load_roadmap(path) -> Roadmap:
    with open(path, encoding="utf-8") as f:
        data = json.load(f)
    verts = data["vertices"]
    if not verts:
        raise ValueError("roadmap dump has no vertices")
    g = Roadmap(len(verts[0]))
    for q in verts:
        g.add_vertex(np.asarray(q, dtype=float))
    for u, v in data["edges"]:
        g.add_edge(int(u), int(v), validated=True)
    return g


def result_to_dict(result) -> dict:
    return {
        "solved": result.solved,
        "time_s": result.elapsed,
        "iterations": result.iterations,
        "collision_checks": result.collision_checks,
        "vertices_added": result.vertices_added,
        "path": (
            [[float(v) for v in wp] for wp in result.path.waypoints]
            if result.path is not None
            else None
        ),
    }


def save_result(result, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        json.dump(result_to_dict(result), f, indent=2)
        f.write("\n")
