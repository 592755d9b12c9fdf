"""Critical-source selection and the pluggable proposers that feed it.

A proposer emits candidate configurations that might sit in bottleneck
regions; get_critical_sources filters them down to well-separated samples
whose neighborhoods in the sparse graph are poorly connectable.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass

import numpy as np

from .geometry import (
    ArmModel,
    CollisionChecker,
    Config,
    Environment,
    PlanningProblem,
    as_config,
    config_bounds,
    configs_free,
    distance,
    robot_dim,
)
from .roadmap import Roadmap, build_sparse_graph
from .rng import stream

DEFAULT_EDGE_RESOLUTION = 0.25


@dataclass(frozen=True)
class GcsParams:
    """Tuning knobs for critical-source selection.

    source_sep: minimum spacing between kept sources.
    r_critical: neighborhood radius in the sparse graph.
    threshold: keep a sample only if the fraction of collision-free edges
        to its neighbors is strictly below this value.
    """

    source_sep: float
    r_critical: float
    threshold: float

    def __post_init__(self):
        if self.source_sep <= 0:
            raise ValueError("source_sep must be positive")
        if self.r_critical <= 0:
            raise ValueError("r_critical must be positive")
        if not 0 < self.threshold <= 1:
            raise ValueError("threshold must be in (0, 1]")


@dataclass(frozen=True)
class ProposalSet:
    """Candidate critical-source samples from one proposer."""

    samples: tuple[Config, ...]
    provenance: str
    problem_id: str
    warnings: tuple[str, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "samples", tuple(as_config(s) for s in self.samples))

    def content_hash(self) -> str:
        h = hashlib.sha256()
        for s in self.samples:
            h.update(s.tobytes())
        return h.hexdigest()


@dataclass(frozen=True)
class CriticalSourceSet:
    """Sources kept by the selection filter, in acceptance order."""

    sources: tuple[Config, ...]

    def __post_init__(self):
        object.__setattr__(self, "sources", tuple(as_config(s) for s in self.sources))

    def __len__(self) -> int:
        return len(self.sources)


def get_critical_sources(
    problem: PlanningProblem,
    sparse: Roadmap,
    proposals: ProposalSet,
    params: GcsParams,
    *,
    edge_resolution: float = DEFAULT_EDGE_RESOLUTION,
) -> CriticalSourceSet:
    """Filter proposals to critical sources, in proposal order.

    A sample is kept iff it is collision-free, at least source_sep from
    every already-kept source, has at least one sparse-graph vertex
    strictly within r_critical, and the fraction of those neighbors
    reachable by a collision-free straight edge is strictly below the
    threshold.  An empty result is valid.
    """
    checker = CollisionChecker(problem.environment, problem.robot, edge_resolution)
    d = problem.dim
    kept: list[np.ndarray] = []
    for sample in proposals.samples:
        if sample.shape != (d,):
            raise ValueError(f"proposal dimension {sample.shape} != problem dimension {d}")
        if not checker.config_free(sample):
            continue
        if any(distance(sample, s) < params.source_sep for s in kept):
            continue
        neighbor_ids = sparse.vertices_within(sample, params.r_critical)
        if len(neighbor_ids) == 0:
            continue
        free = sum(
            1 for v in neighbor_ids if checker.edge_free(sample, sparse.coords(v))
        )
        if free / len(neighbor_ids) < params.threshold:
            kept.append(sample)
    return CriticalSourceSet(tuple(kept))


def bridge_test_proposer(
    env: Environment,
    robot: ArmModel | None,
    attempts: int,
    bridge_len: float,
    rng_seed: int,
    *,
    problem_id: str = "",
) -> ProposalSet:
    """Obstacle-straddling heuristic proposer.

    Each attempt draws a segment of length bridge_len at a random position
    and orientation; if both endpoints are in collision but the midpoint is
    free, the midpoint is emitted -- midpoints of such bridges concentrate
    inside narrow passages.
    """
    if attempts < 1:
        raise ValueError("attempts must be >= 1")
    rng = stream(rng_seed, "bridge-proposer")
    lo, hi = config_bounds(env, robot)
    d = robot_dim(robot)
    a = lo + rng.random((attempts, d)) * (hi - lo)
    direction = rng.standard_normal((attempts, d))
    norms = np.linalg.norm(direction, axis=1, keepdims=True)
    norms[norms == 0] = 1.0
    b = a + bridge_len * direction / norms
    mid = (a + b) / 2
    hits = ~configs_free(env, robot, a) & ~configs_free(env, robot, b)
    hits &= configs_free(env, robot, mid)
    samples = tuple(mid[i] for i in np.nonzero(hits)[0])
    return ProposalSet(samples, "bridge", problem_id)


def uniform_proposer(
    env: Environment,
    robot: ArmModel | None,
    n: int,
    rng_seed: int,
    *,
    problem_id: str = "",
) -> ProposalSet:
    """n collision-free uniform samples; the no-prior-knowledge baseline."""
    rng = stream(rng_seed, "uniform-proposer")
    lo, hi = config_bounds(env, robot)
    d = robot_dim(robot)
    out: list[np.ndarray] = []
    draws = 0
    while len(out) < n and draws < max(1, 100 * n):
        batch = lo + rng.random((max(n, 64), d)) * (hi - lo)
        draws += batch.shape[0]
        for q in batch[configs_free(env, robot, batch)]:
            if len(out) < n:
                out.append(q)
    return ProposalSet(tuple(out), "uniform", problem_id)


def oracle_bottleneck_proposer(
    problem: PlanningProblem,
    dense_n: int,
    params: GcsParams,
    *,
    connect_radius: float,
    seed: int = 0,
    edge_resolution: float = DEFAULT_EDGE_RESOLUTION,
    problem_id: str = "",
) -> ProposalSet:
    """Ground-truth-style proposer backed by a dense roadmap.

    Builds a dense graph, finds a shortest feasible path for the problem,
    and emits the path vertices whose local free-edge ratio (computed as in
    the critical-source filter, against the dense graph) falls below the
    threshold -- the path's bottleneck vertices, in path order.
    """
    env, robot = problem.environment, problem.robot
    dim = problem.dim
    eager = dim == 2
    dense = build_sparse_graph(
        env,
        robot,
        dense_n,
        connect_radius,
        "halton",
        seed=seed,
        edge_resolution=edge_resolution,
        eager=eager,
    )
    checker = CollisionChecker(env, robot, edge_resolution)
    start_id = dense.add_vertex(problem.start)
    goal_id = dense.add_vertex(problem.goal)
    for vid, q in ((start_id, problem.start), (goal_id, problem.goal)):
        for other in dense.vertices_within(q, connect_radius):
            if other == vid:
                continue
            if eager:
                if checker.edge_free(q, dense.coords(other)):
                    dense.add_edge(vid, int(other), validated=True)
            else:
                dense.add_edge(vid, int(other), validated=False)
    validator = None if eager else checker.edge_free
    path = dense.find_path(start_id, goal_id, validator=validator)
    if path is None:
        return ProposalSet((), "oracle", problem_id, warnings=("no path in dense roadmap",))
    samples: list[np.ndarray] = []
    for v in path:
        q = dense.coords(v)
        neighbor_ids = [int(u) for u in dense.vertices_within(q, params.r_critical) if u != v]
        if not neighbor_ids:
            continue
        free = sum(1 for u in neighbor_ids if checker.edge_free(q, dense.coords(u)))
        if free / len(neighbor_ids) < params.threshold:
            samples.append(q.copy())
    return ProposalSet(tuple(samples), "oracle", problem_id)


def save_proposals(path, proposal_sets) -> None:
    """Write proposal sets in the line-oriented exchange format.

    One section per set: a header line `# dim=<d> problem=<id>
    proposer=<name>` followed by one sample per line (space-separated
    decimals, shortest round-trip form, LF endings).
    """
    if isinstance(proposal_sets, ProposalSet):
        proposal_sets = [proposal_sets]
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        for ps in proposal_sets:
            dim = ps.samples[0].shape[0] if ps.samples else 0
            f.write(f"# dim={dim} problem={ps.problem_id} proposer={ps.provenance}\n")
            for s in ps.samples:
                f.write(" ".join(repr(float(x)) for x in s) + "\n")


def _parse_header(line: str, lineno: int) -> tuple[int, str, str]:
    fields = {}
    for token in line[1:].split():
        if "=" not in token:
            raise ValueError(f"line {lineno}: malformed header token {token!r}")
        key, _, value = token.partition("=")
        fields[key] = value
    for required in ("dim", "problem", "proposer"):
        if required not in fields:
            raise ValueError(f"line {lineno}: header missing {required}=")
    try:
        dim = int(fields["dim"])
    except ValueError:
        raise ValueError(f"line {lineno}: dim is not an integer") from None
    return dim, fields["problem"], fields["proposer"]


def load_proposals(path, problem_id: str) -> ProposalSet:
    """Parse the proposal file and return the section for problem_id.

    Raises ValueError (with a line number) on malformed content and
    KeyError if the file holds no section for the requested problem.
    """
    sections: dict[str, ProposalSet] = {}
    current: tuple[int, str, str] | None = None
    samples: list[np.ndarray] = []

    def finish():
        if current is not None:
            _, pid, name = current
            sections[pid] = ProposalSet(tuple(samples), name, pid)

    with open(path, encoding="utf-8") as f:
        for lineno, raw in enumerate(f, start=1):
            line = raw.strip()
            if not line:
                continue
            if line.startswith("#"):
                finish()
                current = _parse_header(line, lineno)
                samples = []
                continue
            if current is None:
                raise ValueError(f"line {lineno}: sample before any header")
            parts = line.split()
            dim = current[0]
            if len(parts) != dim:
                raise ValueError(
                    f"line {lineno}: expected {dim} values, got {len(parts)}"
                )
            try:
                samples.append(np.array([float(p) for p in parts]))
            except ValueError:
                raise ValueError(f"line {lineno}: non-numeric value") from None
    finish()
    if problem_id not in sections:
        raise KeyError(f"problem {problem_id!r} not found in {path}")
    return sections[problem_id]
