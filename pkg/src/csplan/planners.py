"""Planners built on critical sources plus shared tree-growing primitives.

Two critical-source planners and two baselines share one result type:

- cs-rrt: grows one tree per source (plus start and goal) round robin,
  merging trees whenever a new vertex lands within a step of another tree.
- lcs-rrt: keeps a sparse roadmap and, per source, a local graph that the
  source's tree works to connect, over a radius that grows each round.
- rrt-connect: the classic bidirectional baseline.
- lego-style anytime roadmap: proposals plus incremental uniform
  densification with repeated graph searches.

All planners are deterministic functions of (problem, params, seed); they
stop on a wall-clock timeout or, when a check budget is set, after a fixed
number of collision checks (which makes entire runs replayable bit for bit).
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass

import numpy as np

from .geometry import (
    CollisionChecker,
    Path,
    PlanningProblem,
)
from .roadmap import Roadmap, UnionFind
from .rng import stream


@dataclass(frozen=True)
class PlannerParams:
    """Shared planner tuning: step bound, local-radius schedule (r_init,
    lam, M), stop conditions, and the edge-check resolution."""

    step_size: float
    r_init: float
    lam: float
    M: int
    timeout: float
    rng_seed: int = 0
    edge_resolution: float = 0.25
    check_budget: int | None = None

    def __post_init__(self):
        if self.step_size <= 0:
            raise ValueError("step_size must be positive")
        if self.r_init <= 0:
            raise ValueError("r_init must be positive")
        if self.lam <= 1:
            raise ValueError("lam must be > 1")
        if self.M < 1:
            raise ValueError("M must be >= 1")
        if self.timeout <= 0:
            raise ValueError("timeout must be positive")


@dataclass
class PlannerResult:
    path: Path | None
    elapsed: float
    iterations: int
    collision_checks: int
    vertices_added: int
    solved: bool


def steer(nn, rn, step_size: float) -> np.ndarray:
    """Move from nn toward rn by at most step_size; reach rn if closer."""
    nn = np.asarray(nn, dtype=float)
    rn = np.asarray(rn, dtype=float)
    if nn.shape != rn.shape:
        raise ValueError(f"dimension mismatch: {nn.shape} vs {rn.shape}")
    delta = rn - nn
    d = float(np.linalg.norm(delta))
    if d <= step_size:
        return rn.copy()
    return nn + (step_size / d) * delta


class Tree:
    """Rooted tree with parent links and a vectorized nearest query.

    Vertices are collision-free by construction (callers verify the edge,
    which includes the new endpoint, before adding).  g_ids maps tree
    vertices to ids in an enclosing roadmap when one exists.
    """

    def __init__(self, root, g_id: int | None = None):
        root = np.asarray(root, dtype=float)
        self.dim = root.shape[0]
        self._coords = np.empty((16, self.dim))
        self._coords[0] = root
        self._n = 1
        self.parents = [-1]
        self.g_ids = [g_id]

    @property
    def size(self) -> int:
        return self._n

    def coords(self, v: int) -> np.ndarray:
        return self._coords[v]

    def coords_array(self) -> np.ndarray:
        return self._coords[: self._n]

    def add(self, q, parent: int, g_id: int | None = None) -> int:
        if not 0 <= parent < self._n:
            raise IndexError(f"parent {parent} out of range")
        if self._n == self._coords.shape[0]:
            grown = np.empty((self._coords.shape[0] * 2, self.dim))
            grown[: self._n] = self._coords[: self._n]
            self._coords = grown
        self._coords[self._n] = np.asarray(q, dtype=float)
        self.parents.append(parent)
        self.g_ids.append(g_id)
        self._n += 1
        return self._n - 1

    def nearest(self, q) -> int:
        """Vertex minimizing distance to q; ties break to the lowest id."""
        if self._n == 0:
            raise ValueError("nearest query on empty tree")
        q = np.asarray(q, dtype=float)
        d2 = np.sum((self._coords[: self._n] - q) ** 2, axis=1)
        return int(np.argmin(d2))

    def path_to_root(self, v: int) -> list[int]:
        out = [v]
        while self.parents[out[-1]] != -1:
            out.append(self.parents[out[-1]])
        return out


def nearest_vertex(tree: Tree, q) -> int:
    return tree.nearest(q)


def random_node_in_ball(center, r: float, bounds, rng: np.random.Generator) -> np.ndarray:
    """Uniform sample from the radius-r ball about center, clipped to the
    state-space bounds, via rejection from the ball's bounding box."""
    if r <= 0:
        raise ValueError("radius must be positive")
    center = np.asarray(center, dtype=float)
    lo, hi = bounds
    blo = np.maximum(center - r, lo)
    bhi = np.minimum(center + r, hi)
    for _ in range(100_000):
        q = blo + rng.random(center.shape[0]) * (bhi - blo)
        if float(np.linalg.norm(q - center)) < r:
            return q
    raise RuntimeError("ball sampling failed; degenerate bounds?")


class _Deadline:
    """Stop condition: wall clock and/or collision-check budget."""

    def __init__(self, timeout: float, checker: CollisionChecker, budget: int | None):
        self.t_end = time.perf_counter() + timeout if math.isfinite(timeout) else math.inf
        self.checker = checker
        self.budget = budget

    def expired(self) -> bool:
        if self.budget is not None and self.checker.checks >= self.budget:
            return True
        return time.perf_counter() >= self.t_end


class _ComponentBuf:
    """Per-component vertex store used for nearest queries in cs-rrt."""

    def __init__(self, dim: int):
        self._coords = np.empty((8, dim))
        self.ids: list[int] = []
        self.dim = dim

    def add(self, vid: int, q: np.ndarray) -> None:
        n = len(self.ids)
        if n == self._coords.shape[0]:
            grown = np.empty((n * 2, self.dim))
            grown[:n] = self._coords[:n]
            self._coords = grown
        self._coords[n] = q
        self.ids.append(vid)

    def extend(self, other: "_ComponentBuf") -> None:
        for vid, q in zip(other.ids, other._coords[: len(other.ids)]):
            self.add(vid, q)

    def nearest(self, q: np.ndarray) -> tuple[int, float]:
        arr = self._coords[: len(self.ids)]
        d2 = np.sum((arr - q) ** 2, axis=1)
        k = int(np.argmin(d2))
        return self.ids[k], float(math.sqrt(d2[k]))


def _result(
    g: Roadmap,
    path_ids: list[int] | None,
    t0: float,
    iterations: int,
    checker: CollisionChecker,
    vertices_added: int,
) -> PlannerResult:
    path = None
    if path_ids is not None:
        path = Path(tuple(g.coords(v).copy() for v in path_ids))
    return PlannerResult(
        path=path,
        elapsed=time.perf_counter() - t0,
        iterations=iterations,
        collision_checks=checker.checks,
        vertices_added=vertices_added,
        solved=path is not None,
    )


def csrrt_plan(
    problem: PlanningProblem,
    sg: Roadmap | None,
    cs,
    params: PlannerParams,
    trace=None,
) -> PlannerResult:
    """Multi-tree planner rooted at start, goal, and each critical source.

    Components take turns (fixed order start, goal, sources; merged
    components collapse onto the lowest index): each turn retries
    {sample over the full bounds, steer from the component's nearest
    vertex} until a collision-free extension succeeds, then connects the
    new vertex to any other component whose nearest vertex lies strictly
    within step_size.  Finishes as soon as start and goal share a
    component.  sg is accepted for call symmetry with lcsrrt_plan; the
    roots already summarize everything this planner uses.
    """
    t0 = time.perf_counter()
    checker = CollisionChecker(problem.environment, problem.robot, params.edge_resolution)
    deadline = _Deadline(params.timeout, checker, params.check_budget)
    rng = stream(params.rng_seed, "csrrt")
    lo, hi = problem.config_bounds()
    dim = problem.dim

    g = Roadmap(dim)
    sources = list(getattr(cs, "sources", cs or ()))
    roots = [g.add_vertex(problem.start), g.add_vertex(problem.goal)]
    roots += [g.add_vertex(s) for s in sources]
    bufs: dict[int, _ComponentBuf] = {}
    for rid in roots:
        buf = _ComponentBuf(dim)
        buf.add(rid, g.coords(rid))
        bufs[rid] = buf

    start_id, goal_id = roots[0], roots[1]
    iterations = 0
    vertices_added = 0

    def merge_bufs(ra: int, rb: int) -> int:
        keep = min(ra, rb)
        drop = max(ra, rb)
        bufs[keep].extend(bufs[drop])
        del bufs[drop]
        return keep

    while not deadline.expired():
        round_roots = sorted(bufs.keys())
        for root in round_roots:
            if root not in bufs:
                continue  # merged into an earlier component this round
            if deadline.expired():
                break
            attempts = 0
            while True:
                attempts += 1
                if attempts % 64 == 0 and deadline.expired():
                    return _result(g, None, t0, iterations, checker, vertices_added)
                rn = lo + rng.random(dim) * (hi - lo)
                nn_id, _ = bufs[root].nearest(rn)
                qn = g.coords(nn_id)
                qnew = steer(qn, rn, params.step_size)
                if checker.edge_free(qn, qnew):
                    break
            new_id = g.add_vertex(qnew)
            g.add_edge(new_id, nn_id, validated=True)
            bufs[root].add(new_id, g.coords(new_id))
            vertices_added += 1
            iterations += 1
            if trace is not None:
                trace(f"{iterations},extend,{root},{qnew.tolist()}")

            current = root
            for other in sorted(bufs.keys()):
                if other == current or other not in bufs:
                    continue
                onn_id, d = bufs[other].nearest(qnew)
                if d < params.step_size and checker.edge_free(qnew, g.coords(onn_id)):
                    g.add_edge(new_id, onn_id, validated=True)
                    current = merge_bufs(current, other)
                    if trace is not None:
                        trace(f"{iterations},merge,{current},{qnew.tolist()}")
                    if g.same_component(start_id, goal_id):
                        ids = g.find_path(start_id, goal_id)
                        return _result(g, ids, t0, iterations, checker, vertices_added)
        else:
            continue
        break
    return _result(g, None, t0, iterations, checker, vertices_added)


class LocalGraph:
    """Membership view of the master roadmap around one critical source.

    Tracks which roadmap vertices belong to this local graph and their
    connectivity restricted to local edges; the goal state is every member
    sharing the root's component.
    """

    def __init__(self, root_gid: int, root_coords: np.ndarray):
        self.root_gid = root_gid
        self.root_coords = np.asarray(root_coords, dtype=float).copy()
        self._lidx: dict[int, int] = {root_gid: 0}
        self.members: list[int] = [root_gid]
        self._uf = UnionFind(1)
        # per-member count of tree vertices whose edge has been tried:
        # the environment is static, so failed pairs never need retrying
        self._tried: dict[int, int] = {}

    def __contains__(self, gid: int) -> bool:
        return gid in self._lidx

    def add_member(self, gid: int) -> None:
        if gid in self._lidx:
            return
        self._lidx[gid] = self._uf.add()
        self.members.append(gid)

    def union(self, gid_u: int, gid_v: int) -> None:
        self._uf.union(self._lidx[gid_u], self._lidx[gid_v])

    def connected_to_root(self, gid: int) -> bool:
        return self._uf.same(self._lidx[gid], 0)

    def is_connected(self) -> bool:
        return self._uf.count == 1

    def absorb(self, g: Roadmap, ids) -> None:
        """Add the given roadmap vertices and re-scan for roadmap edges
        between members (the induced subgraph grows monotonically)."""
        for gid in ids:
            self.add_member(int(gid))
        for gid in self.members:
            lu = self._lidx[gid]
            for v in g.adj[gid]:
                lv = self._lidx.get(v)
                if lv is not None:
                    self._uf.union(lu, lv)

    def disconnected_members(self) -> list[int]:
        """Members outside the root's component, in insertion order."""
        return [gid for gid in self.members if not self.connected_to_root(gid)]


def expand_local_graphs(
    problem: PlanningProblem,
    g: Roadmap,
    lgs: list[LocalGraph],
    trees: list[Tree],
    r: float,
    checker: CollisionChecker,
) -> list[LocalGraph]:
    """Grow each local graph to the roadmap subgraph within r of its root,
    then hook disconnected members straight onto the root's tree where a
    collision-free edge exists (removing their whole component from the
    disconnected set)."""
    for lg, tree in zip(lgs, trees):
        lg.absorb(g, g.vertices_within(lg.root_coords, r))
        for gid in lg.disconnected_members():
            if lg.connected_to_root(gid):
                continue  # joined via an earlier member's component
            q = g.coords(gid)
            first = lg._tried.get(gid, 0)
            for tv in range(first, tree.size):
                if checker.edge_free(q, tree.coords(tv)):
                    tree_gid = tree.g_ids[tv]
                    g.add_edge(gid, tree_gid, validated=True)
                    lg.union(gid, tree_gid)
                    lg._tried[gid] = tv
                    break
            else:
                lg._tried[gid] = tree.size
    return lgs


def densify_local_graphs(
    problem: PlanningProblem,
    g: Roadmap,
    lgs: list[LocalGraph],
    trees: list[Tree],
    r: float,
    params: PlannerParams,
    rng: np.random.Generator,
    deadline: _Deadline,
    checker: CollisionChecker,
) -> tuple[list[LocalGraph], list[Tree], int]:
    """For each disconnected local graph, grow its tree by single steps
    confined to the radius-r ball about the root, connecting each new tree
    vertex to disconnected members where possible; stops per graph when it
    connects or after M grown vertices.  Returns vertices added."""
    bounds = problem.config_bounds()
    added = 0
    for lg, tree in zip(lgs, trees):
        if lg.is_connected():
            continue
        ln = lg.disconnected_members()
        iters = 0
        while ln and iters < params.M and not deadline.expired():
            attempts = 0
            qnew = None
            while True:
                attempts += 1
                if attempts % 64 == 0 and deadline.expired():
                    break
                rn = random_node_in_ball(lg.root_coords, r, bounds, rng)
                nn = tree.nearest(rn)
                qn = tree.coords(nn)
                candidate = steer(qn, rn, params.step_size)
                if checker.edge_free(qn, candidate):
                    qnew = candidate
                    break
            if qnew is None:
                break
            gid_new = g.add_vertex(qnew)
            parent_gid = tree.g_ids[nn]
            tree.add(qnew, nn, g_id=gid_new)
            g.add_edge(gid_new, parent_gid, validated=True)
            lg.add_member(gid_new)
            lg.union(gid_new, parent_gid)
            added += 1
            for gid in ln:
                if lg.connected_to_root(gid):
                    continue
                if checker.edge_free(qnew, g.coords(gid)):
                    g.add_edge(gid_new, gid, validated=True)
                    lg.union(gid_new, gid)
            ln = [gid for gid in ln if not lg.connected_to_root(gid)]
            iters += 1
    return lgs, trees, added


def lcsrrt_plan(
    problem: PlanningProblem,
    sg: Roadmap,
    cs,
    params: PlannerParams,
    trace=None,
) -> PlannerResult:
    """Sparse-roadmap planner with per-source local densification.

    Start, goal, and every critical source root a tree and a local graph.
    Each round expands the local graphs to the current radius, densifies
    the disconnected ones, and searches the merged roadmap; the radius is
    multiplied by lam after every failed search.  The pristine input
    roadmap is never mutated.
    """
    t0 = time.perf_counter()
    checker = CollisionChecker(problem.environment, problem.robot, params.edge_resolution)
    deadline = _Deadline(params.timeout, checker, params.check_budget)
    rng = stream(params.rng_seed, "lcsrrt")

    g = sg.copy()
    sources = list(getattr(cs, "sources", cs or ()))
    roots = [g.add_vertex(problem.start), g.add_vertex(problem.goal)]
    roots += [g.add_vertex(s) for s in sources]
    start_id, goal_id = roots[0], roots[1]
    trees = [Tree(g.coords(rid), g_id=rid) for rid in roots]
    lgs = [LocalGraph(rid, g.coords(rid)) for rid in roots]

    vertices_added = 0
    k = 0
    while not deadline.expired():
        r = params.r_init * params.lam**k
        expand_local_graphs(problem, g, lgs, trees, r, checker)
        _, _, grown = densify_local_graphs(
            problem, g, lgs, trees, r, params, rng, deadline, checker
        )
        vertices_added += grown
        if trace is not None:
            trace(f"{k},round,{r},{vertices_added}")
        path_ids = g.find_path(start_id, goal_id, validator=checker.edge_free)
        if path_ids is not None:
            return _result(g, path_ids, t0, k + 1, checker, vertices_added)
        k += 1
    return _result(g, None, t0, k, checker, vertices_added)


def rrt_connect_plan(
    problem: PlanningProblem,
    params: PlannerParams,
    trace=None,
) -> PlannerResult:
    """Classic bidirectional baseline: extend one tree toward a random
    sample, then greedily connect the other tree to the new vertex,
    swapping roles every iteration."""
    t0 = time.perf_counter()
    checker = CollisionChecker(problem.environment, problem.robot, params.edge_resolution)
    deadline = _Deadline(params.timeout, checker, params.check_budget)
    rng = stream(params.rng_seed, "rrt-connect")
    lo, hi = problem.config_bounds()
    dim = problem.dim

    tree_a = Tree(problem.start)
    tree_b = Tree(problem.goal)
    a_is_start = True
    iterations = 0
    vertices_added = 0

    def join(via_a: int, via_b: int) -> PlannerResult:
        ids_a = tree_a.path_to_root(via_a)
        ids_b = tree_b.path_to_root(via_b)
        wps_a = [tree_a.coords(i).copy() for i in reversed(ids_a)]
        wps_b = [tree_b.coords(i).copy() for i in ids_b]
        wps = wps_a + wps_b[1:] if np.array_equal(wps_a[-1], wps_b[0]) else wps_a + wps_b
        if not a_is_start:
            wps.reverse()
        path = Path(tuple(wps))
        return PlannerResult(
            path=path,
            elapsed=time.perf_counter() - t0,
            iterations=iterations,
            collision_checks=checker.checks,
            vertices_added=vertices_added,
            solved=True,
        )

    while not deadline.expired():
        iterations += 1
        rn = lo + rng.random(dim) * (hi - lo)
        nn = tree_a.nearest(rn)
        qn = tree_a.coords(nn)
        qnew = steer(qn, rn, params.step_size)
        if checker.edge_free(qn, qnew):
            ia = tree_a.add(qnew, nn)
            vertices_added += 1
            if trace is not None:
                trace(f"{iterations},extend,{int(a_is_start)},{qnew.tolist()}")
            while True:
                nb = tree_b.nearest(qnew)
                qb = tree_b.coords(nb)
                qc = steer(qb, qnew, params.step_size)
                if not checker.edge_free(qb, qc):
                    break
                ib = tree_b.add(qc, nb)
                vertices_added += 1
                if np.array_equal(qc, qnew):
                    if trace is not None:
                        trace(f"{iterations},connect,{int(not a_is_start)},{qc.tolist()}")
                    return join(ia, ib)
                if deadline.expired():
                    break
        tree_a, tree_b = tree_b, tree_a
        a_is_start = not a_is_start

    return PlannerResult(
        path=None,
        elapsed=time.perf_counter() - t0,
        iterations=iterations,
        collision_checks=checker.checks,
        vertices_added=vertices_added,
        solved=False,
    )


def lego_anytime_plan(
    problem: PlanningProblem,
    sg: Roadmap,
    proposals,
    params: PlannerParams,
    *,
    connect_radius: float,
    densify_batch: int = 32,
    trace=None,
) -> PlannerResult:
    """Anytime roadmap baseline: seed the sparse roadmap with proposal
    vertices, connect everything within connect_radius by validated edges,
    and alternate graph searches with batches of uniform samples until a
    path is found or time runs out."""
    t0 = time.perf_counter()
    checker = CollisionChecker(problem.environment, problem.robot, params.edge_resolution)
    deadline = _Deadline(params.timeout, checker, params.check_budget)
    rng = stream(params.rng_seed, "lego-anytime")
    lo, hi = problem.config_bounds()
    dim = problem.dim

    g = sg.copy()
    vertices_added = 0

    def attach(q) -> int:
        vid = g.add_vertex(q)
        for other in g.vertices_within(q, connect_radius):
            other = int(other)
            if other == vid:
                continue
            if checker.edge_free(q, g.coords(other)):
                g.add_edge(vid, other, validated=True)
        return vid

    start_id = attach(problem.start)
    goal_id = attach(problem.goal)
    samples = getattr(proposals, "samples", proposals or ())
    for s in samples:
        if checker.config_free(s):
            attach(np.asarray(s, dtype=float))
            vertices_added += 1

    iterations = 0
    while True:
        path_ids = g.find_path(start_id, goal_id, validator=checker.edge_free)
        if path_ids is not None:
            return _result(g, path_ids, t0, iterations, checker, vertices_added)
        if deadline.expired():
            return _result(g, None, t0, iterations, checker, vertices_added)
        iterations += 1
        placed = 0
        attempts = 0
        while placed < densify_batch and attempts < 100 * densify_batch:
            attempts += 1
            q = lo + rng.random(dim) * (hi - lo)
            if checker.config_free(q):
                attach(q)
                vertices_added += 1
                placed += 1
            if attempts % 64 == 0 and deadline.expired():
                break
        if trace is not None:
            trace(f"{iterations},densify,{placed},{g.n_vertices}")
