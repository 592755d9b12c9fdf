"""Configuration spaces, environments, robot models, and collision predicates.

Two robot types share one interface: a point robot in a 2-D workspace
(robot=None) and a planar 7-link arm (robot=ArmModel) whose configuration
space is the 7-D box of joint angles.  Obstacles are closed axis-aligned
rectangles: touching a boundary counts as a collision.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

Config = np.ndarray


def as_config(coords) -> Config:
    """Validate and freeze a configuration (finite 1-D float vector)."""
    q = np.array(coords, dtype=float)
    if q.ndim != 1:
        raise ValueError(f"configuration must be 1-D, got shape {q.shape}")
    if not np.all(np.isfinite(q)):
        raise ValueError("configuration has non-finite coordinates")
    q.flags.writeable = False
    return q


def distance(q1, q2) -> float:
    """Euclidean distance between two equal-dimension configurations."""
    a = np.asarray(q1, dtype=float)
    b = np.asarray(q2, dtype=float)
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")
    return float(np.linalg.norm(a - b))


@dataclass(frozen=True)
class Environment:
    """Bounded 2-D workspace with closed axis-aligned rectangular obstacles."""

    bounds: tuple[float, float, float, float]
    obstacles: tuple[tuple[float, float, float, float], ...] = ()

    def __post_init__(self):
        bx0, by0, bx1, by1 = self.bounds
        if not (bx0 < bx1 and by0 < by1):
            raise ValueError(f"degenerate bounds {self.bounds}")
        obstacles = tuple(tuple(float(v) for v in ob) for ob in self.obstacles)
        for ob in obstacles:
            ox0, oy0, ox1, oy1 = ob
            if not (ox0 < ox1 and oy0 < oy1):
                raise ValueError(f"obstacle {ob} has non-positive extent")
            if ox0 < bx0 or oy0 < by0 or ox1 > bx1 or oy1 > by1:
                raise ValueError(f"obstacle {ob} extends outside bounds {self.bounds}")
        object.__setattr__(self, "obstacles", obstacles)
        arr = np.array(obstacles, dtype=float).reshape(len(obstacles), 4)
        arr.flags.writeable = False
        object.__setattr__(self, "_obstacle_array", arr)

    @property
    def obstacle_array(self) -> np.ndarray:
        """(m, 4) array of [xmin, ymin, xmax, ymax] rows."""
        return self._obstacle_array


@dataclass(frozen=True)
class ArmModel:
    """Planar revolute chain: 7 links anchored at a fixed base point."""

    base: tuple[float, float]
    link_lengths: tuple[float, ...]
    joint_limits: tuple[tuple[float, float], ...]

    def __post_init__(self):
        links = tuple(float(v) for v in self.link_lengths)
        limits = tuple((float(lo), float(hi)) for lo, hi in self.joint_limits)
        if len(links) != 7:
            raise ValueError(f"expected 7 links, got {len(links)}")
        if any(v <= 0 for v in links):
            raise ValueError("link lengths must be positive")
        if len(limits) != 7:
            raise ValueError(f"expected 7 joint limit pairs, got {len(limits)}")
        if any(lo >= hi for lo, hi in limits):
            raise ValueError("joint limits must satisfy lo < hi")
        object.__setattr__(self, "base", (float(self.base[0]), float(self.base[1])))
        object.__setattr__(self, "link_lengths", links)
        object.__setattr__(self, "joint_limits", limits)
        lo = np.array([l for l, _ in limits])
        hi = np.array([h for _, h in limits])
        lo.flags.writeable = False
        hi.flags.writeable = False
        object.__setattr__(self, "_lo", lo)
        object.__setattr__(self, "_hi", hi)

    @property
    def dim(self) -> int:
        return 7

    @property
    def limits_lo(self) -> np.ndarray:
        return self._lo

    @property
    def limits_hi(self) -> np.ndarray:
        return self._hi


def robot_dim(robot: ArmModel | None) -> int:
    return 2 if robot is None else robot.dim


def config_bounds(env: Environment, robot: ArmModel | None) -> tuple[np.ndarray, np.ndarray]:
    """Sampling box of the configuration space: workspace for the point
    robot, the joint-limit box for the arm."""
    if robot is None:
        bx0, by0, bx1, by1 = env.bounds
        return np.array([bx0, by0]), np.array([bx1, by1])
    return robot.limits_lo.copy(), robot.limits_hi.copy()


def fk_points(arm: ArmModel, qs: np.ndarray) -> np.ndarray:
    """Joint positions for a batch of configurations: (k, 7) -> (k, 8, 2)."""
    ang = np.cumsum(qs, axis=1)
    lengths = np.asarray(arm.link_lengths)
    steps = np.stack([np.cos(ang), np.sin(ang)], axis=2) * lengths[None, :, None]
    pts = np.empty((qs.shape[0], 8, 2))
    pts[:, 0] = arm.base
    pts[:, 1:] = np.asarray(arm.base) + np.cumsum(steps, axis=1)
    return pts


def forward_kinematics(arm: ArmModel, q) -> np.ndarray:
    """Joint positions (8 workspace points) of the arm at configuration q.

    Point 0 is the base; point k advances point k-1 by link k-1 at the
    cumulative joint angle.  Raises if q violates the joint limits.
    """
    q = np.asarray(q, dtype=float)
    if q.shape != (7,):
        raise ValueError(f"arm configuration must have 7 joints, got shape {q.shape}")
    if np.any(q < arm.limits_lo) or np.any(q > arm.limits_hi):
        raise ValueError("configuration violates joint limits")
    return fk_points(arm, q[None, :])[0]


def is_point_free(env: Environment, p) -> bool:
    """True iff p lies inside the bounds and in no closed obstacle."""
    x, y = float(p[0]), float(p[1])
    bx0, by0, bx1, by1 = env.bounds
    if not (bx0 <= x <= bx1 and by0 <= y <= by1):
        return False
    a = env.obstacle_array
    if a.shape[0] == 0:
        return True
    hit = (a[:, 0] <= x) & (x <= a[:, 2]) & (a[:, 1] <= y) & (y <= a[:, 3])
    return not bool(hit.any())


def segments_intersect_rects(p0: np.ndarray, p1: np.ndarray, rects: np.ndarray) -> np.ndarray:
    """Exact closed-set segment-vs-AABB test, vectorized.

    p0, p1: (..., 2) segment endpoints; rects: (m, 4).
    Returns a boolean array of shape (..., m); touching counts as a hit.
    """
    p0 = np.asarray(p0, dtype=float)
    p1 = np.asarray(p1, dtype=float)
    d = p1 - p0
    t_enter = np.zeros(p0.shape[:-1] + (rects.shape[0],))
    t_exit = np.ones_like(t_enter)
    for axis in (0, 1):
        pa = p0[..., axis, None]
        da = d[..., axis, None]
        rmin = rects[:, axis].reshape((1,) * (p0.ndim - 1) + (-1,))
        rmax = rects[:, axis + 2].reshape((1,) * (p0.ndim - 1) + (-1,))
        with np.errstate(divide="ignore", invalid="ignore"):
            t0 = (rmin - pa) / da
            t1 = (rmax - pa) / da
        lo = np.minimum(t0, t1)
        hi = np.maximum(t0, t1)
        parallel = da == 0
        inside = (rmin <= pa) & (pa <= rmax)
        lo = np.where(parallel, np.where(inside, -np.inf, np.inf), lo)
        hi = np.where(parallel, np.where(inside, np.inf, -np.inf), hi)
        t_enter = np.maximum(t_enter, lo)
        t_exit = np.minimum(t_exit, hi)
    return t_enter <= t_exit


def _points_in_bounds(env: Environment, pts: np.ndarray) -> np.ndarray:
    bx0, by0, bx1, by1 = env.bounds
    return (
        (pts[..., 0] >= bx0)
        & (pts[..., 0] <= bx1)
        & (pts[..., 1] >= by0)
        & (pts[..., 1] <= by1)
    )


def configs_free(env: Environment, robot: ArmModel | None, qs: np.ndarray) -> np.ndarray:
    """Batched collision test: (k, d) -> (k,) boolean array."""
    qs = np.asarray(qs, dtype=float)
    if robot is None:
        if qs.shape[1] != 2:
            raise ValueError(f"point-robot configuration must be 2-D, got {qs.shape[1]}")
        ok = _points_in_bounds(env, qs)
        a = env.obstacle_array
        if a.shape[0]:
            hit = (
                (a[None, :, 0] <= qs[:, 0, None])
                & (qs[:, 0, None] <= a[None, :, 2])
                & (a[None, :, 1] <= qs[:, 1, None])
                & (qs[:, 1, None] <= a[None, :, 3])
            )
            ok &= ~hit.any(axis=1)
        return ok
    if qs.shape[1] != 7:
        raise ValueError(f"arm configuration must be 7-D, got {qs.shape[1]}")
    ok = np.all(qs >= robot.limits_lo, axis=1) & np.all(qs <= robot.limits_hi, axis=1)
    if not ok.any():
        return ok
    pts = fk_points(robot, qs)
    ok &= _points_in_bounds(env, pts).all(axis=1)
    a = env.obstacle_array
    if a.shape[0]:
        hits = segments_intersect_rects(pts[:, :-1], pts[:, 1:], a)
        ok &= ~hits.any(axis=(1, 2))
    return ok


def is_config_free(env: Environment, robot: ArmModel | None, q) -> bool:
    """Collision test for one configuration.

    Point robot: the point is in free space.  Arm: the configuration is
    within joint limits and all 7 link segments stay inside the bounds and
    clear of every obstacle (exact segment tests).
    """
    q = np.asarray(q, dtype=float)
    return bool(configs_free(env, robot, q[None, :])[0])


def interpolate_edge(q1: np.ndarray, q2: np.ndarray, resolution: float) -> np.ndarray:
    """Configurations along the straight segment q1->q2, spaced <= resolution."""
    dist = float(np.linalg.norm(q2 - q1))
    steps = max(1, math.ceil(dist / resolution))
    ts = np.linspace(0.0, 1.0, steps + 1)
    return q1[None, :] + ts[:, None] * (q2 - q1)[None, :]


_BISECT_ORDERS: dict[int, np.ndarray] = {}


def _bisection_order(n: int) -> np.ndarray:
    """Permutation of 0..n-1 visiting endpoints first, then interval
    midpoints breadth-first, so a blocked edge fails after few checks."""
    order = _BISECT_ORDERS.get(n)
    if order is not None:
        return order
    out = [0, n - 1] if n > 1 else [0]
    queue = [(0, n - 1)]
    while queue:
        lo, hi = queue.pop(0)
        if hi - lo < 2:
            continue
        mid = (lo + hi) // 2
        out.append(mid)
        queue.append((lo, mid))
        queue.append((mid, hi))
    order = np.array(out, dtype=int)
    _BISECT_ORDERS[n] = order
    return order


def _edge_free_counted(
    env: Environment, robot: ArmModel | None, q1, q2, resolution: float
) -> tuple[bool, int]:
    """Edge test plus the number of configurations actually evaluated
    (early exit on the first collision, in bisection order)."""
    qs = interpolate_edge(q1, q2, resolution)
    n = qs.shape[0]
    order = _bisection_order(n)
    done = 0
    for lo in range(0, n, 32):
        block = order[lo : lo + 32]
        done += block.shape[0]
        if not configs_free(env, robot, qs[block]).all():
            return False, done
    return True, done


def is_edge_free(env: Environment, robot: ArmModel | None, q1, q2, resolution: float) -> bool:
    """True iff the straight configuration-space segment between q1 and q2
    is collision-free at every interpolated configuration (spacing <=
    resolution, endpoints included)."""
    if resolution <= 0:
        raise ValueError("resolution must be positive")
    q1 = np.asarray(q1, dtype=float)
    q2 = np.asarray(q2, dtype=float)
    if q1.shape != q2.shape:
        raise ValueError(f"dimension mismatch: {q1.shape} vs {q2.shape}")
    return _edge_free_counted(env, robot, q1, q2, resolution)[0]


@dataclass(frozen=True)
class PlanningProblem:
    """Start/goal query in an environment; start and goal must be free."""

    start: Config
    goal: Config
    environment: Environment
    robot: ArmModel | None = None

    def __post_init__(self):
        start = as_config(self.start)
        goal = as_config(self.goal)
        d = robot_dim(self.robot)
        if start.shape != (d,) or goal.shape != (d,):
            raise ValueError(
                f"start/goal dimension must be {d}, got {start.shape} and {goal.shape}"
            )
        if not is_config_free(self.environment, self.robot, start):
            raise ValueError("start configuration is in collision")
        if not is_config_free(self.environment, self.robot, goal):
            raise ValueError("goal configuration is in collision")
        object.__setattr__(self, "start", start)
        object.__setattr__(self, "goal", goal)

    @property
    def dim(self) -> int:
        return robot_dim(self.robot)

    def config_bounds(self) -> tuple[np.ndarray, np.ndarray]:
        return config_bounds(self.environment, self.robot)


@dataclass(frozen=True)
class Path:
    """Waypoint sequence whose consecutive pairs are collision-free edges."""

    waypoints: tuple[Config, ...]

    def __post_init__(self):
        wps = tuple(as_config(w) for w in self.waypoints)
        if len(wps) < 2:
            raise ValueError("path needs at least 2 waypoints")
        object.__setattr__(self, "waypoints", wps)

    def length(self) -> float:
        return float(
            sum(distance(a, b) for a, b in zip(self.waypoints, self.waypoints[1:]))
        )


def validate_path(problem: PlanningProblem, path: Path, resolution: float) -> bool:
    """Independent re-check of a path against its problem: endpoint equality
    plus a fresh collision test of every edge."""
    if not np.array_equal(path.waypoints[0], problem.start):
        return False
    if not np.array_equal(path.waypoints[-1], problem.goal):
        return False
    env, robot = problem.environment, problem.robot
    return all(
        is_edge_free(env, robot, a, b, resolution)
        for a, b in zip(path.waypoints, path.waypoints[1:])
    )


class CollisionChecker:
    """Collision predicates bound to one environment/robot, with counting.

    Planners route every check through one instance so the number of
    configuration evaluations (the dominant cost) is reported per run and
    can serve as a deterministic work budget.
    """

    def __init__(self, env: Environment, robot: ArmModel | None, resolution: float):
        if resolution <= 0:
            raise ValueError("resolution must be positive")
        self.env = env
        self.robot = robot
        self.resolution = resolution
        self.checks = 0

    def config_free(self, q) -> bool:
        self.checks += 1
        return is_config_free(self.env, self.robot, np.asarray(q, dtype=float))

    def edge_free(self, q1, q2) -> bool:
        q1 = np.asarray(q1, dtype=float)
        q2 = np.asarray(q2, dtype=float)
        free, evaluated = _edge_free_counted(
            self.env, self.robot, q1, q2, self.resolution
        )
        self.checks += evaluated
        return free
