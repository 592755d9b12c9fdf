"""Seeded generation of benchmark environments and planning problems.

2-D scenes are rectilinear walls spanning the workspace, each pierced by a
narrow passage whose local structure varies (straight extruded tube or an
offset zig-zag between paired walls).  7-D scenes put a shelf with a slot
above a planar arm so reaching the far side means folding through the slot.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .geometry import (
    ArmModel,
    Environment,
    PlanningProblem,
    fk_points,
    is_config_free,
    is_edge_free,
)
from .rng import stream

Rect = tuple[float, float, float, float]


@dataclass(frozen=True)
class R2GenParams:
    workspace: float = 12.0
    n_walls: int = 3
    passage_width_range: tuple[float, float] = (0.3, 0.45)
    wall_thickness: float = 0.25
    extrusion_depth: float = 0.9
    zigzag_offset_range: tuple[float, float] = (4.0, 6.0)
    styles: tuple[str, ...] = ("straight", "zigzag")
    margin: float = 1.2


@dataclass(frozen=True)
class R7GenParams:
    workspace: float = 10.0
    shelf_thickness: float = 0.8
    shelf_y_range: tuple[float, float] = (3.4, 4.2)
    slot_width_range: tuple[float, float] = (0.75, 1.0)
    slot_reach: float = 2.4  # max horizontal slot offset from the base
    base: tuple[float, float] = (5.0, 0.8)
    link_length: float = 0.8


def default_gen_params(domain: str):
    if domain == "r2-point":
        return R2GenParams()
    if domain == "r7-arm":
        return R7GenParams()
    raise ValueError(f"unknown domain {domain!r}")


def default_arm(params: R7GenParams | None = None) -> ArmModel:
    p = params or R7GenParams()
    limits = ((0.0, math.pi),) + ((-2.8, 2.8),) * 6
    return ArmModel(base=p.base, link_lengths=(p.link_length,) * 7, joint_limits=limits)


@dataclass(frozen=True)
class WallSpec:
    """Placement record for one logical wall, used by tests to locate and
    measure its passage."""

    style: str
    x_bands: tuple[tuple[float, float], ...]  # obstacle x-extents, one per sub-wall
    gaps: tuple[tuple[float, float], ...]  # open y-interval per sub-wall


def plan_walls(seed: int, params: R2GenParams) -> list[WallSpec]:
    """Deterministic wall layout for a seed; generate_environment realizes
    exactly this plan."""
    p = params
    rng = stream(seed, "envgen-r2")
    w_total = p.workspace
    if p.n_walls == 0:
        return []
    lo_w, hi_w = p.passage_width_range
    if not 0 < lo_w <= hi_w:
        raise ValueError(f"bad passage_width_range {p.passage_width_range}")
    if hi_w >= w_total - 2:
        raise ValueError("passage wider than the workspace allows")
    slot = (w_total - 2 * p.margin) / p.n_walls
    straight_halfwidth = p.wall_thickness / 2 + p.extrusion_depth
    zigzag_halfwidth = hi_w / 2 + p.wall_thickness
    need = 2 * max(straight_halfwidth, zigzag_halfwidth)
    jitter = 0.08 * slot
    if slot - 2 * jitter < need:
        raise ValueError(
            f"n_walls={p.n_walls} too dense: wall structures of width {need:.2f} "
            f"do not fit in slots of {slot:.2f}"
        )
    specs = []
    for i in range(p.n_walls):
        cx = p.margin + (i + 0.5) * slot + rng.uniform(-jitter, jitter)
        style = p.styles[int(rng.integers(len(p.styles)))]
        width = rng.uniform(lo_w, hi_w)
        t = p.wall_thickness
        y_pad = t + 0.4
        if style == "straight":
            g_lo = rng.uniform(y_pad, w_total - y_pad - width)
            specs.append(
                WallSpec(
                    style="straight",
                    x_bands=((cx - t / 2, cx + t / 2),),
                    gaps=((g_lo, g_lo + width),),
                )
            )
        else:
            # channel as wide as the passage; long offset between the two
            # openings makes the S-traverse the hard part
            s = width
            xa = (cx - s / 2 - t, cx - s / 2)
            xb = (cx + s / 2, cx + s / 2 + t)
            off_lo, off_hi = p.zigzag_offset_range
            max_off = w_total - 2 * y_pad - 2 * width
            offset = rng.uniform(min(off_lo, max_off), min(off_hi, max_off))
            direction = 1.0 if rng.random() < 0.5 else -1.0
            span = offset + width
            g_lo_a = rng.uniform(y_pad, w_total - y_pad - width - span)
            if direction < 0:
                g_lo_a += span
            g_lo_b = g_lo_a + direction * offset
            specs.append(
                WallSpec(
                    style="zigzag",
                    x_bands=(xa, xb),
                    gaps=((g_lo_a, g_lo_a + width), (g_lo_b, g_lo_b + width)),
                )
            )
    return specs


def _wall_obstacles(spec: WallSpec, params: R2GenParams) -> list[Rect]:
    h = params.workspace
    t = params.wall_thickness
    out: list[Rect] = []
    for (x0, x1), (g_lo, g_hi) in zip(spec.x_bands, spec.gaps):
        out.append((x0, 0.0, x1, g_lo))
        out.append((x0, g_hi, x1, h))
    if spec.style == "straight":
        (x0, x1), (g_lo, g_hi) = spec.x_bands[0], spec.gaps[0]
        e = params.extrusion_depth
        out.append((x0 - e, g_lo - t, x1 + e, g_lo))
        out.append((x0 - e, g_hi, x1 + e, g_hi + t))
    return out


def generate_environment(seed: int, domain: str = "r2-point", params=None) -> Environment:
    """Deterministic environment for (seed, domain, params)."""
    if domain == "r2-point":
        p = params or R2GenParams()
        w = p.workspace
        obstacles: list[Rect] = []
        for spec in plan_walls(seed, p):
            obstacles.extend(_wall_obstacles(spec, p))
        return Environment((0.0, 0.0, w, w), tuple(obstacles))
    if domain == "r7-arm":
        p = params or R7GenParams()
        rng = stream(seed, "envgen-r7")
        w = p.workspace
        sy = rng.uniform(*p.shelf_y_range)
        slot_w = rng.uniform(*p.slot_width_range)
        sx = p.base[0] + rng.uniform(-p.slot_reach, p.slot_reach)
        sx = min(max(sx, 1.0 + slot_w / 2), w - 1.0 - slot_w / 2)
        t = p.shelf_thickness
        obstacles = [
            (0.0, sy, sx - slot_w / 2, sy + t),
            (sx + slot_w / 2, sy, w, sy + t),
        ]
        return Environment((0.0, 0.0, w, w), tuple(obstacles))
    raise ValueError(f"unknown domain {domain!r}")


def find_shelf_slot(env: Environment) -> tuple[float, float, float, float]:
    """Locate the slot in a shelf environment: (x_lo, x_hi, y_lo, y_hi).

    Expects exactly one pair of obstacles sharing a y-band (the generator's
    layout for arm scenes).
    """
    bands: dict[tuple[float, float], list[Rect]] = {}
    for ob in env.obstacles:
        bands.setdefault((ob[1], ob[3]), []).append(ob)
    for (y_lo, y_hi), obs in bands.items():
        if len(obs) == 2:
            obs = sorted(obs)
            return (obs[0][2], obs[1][0], y_lo, y_hi)
    raise ValueError("no slot found: environment is not a shelf scene")


def measure_gaps_at(env: Environment, x: float) -> list[tuple[float, float]]:
    """Open y-intervals along the vertical line at x (a geometric scan used
    to verify generated passages)."""
    _, by0, _, by1 = env.bounds
    covered = sorted(
        (oy0, oy1) for ox0, oy0, ox1, oy1 in env.obstacles if ox0 <= x <= ox1
    )
    gaps = []
    cursor = by0
    for y0, y1 in covered:
        if y0 > cursor:
            gaps.append((cursor, y0))
        cursor = max(cursor, y1)
    if cursor < by1:
        gaps.append((cursor, by1))
    return gaps


def _segment_template(
    arm: ArmModel, target: np.ndarray, rise: float
) -> np.ndarray:
    """Joint template pointing the chain at target, then straight up once
    the cumulative length passes dist(base, target) - rise."""
    base = np.asarray(arm.base)
    delta = target - base
    heading = math.atan2(delta[1], delta[0])
    reach = float(np.linalg.norm(delta))
    absolute = []
    run = 0.0
    for length in arm.link_lengths:
        absolute.append(heading if run < reach - rise else math.pi / 2)
        run += length
    q = np.empty(7)
    q[0] = absolute[0]
    q[1:] = np.diff(absolute)
    return q


def generate_problem(
    env: Environment,
    seed: int,
    domain: str = "r2-point",
    *,
    robot: ArmModel | None = None,
    params=None,
    edge_resolution: float = 0.25,
    max_draws: int = 10_000,
) -> PlanningProblem:
    """Seeded start/goal pair whose straight configuration-space segment is
    in collision, so the problem needs actual planning.

    2-D: start and goal drawn from opposite x-extremes of the free space.
    Arm: start folded below the shelf, goal threaded through the slot,
    both template-guided with random jitter.
    """
    rng = stream(seed, "problemgen", domain)
    if domain == "r2-point":
        bx0, by0, bx1, by1 = env.bounds
        zone = 0.15 * (bx1 - bx0)
        pad = 0.25
        flip = bool(rng.random() < 0.5)
        for _ in range(max_draws):
            sx = rng.uniform(bx0 + pad, bx0 + zone)
            gx = rng.uniform(bx1 - zone, bx1 - pad)
            sy = rng.uniform(by0 + pad, by1 - pad)
            gy = rng.uniform(by0 + pad, by1 - pad)
            start = np.array([sx, sy])
            goal = np.array([gx, gy])
            if flip:
                start, goal = goal, start
            if not is_config_free(env, None, start):
                continue
            if not is_config_free(env, None, goal):
                continue
            if is_edge_free(env, None, start, goal, edge_resolution):
                continue
            return PlanningProblem(start, goal, env, None)
        raise RuntimeError(
            f"no start/goal pair with a colliding straight segment in {max_draws} draws"
        )
    if domain == "r7-arm":
        arm = robot or default_arm(params)
        p = params or R7GenParams()
        x_lo, x_hi, y_lo, y_hi = find_shelf_slot(env)
        slot_center = np.array([(x_lo + x_hi) / 2, (y_lo + y_hi) / 2])
        goal_template = _segment_template(arm, slot_center, rise=1.2)
        lo = arm.limits_lo
        hi = arm.limits_hi
        start = None
        goal = None
        for _ in range(max_draws):
            if goal is None:
                q = np.clip(goal_template + rng.uniform(-0.18, 0.18, 7), lo, hi)
                if not is_config_free(env, arm, q):
                    continue
                pts = fk_points(arm, q[None])[0]
                if pts[-1, 1] > y_hi + 0.2:
                    goal = q
                continue
            if start is None:
                q = np.clip(
                    np.concatenate(
                        [rng.uniform(0.1, 0.6, 1), rng.uniform(0.2, 0.9, 6)]
                    ),
                    lo,
                    hi,
                )
                if not is_config_free(env, arm, q):
                    continue
                pts = fk_points(arm, q[None])[0]
                if np.all(pts[:, 1] < y_lo - 0.2):
                    start = q
                continue
            if is_edge_free(env, arm, start, goal, edge_resolution):
                start = None  # straight segment free: redraw the pair
                goal = None
                continue
            return PlanningProblem(start, goal, env, arm)
        raise RuntimeError(
            f"no threaded start/goal pair found in {max_draws} draws"
        )
    raise ValueError(f"unknown domain {domain!r}")
