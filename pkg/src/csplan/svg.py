"""Standalone SVG scene rendering for environments, roadmaps, and paths.

Output is deterministic byte-for-byte for identical inputs: fixed float
formatting, fixed element order, no timestamps.
"""

from __future__ import annotations

from .geometry import ArmModel, Environment, Path, fk_points
import numpy as np

OBSTACLE_FILL = "#3d3d3d"
ROADMAP_EDGE = "#c8c8c8"
ROADMAP_VERTEX = "#9a9a9a"
SAMPLE_COLOR = "#2e9e44"
SOURCE_COLOR = "#e0529c"
TREE_COLOR = "#4a90d9"
PATH_COLOR = "#d33030"
START_COLOR = "#1b7a2f"
GOAL_COLOR = "#b8860b"


def _fmt(v: float) -> str:
    return f"{v:.2f}"


class _Scene:
    def __init__(self, env: Environment, scale: float):
        bx0, by0, bx1, by1 = env.bounds
        self.bx0, self.by0, self.by1 = bx0, by0, by1
        self.scale = scale
        self.width = (bx1 - bx0) * scale
        self.height = (by1 - by0) * scale
        self.parts: list[str] = []

    def pt(self, x: float, y: float) -> tuple[float, float]:
        return ((x - self.bx0) * self.scale, (self.by1 - y) * self.scale)

    def rect(self, r, fill: str, stroke: str = "none") -> None:
        x0, y0 = self.pt(r[0], r[3])
        x1, y1 = self.pt(r[2], r[1])
        self.parts.append(
            f'<rect x="{_fmt(x0)}" y="{_fmt(y0)}" width="{_fmt(x1 - x0)}" '
            f'height="{_fmt(y1 - y0)}" fill="{fill}" stroke="{stroke}"/>'
        )

    def line(self, a, b, stroke: str, width: float) -> None:
        x0, y0 = self.pt(a[0], a[1])
        x1, y1 = self.pt(b[0], b[1])
        self.parts.append(
            f'<line x1="{_fmt(x0)}" y1="{_fmt(y0)}" x2="{_fmt(x1)}" y2="{_fmt(y1)}" '
            f'stroke="{stroke}" stroke-width="{_fmt(width)}"/>'
        )

    def circle(self, c, radius: float, fill: str) -> None:
        x, y = self.pt(c[0], c[1])
        self.parts.append(
            f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="{_fmt(radius)}" fill="{fill}"/>'
        )

    def polyline(self, pts, stroke: str, width: float, opacity: float = 1.0) -> None:
        coords = " ".join(
            f"{_fmt(px)},{_fmt(py)}" for px, py in (self.pt(p[0], p[1]) for p in pts)
        )
        self.parts.append(
            f'<polyline points="{coords}" fill="none" stroke="{stroke}" '
            f'stroke-width="{_fmt(width)}" stroke-opacity="{_fmt(opacity)}"/>'
        )

    def document(self) -> str:
        head = (
            '<svg xmlns="http://www.w3.org/2000/svg" '
            f'width="{_fmt(self.width)}" height="{_fmt(self.height)}" '
            f'viewBox="0 0 {_fmt(self.width)} {_fmt(self.height)}">'
        )
        return "\n".join([head, *self.parts, "</svg>"]) + "\n"


def render_svg(
    env: Environment,
    overlays: dict | None = None,
    out=None,
    *,
    arm: ArmModel | None = None,
    scale: float = 60.0,
) -> str:
    """Render the environment plus optional overlays to an SVG document.

    Overlay keys: roadmap (Roadmap or its to_dict()), trees (list of Tree),
    samples (green dots), cs (pink source markers), path (Path; for the arm
    drawn as poses along the path), start, goal.  Writes to `out` when
    given and returns the document text.
    """
    overlays = overlays or {}
    scene = _Scene(env, scale)
    scene.parts.append(
        f'<rect x="0" y="0" width="{_fmt(scene.width)}" height="{_fmt(scene.height)}" '
        'fill="#ffffff" stroke="#000000"/>'
    )
    for ob in env.obstacles:
        scene.rect(ob, OBSTACLE_FILL)

    # roadmap/tree/sample overlays live in configuration space, so they are
    # only drawable for the 2-D point robot
    if arm is None:
        roadmap = overlays.get("roadmap")
        if roadmap is not None:
            data = roadmap.to_dict() if hasattr(roadmap, "to_dict") else roadmap
            verts = data["vertices"]
            for u, v in data["edges"]:
                scene.line(verts[u], verts[v], ROADMAP_EDGE, 1.0)
            for p in verts:
                scene.circle(p, 2.0, ROADMAP_VERTEX)

        for tree in overlays.get("trees", ()):
            for v in range(1, tree.size):
                scene.line(tree.coords(tree.parents[v]), tree.coords(v), TREE_COLOR, 1.2)

        for p in overlays.get("samples", ()):
            scene.circle(p, 3.0, SAMPLE_COLOR)

        for p in overlays.get("cs", ()):
            scene.circle(p, 5.0, SOURCE_COLOR)

    path = overlays.get("path")
    if path is not None:
        waypoints = path.waypoints if isinstance(path, Path) else path
        if arm is not None:
            n = len(waypoints)
            for i, q in enumerate(waypoints):
                pts = fk_points(arm, np.asarray(q, dtype=float)[None])[0]
                opacity = 0.25 + 0.75 * (i / max(1, n - 1))
                scene.polyline(pts, PATH_COLOR, 2.0, opacity)
        else:
            scene.polyline(waypoints, PATH_COLOR, 3.0)
            for p in waypoints:
                scene.circle(p, 2.5, PATH_COLOR)

    start = overlays.get("start")
    if start is not None and arm is None:
        scene.circle(start, 6.0, START_COLOR)
    goal = overlays.get("goal")
    if goal is not None and arm is None:
        scene.circle(goal, 6.0, GOAL_COLOR)

    doc = scene.document()
    if out is not None:
        with open(out, "w", encoding="utf-8", newline="\n") as f:
            f.write(doc)
    return doc
