"""Occupancy grids: rasterize environments and downsample with a max-pool
kernel so only the coarse obstacle layout survives."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .geometry import Environment


@dataclass(frozen=True)
class OccupancyGrid:
    """Binary raster over a workspace; row 0 covers the minimum-y band."""

    width: int
    height: int
    origin: tuple[float, float]
    cell_size: float
    cells: np.ndarray  # (height, width) uint8, row-major

    def __post_init__(self):
        if self.width < 1 or self.height < 1:
            raise ValueError("grid dimensions must be positive")
        if self.cell_size <= 0:
            raise ValueError("cell_size must be positive")
        cells = np.asarray(self.cells, dtype=np.uint8)
        if cells.shape != (self.height, self.width):
            raise ValueError(
                f"cells shape {cells.shape} != (height, width) = "
                f"({self.height}, {self.width})"
            )
        cells = cells.copy()
        cells.flags.writeable = False
        object.__setattr__(self, "cells", cells)
        object.__setattr__(self, "origin", (float(self.origin[0]), float(self.origin[1])))

    @property
    def occupied_count(self) -> int:
        return int(self.cells.sum())


def rasterize(env: Environment, width: int, height: int) -> OccupancyGrid:
    """Mark every cell whose closed rectangle touches any obstacle.

    Cells must be square, so the environment's aspect ratio has to match
    width/height.
    """
    if width < 1 or height < 1:
        raise ValueError("grid dimensions must be positive")
    bx0, by0, bx1, by1 = env.bounds
    cw = (bx1 - bx0) / width
    ch = (by1 - by0) / height
    if not math.isclose(cw, ch, rel_tol=1e-9):
        raise ValueError(
            f"non-square cells: x pitch {cw} vs y pitch {ch}; "
            "grid dimensions must match the bounds aspect ratio"
        )
    x0 = bx0 + cw * np.arange(width)
    y0 = by0 + ch * np.arange(height)
    x1 = x0 + cw
    y1 = y0 + ch
    cells = np.zeros((height, width), dtype=np.uint8)
    for ox0, oy0, ox1, oy1 in env.obstacles:
        cols = (ox0 <= x1) & (ox1 >= x0)
        rows = (oy0 <= y1) & (oy1 >= y0)
        cells |= (rows[:, None] & cols[None, :]).astype(np.uint8)
    return OccupancyGrid(width, height, (bx0, by0), cw, cells)


def preprocess_grid(grid: OccupancyGrid, k: int, stride: int) -> OccupancyGrid:
    """Downsample by taking the max over non-overlapping k x k windows.

    Requires k == stride and grid dimensions divisible by stride, so every
    output cell answers "is there any obstacle in my window".
    """
    if k < 1 or stride < 1:
        raise ValueError("kernel size and stride must be positive")
    if k != stride:
        raise ValueError(f"only non-overlapping windows supported: k={k} != stride={stride}")
    if grid.width % stride or grid.height % stride:
        raise ValueError(
            f"grid {grid.width}x{grid.height} not divisible by stride {stride}"
        )
    out_w = grid.width // stride
    out_h = grid.height // stride
    pooled = grid.cells.reshape(out_h, stride, out_w, stride).max(axis=(1, 3))
    return OccupancyGrid(out_w, out_h, grid.origin, grid.cell_size * stride, pooled)


def grid_to_dict(grid: OccupancyGrid) -> dict:
    return {
        "width": grid.width,
        "height": grid.height,
        "origin": list(grid.origin),
        "cell_size": grid.cell_size,
        "cells": grid.cells.reshape(-1).tolist(),
    }


def grid_from_dict(data: dict) -> OccupancyGrid:
    width = int(data["width"])
    height = int(data["height"])
    cells = np.asarray(data["cells"], dtype=np.uint8)
    if cells.size != width * height:
        raise ValueError(f"cells length {cells.size} != width*height {width * height}")
    if np.any(cells > 1):
        raise ValueError("cells must be 0/1")
    origin = tuple(data.get("origin", (0.0, 0.0)))
    cell_size = float(data.get("cell_size", 1.0))
    return OccupancyGrid(width, height, origin, cell_size, cells.reshape(height, width))


def save_grid(grid: OccupancyGrid, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        json.dump(grid_to_dict(grid), f)
        f.write("\n")


def load_grid(path) -> OccupancyGrid:
    with open(path, encoding="utf-8") as f:
        return grid_from_dict(json.load(f))
