"""Undirected roadmaps over configurations: construction from low-discrepancy
samples, incremental connectivity, radius queries, and shortest-path search."""

from __future__ import annotations

import heapq
import math

import numpy as np

from .geometry import (
    ArmModel,
    CollisionChecker,
    Environment,
    config_bounds,
    configs_free,
    robot_dim,
)
from .rng import stream

PRIMES = (2, 3, 5, 7, 11, 13, 17)


class UnionFind:
    """Disjoint sets over integer ids; each set's root is its smallest member,
    so merged components deterministically collapse to the lower index."""

    def __init__(self, n: int = 0):
        self.parent = list(range(n))
        self.count = n

    def add(self) -> int:
        idx = len(self.parent)
        self.parent.append(idx)
        self.count += 1
        return idx

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a: int, b: int) -> int:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return ra
        lo, hi = (ra, rb) if ra < rb else (rb, ra)
        self.parent[hi] = lo
        self.count -= 1
        return lo

    def same(self, a: int, b: int) -> bool:
        return self.find(a) == self.find(b)


def halton(n: int, dim: int, start_index: int = 1) -> np.ndarray:
    """First n points of the Halton sequence (radical inverse, one prime
    base per axis), unscrambled so results are bit-reproducible."""
    if dim > len(PRIMES):
        raise ValueError(f"halton supports up to {len(PRIMES)} dimensions")
    out = np.empty((n, dim))
    for j in range(dim):
        base = PRIMES[j]
        for i in range(n):
            idx = start_index + i
            f = 1.0
            r = 0.0
            while idx > 0:
                f /= base
                r += f * (idx % base)
                idx //= base
            out[i, j] = r
    return out


class Roadmap:
    """Mutable undirected graph over configurations.

    Adjacency carries a per-edge validated flag; the union-find component
    index tracks the stored edge set.  Single writer; concurrent readers
    are fine between mutations.
    """

    def __init__(self, dim: int):
        self.dim = dim
        self._coords = np.empty((16, dim))
        self._n = 0
        self.adj: list[dict[int, bool]] = []
        self._uf = UnionFind()
        self._uf_dirty = False

    @property
    def n_vertices(self) -> int:
        return self._n

    def coords_array(self) -> np.ndarray:
        return self._coords[: self._n]

    def coords(self, v: int) -> np.ndarray:
        if not 0 <= v < self._n:
            raise IndexError(f"vertex {v} out of range")
        return self._coords[v]

    def add_vertex(self, q) -> int:
        q = np.asarray(q, dtype=float)
        if q.shape != (self.dim,):
            raise ValueError(f"expected dimension {self.dim}, got shape {q.shape}")
        if self._n == self._coords.shape[0]:
            grown = np.empty((self._coords.shape[0] * 2, self.dim))
            grown[: self._n] = self._coords[: self._n]
            self._coords = grown
        self._coords[self._n] = q
        self.adj.append({})
        self._uf.add()
        self._n += 1
        return self._n - 1

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def edge_validated(self, u: int, v: int) -> bool:
        return self.adj[u][v]

    def add_edge(self, u: int, v: int, validated: bool = True) -> None:
        """Insert the undirected edge u-v; duplicate inserts are no-ops
        (a validated insert upgrades an unvalidated edge)."""
        if u == v:
            raise ValueError("self-loops not allowed")
        if not (0 <= u < self._n and 0 <= v < self._n):
            raise IndexError(f"edge ({u}, {v}) references missing vertex")
        if v in self.adj[u]:
            if validated and not self.adj[u][v]:
                self.adj[u][v] = True
                self.adj[v][u] = True
            return
        self.adj[u][v] = validated
        self.adj[v][u] = validated
        self._uf.union(u, v)

    def _remove_edge(self, u: int, v: int) -> None:
        del self.adj[u][v]
        del self.adj[v][u]
        self._uf_dirty = True

    def _components(self) -> UnionFind:
        if self._uf_dirty:
            uf = UnionFind(self._n)
            for u in range(self._n):
                for v in self.adj[u]:
                    if v > u:
                        uf.union(u, v)
            self._uf = uf
            self._uf_dirty = False
        return self._uf

    def same_component(self, u: int, v: int) -> bool:
        return self._components().same(u, v)

    def component_root(self, v: int) -> int:
        return self._components().find(v)

    @property
    def component_count(self) -> int:
        return self._components().count

    def connected_component(self, v: int) -> set[int]:
        """All vertices sharing v's component (consistent with union-find)."""
        if not 0 <= v < self._n:
            raise IndexError(f"vertex {v} out of range")
        uf = self._components()
        root = uf.find(v)
        return {u for u in range(self._n) if uf.find(u) == root}

    def vertices_within(self, center, r: float) -> np.ndarray:
        """Ids of vertices strictly closer than r to center, ascending."""
        if self._n == 0:
            return np.empty(0, dtype=int)
        center = np.asarray(center, dtype=float)
        d2 = np.sum((self.coords_array() - center) ** 2, axis=1)
        return np.nonzero(d2 < r * r)[0]

    def dijkstra(self, source: int, weight=None) -> tuple[np.ndarray, np.ndarray]:
        """Distances and predecessor array from source over all stored edges.

        weight(u, v) defaults to Euclidean length.  Deterministic: ties pop
        lowest vertex id first.
        """
        dist = np.full(self._n, np.inf)
        prev = np.full(self._n, -1, dtype=int)
        dist[source] = 0.0
        heap = [(0.0, source)]
        done = np.zeros(self._n, dtype=bool)
        while heap:
            d, u = heapq.heappop(heap)
            if done[u]:
                continue
            done[u] = True
            for v in self.adj[u]:
                if done[v]:
                    continue
                w = (
                    weight(u, v)
                    if weight is not None
                    else float(np.linalg.norm(self._coords[u] - self._coords[v]))
                )
                nd = d + w
                if nd < dist[v]:
                    dist[v] = nd
                    prev[v] = u
                    heapq.heappush(heap, (nd, v))
        return dist, prev

    def find_path(self, start: int, goal: int, validator=None) -> list[int] | None:
        """Shortest vertex path start->goal by configuration-space length,
        or None if they are disconnected.

        With a validator, edges not yet marked validated are checked lazily
        when they appear on a candidate shortest path; failing edges are
        removed and the search repeats.
        """
        if not (0 <= start < self._n and 0 <= goal < self._n):
            raise IndexError("start/goal vertex out of range")
        while True:
            dist, prev = self.dijkstra(start)
            if not math.isfinite(dist[goal]):
                return None
            path = [goal]
            while path[-1] != start:
                path.append(int(prev[path[-1]]))
            path.reverse()
            if validator is None:
                return path
            bad = []
            for u, v in zip(path, path[1:]):
                if self.adj[u][v]:
                    continue
                if validator(self._coords[u], self._coords[v]):
                    self.adj[u][v] = True
                    self.adj[v][u] = True
                else:
                    bad.append((u, v))
            if not bad:
                return path
            for u, v in bad:
                self._remove_edge(u, v)

    def path_length(self, ids: list[int]) -> float:
        return float(
            sum(
                np.linalg.norm(self._coords[u] - self._coords[v])
                for u, v in zip(ids, ids[1:])
            )
        )

    def copy(self) -> "Roadmap":
        g = Roadmap(self.dim)
        g._coords = self._coords[: self._n].copy()
        g._n = self._n
        g.adj = [dict(d) for d in self.adj]
        uf = UnionFind(self._n)
        uf.parent = list(self._components().parent)
        uf.count = self._uf.count
        g._uf = uf
        return g

    def to_dict(self) -> dict:
        edges = [[u, v] for u in range(self._n) for v in self.adj[u] if v > u]
        return {"vertices": self.coords_array().tolist(), "edges": edges}


def build_sparse_graph(
    env: Environment,
    robot: ArmModel | None,
    n: int,
    connect_radius: float,
    sequence: str = "halton",
    *,
    seed: int = 0,
    edge_resolution: float = 0.25,
    eager: bool | None = None,
) -> Roadmap:
    """Roadmap of n collision-free vertices drawn from a deterministic
    Halton sequence (or a seeded uniform stream), with edges between all
    pairs strictly closer than connect_radius.

    Edges are collision-checked eagerly in 2-D; in the 7-D arm space they
    are stored unvalidated by default and checked lazily during search,
    where collision tests are far more expensive.
    """
    if n < 2:
        raise ValueError("need at least 2 vertices")
    if sequence not in ("halton", "seeded-uniform"):
        raise ValueError(f"unknown sequence {sequence!r}")
    dim = robot_dim(robot)
    if eager is None:
        eager = dim == 2
    lo, hi = config_bounds(env, robot)
    checker = CollisionChecker(env, robot, edge_resolution)
    g = Roadmap(dim)

    max_draws = 100 * n
    drawn = 0
    batch = max(64, n)
    rng = stream(seed, "sparse-graph") if sequence == "seeded-uniform" else None
    while g.n_vertices < n:
        if drawn >= max_draws:
            raise RuntimeError(
                f"could not find {n} free vertices in {max_draws} draws; "
                "environment too cluttered"
            )
        take = min(batch, max_draws - drawn)
        if sequence == "halton":
            unit = halton(take, dim, start_index=drawn + 1)
        else:
            unit = rng.random((take, dim))
        drawn += take
        pts = lo + unit * (hi - lo)
        free = configs_free(env, robot, pts)
        for q in pts[free]:
            if g.n_vertices < n:
                g.add_vertex(q)

    coords = g.coords_array()
    d2 = np.sum((coords[:, None, :] - coords[None, :, :]) ** 2, axis=2)
    r2 = connect_radius * connect_radius
    for u in range(n):
        for v in range(u + 1, n):
            if d2[u, v] < r2:
                if eager:
                    if checker.edge_free(coords[u], coords[v]):
                        g.add_edge(u, v, validated=True)
                else:
                    g.add_edge(u, v, validated=False)
    return g
