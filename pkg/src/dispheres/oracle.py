"""Brute-force ground truth on the discretized sphere.

The boundary of the cube is sampled at the lattice (1/m)Z^(n+1); directed
edges are unit steps along one axis whose segment stays on the boundary.
Reachability here is plain graph search, path spaces are enumerated
exhaustively and dihomotopy classes are counted with union-find over
elementary square flips. None of it uses the pattern conditions of
:mod:`dispheres.planner`, which it exists to check.
"""
from __future__ import annotations

import itertools
import os
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterator, Sequence

import numpy as np

from . import kernels
from .core import Point
from .errors import GuardrailExceeded, ParameterError, VertexLookupError

Vertex = tuple[int, ...]

DEFAULT_PATH_CAP = 10**6


def path_cap() -> int:
    """Enumeration cap, overridable with ``DISPHERES_GUARDRAIL_PATHS``."""
    raw = os.environ.get("DISPHERES_GUARDRAIL_PATHS")
    return int(raw) if raw else DEFAULT_PATH_CAP


def expected_vertex_count(n: int, m: int) -> int:
    return (m + 1) ** (n + 1) - (m - 1) ** (n + 1)


@dataclass(frozen=True, eq=False)
class GridGraph:
    n: int
    m: int
    vertices: tuple[Vertex, ...]
    successors: dict[Vertex, tuple[Vertex, ...]] = field(repr=False)

    def is_pinned(self, v: int) -> bool:
        return v == 0 or v == self.m

    @cached_property
    def index(self) -> dict[Vertex, int]:
        return {v: i for i, v in enumerate(self.vertices)}

    @property
    def edges(self) -> Iterator[tuple[Vertex, Vertex]]:
        for u in self.vertices:
            for v in self.successors[u]:
                yield u, v

    @property
    def edge_count(self) -> int:
        return sum(len(s) for s in self.successors.values())

    def __contains__(self, v) -> bool:
        return tuple(v) in self.successors

    def check_vertex(self, v: Sequence[int]) -> Vertex:
        v = tuple(int(c) for c in v)
        if v not in self.successors:
            raise VertexLookupError(f"{v} is not a vertex of the grid (n={self.n}, m={self.m})",
                                    vertex=list(v))
        return v

    def to_point(self, v: Vertex) -> Point:
        return Point(Fraction(c, self.m) for c in v)

    def vertex_of(self, p: Point) -> Vertex:
        """Lattice coordinates of ``p``; fails unless every coordinate is a multiple of 1/m."""
        coords = []
        for c in p.coords:
            scaled = c * self.m
            if scaled.denominator != 1:
                raise VertexLookupError(f"{p} is not on the 1/{self.m} lattice")
            coords.append(int(scaled))
        return self.check_vertex(coords)

    def csr(self) -> tuple[np.ndarray, np.ndarray]:
        indptr = [0]
        indices = []
        for u in self.vertices:
            indices.extend(self.index[v] for v in self.successors[u])
            indptr.append(len(indices))
        return np.asarray(indptr, dtype=np.int64), np.asarray(indices, dtype=np.int64)

    @cached_property
    def closure(self) -> np.ndarray:
        """``closure[i, j]`` is True iff vertex j is reachable from vertex i."""
        indptr, indices = self.csr()
        return kernels.reach_closure(indptr, indices)


def build_grid(n: int, m: int) -> GridGraph:
    if n < 1:
        raise ParameterError(f"dimension n must be >= 1, got {n}", parameter="n")
    if m < 1:
        raise ParameterError(f"resolution m must be >= 1, got {m}", parameter="m")
    size = n + 1
    pinned = (0, m)
    vertices = tuple(
        v for v in itertools.product(range(m + 1), repeat=size) if any(c in pinned for c in v)
    )
    successors = {}
    for u in vertices:
        out = []
        for i in range(size):
            if u[i] == m:
                continue
            # the step moves axis i only; it stays on the boundary iff another axis is pinned
            if any(u[j] in pinned for j in range(size) if j != i):
                out.append(u[:i] + (u[i] + 1,) + u[i + 1:])
        successors[u] = tuple(out)
    return GridGraph(n, m, vertices, successors)


def oracle_reach(g: GridGraph, x: Sequence[int], y: Sequence[int]) -> bool:
    """Breadth-first search from x along directed edges."""
    x, y = g.check_vertex(x), g.check_vertex(y)
    if x == y:
        return True
    seen = {x}
    queue = deque([x])
    while queue:
        u = queue.popleft()
        for v in g.successors[u]:
            if v == y:
                return True
            if v not in seen:
                seen.add(v)
                queue.append(v)
    return False


def reachable_from(g: GridGraph, x: Sequence[int], strict: bool = False) -> set[Vertex]:
    """All vertices reachable from x; with ``strict``, only via nonempty paths."""
    x = g.check_vertex(x)
    seen = set() if strict else {x}
    queue = deque([x])
    while queue:
        u = queue.popleft()
        for v in g.successors[u]:
            if v not in seen:
                seen.add(v)
                queue.append(v)
    return seen


@dataclass(frozen=True)
class LatticeDipath:
    vertices: tuple[Vertex, ...]

    @property
    def start(self) -> Vertex:
        return self.vertices[0]

    @property
    def end(self) -> Vertex:
        return self.vertices[-1]

    @property
    def steps(self) -> tuple[int, ...]:
        """Axis moved by each edge."""
        out = []
        for u, v in zip(self.vertices, self.vertices[1:]):
            out.append(next(i for i, (a, b) in enumerate(zip(u, v)) if a != b))
        return tuple(out)

    def is_valid(self, g: GridGraph) -> bool:
        return all(v in g.successors[u] for u, v in zip(self.vertices, self.vertices[1:]))

    def __len__(self) -> int:
        return len(self.vertices) - 1


def enumerate_dipaths(g: GridGraph, x: Sequence[int], y: Sequence[int],
                      cap: int | None = None) -> list[LatticeDipath]:
    """Every lattice dipath from x to y, in lexicographic order of step axes."""
    cap = path_cap() if cap is None else cap
    x, y = g.check_vertex(x), g.check_vertex(y)
    if any(a > b for a, b in zip(x, y)):
        raise ParameterError(f"{x} is not coordinatewise below {y}")
    target = g.index[y]
    closure = g.closure
    index = g.index
    found: list[LatticeDipath] = []
    route = [x]

    def extend(u: Vertex) -> None:
        if u == y:
            if len(found) >= cap:
                raise GuardrailExceeded(
                    f"more than {cap} dipaths from {x} to {y}", guardrail="paths", reached=cap + 1
                )
            found.append(LatticeDipath(tuple(route)))
            return
        for v in g.successors[u]:  # successors are generated in axis order
            if closure[index[v], target]:
                route.append(v)
                extend(v)
                route.pop()

    extend(x)
    return found


class UnionFind:
    def __init__(self, size: int) -> None:
        self.parent = list(range(size))
        self.rank = [0] * size
        self.components = size

    def find(self, a: int) -> int:
        root = a
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[a] != root:
            self.parent[a], a = root, self.parent[a]
        return root

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self.rank[ra] < self.rank[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        if self.rank[ra] == self.rank[rb]:
            self.rank[ra] += 1
        self.components -= 1
        return True


def square_on_boundary(g: GridGraph, corner: Vertex, i: int, j: int) -> bool:
    """Whether the unit square at ``corner`` spanned by axes i, j lies on the boundary."""
    return any(g.is_pinned(c) for k, c in enumerate(corner) if k != i and k != j)


def dihomotopy_classes(g: GridGraph, x: Sequence[int], y: Sequence[int],
                       cap: int | None = None) -> int:
    paths = enumerate_dipaths(g, x, y, cap)
    by_steps = {p.steps: idx for idx, p in enumerate(paths)}
    uf = UnionFind(len(paths))
    for idx, p in enumerate(paths):
        steps = p.steps
        for pos in range(len(steps) - 1):
            a, b = steps[pos], steps[pos + 1]
            if a == b or not square_on_boundary(g, p.vertices[pos], a, b):
                continue
            flipped = steps[:pos] + (b, a) + steps[pos + 2:]
            uf.union(idx, by_steps[flipped])
    return uf.components


def _confined(paths: list[LatticeDipath], allowed) -> bool:
    return all(allowed(v) for p in paths for v in p.vertices)


def verify_halfsquare_confinement(g: GridGraph, t_index: int, x_index: int,
                                  cap: int | None = None) -> bool:
    """Check both L-shaped confinements in the slice z = x and that their t -> 0 limits differ.

    From (t, 0, x) every dipath to (1, 1, x) runs along the bottom edge then up
    the right edge; from (0, t, x) it runs up the left edge then along the top.
    """
    if g.n != 2:
        raise ParameterError(f"half-square check needs n = 2, got n = {g.n}")
    m = g.m
    if not 0 < t_index < m:
        raise ParameterError(f"t_index must satisfy 0 < t_index < {m}, got {t_index}")
    if not 0 < x_index < m:
        raise ParameterError(f"x_index must satisfy 0 < x_index < {m}, got {x_index}")
    top = (m, m, x_index)

    def lower_right(v):
        return v[2] == x_index and (v[1] == 0 or v[0] == m)

    def upper_left(v):
        return v[2] == x_index and (v[0] == 0 or v[1] == m)

    first = enumerate_dipaths(g, (t_index, 0, x_index), top, cap)
    second = enumerate_dipaths(g, (0, t_index, x_index), top, cap)
    if not first or not second:
        return False
    if not (_confined(first, lower_right) and _confined(second, upper_left)):
        return False
    routes = limit_routes(g, first[0], second[0])
    if not all(r.is_valid(g) for r in routes):
        return False
    mid_a, mid_b = (r.vertices[len(r) // 2] for r in routes)
    return mid_a == (m, 0, x_index) and mid_b == (0, m, x_index) and mid_a != mid_b


def limit_routes(g: GridGraph, first: LatticeDipath, second: LatticeDipath):
    """Extend dipaths from (t, 0, x) and (0, t, x) back to (0, 0, x), the t -> 0 limit."""
    out = []
    for path, axis in ((first, 0), (second, 1)):
        start = path.start
        lead = []
        for k in range(start[axis]):
            v = list(start)
            v[axis] = k
            lead.append(tuple(v))
        out.append(LatticeDipath(tuple(lead) + path.vertices))
    return tuple(out)


def limit_midpoint_distance_squared(x: Fraction = Fraction(1, 2)) -> Fraction:
    """Squared distance between the midpoints (1, 0, x) and (0, 1, x) of the two limit routes."""
    a = (Fraction(1), Fraction(0), x)
    b = (Fraction(0), Fraction(1), x)
    return sum((p - q) ** 2 for p, q in zip(a, b))
