import itertools
from fractions import Fraction

import numpy as np
import pytest

from dispheres.core import Point
from dispheres.errors import GuardrailExceeded, ParameterError, VertexLookupError
from dispheres.oracle import (
    build_grid,
    dihomotopy_classes,
    enumerate_dipaths,
    expected_vertex_count,
    limit_midpoint_distance_squared,
    oracle_reach,
    reachable_from,
    verify_halfsquare_confinement,
)


def matrix_closure(g):
    """Test oracle: repeated boolean squaring of the adjacency matrix."""
    idx = g.index
    nv = len(g.vertices)
    reach = np.eye(nv, dtype=bool)
    for u, v in g.edges:
        reach[idx[u], idx[v]] = True
    while True:
        nxt = (reach.astype(np.int64) @ reach.astype(np.int64)) > 0
        if (nxt == reach).all():
            return reach
        reach = nxt


def count_paths(g, x, y):
    """Test oracle: path counts by dynamic programming in coordinate-sum order."""
    ways = {x: 1}
    for u in sorted(g.vertices, key=sum):
        for v in g.successors[u]:
            ways[v] = ways.get(v, 0) + ways.get(u, 0)
    return ways.get(y, 0)


class TestBuildGrid:
    def test_unit_square(self):
        g = build_grid(1, 1)
        assert len(g.vertices) == 4
        assert g.edge_count == 4

    def test_square_m2(self):
        g = build_grid(1, 2)
        explicit = [v for v in itertools.product(range(3), repeat=2) if 0 in v or 2 in v]
        assert len(g.vertices) == len(explicit) == 8

    def test_cube_m2(self):
        g = build_grid(2, 2)
        assert len(g.vertices) == 26
        assert (1, 1, 1) not in g

    @pytest.mark.parametrize("n, m", [(n, m) for n in (1, 2, 3) for m in (1, 2, 3, 4)])
    def test_vertex_formula(self, n, m):
        g = build_grid(n, m)
        assert len(g.vertices) == expected_vertex_count(n, m)

    @pytest.mark.parametrize("n, m", [(1, 3), (2, 3), (3, 2)])
    def test_edges(self, n, m):
        g = build_grid(n, m)
        for u, v in g.edges:
            assert sum(v) == sum(u) + 1
            moved = [i for i in range(n + 1) if u[i] != v[i]]
            assert len(moved) == 1
            # midpoint is on the boundary: some other axis pinned
            assert any(u[j] in (0, m) for j in range(n + 1) if j != moved[0])

    @pytest.mark.parametrize("n, m", [(0, 2), (1, 0)])
    def test_bad_parameters(self, n, m):
        with pytest.raises(ParameterError):
            build_grid(n, m)


class TestOracleReach:
    def test_examples(self):
        g = build_grid(2, 2)
        assert oracle_reach(g, (0, 1, 1), (0, 1, 1))
        assert not oracle_reach(g, (0, 1, 1), (2, 1, 1))
        assert oracle_reach(g, (0, 0, 1), (2, 2, 1))

    def test_lookup_error(self):
        g = build_grid(2, 2)
        with pytest.raises(VertexLookupError):
            oracle_reach(g, (1, 1, 1), (2, 2, 2))
        with pytest.raises(LookupError):
            g.vertex_of(Point(["1/3", 0, 0]))
        assert g.vertex_of(Point(["1/2", 0, 1])) == (1, 0, 2)

    @pytest.mark.parametrize("n, m", [(1, 3), (2, 2), (2, 3), (3, 2)])
    def test_closure_matches_matrix_oracle(self, n, m):
        g = build_grid(n, m)
        assert (g.closure == matrix_closure(g)).all()
        for x in g.vertices[:: max(1, len(g.vertices) // 7)]:
            for y in g.vertices:
                assert oracle_reach(g, x, y) == g.closure[g.index[x], g.index[y]]

    @pytest.mark.parametrize("n, m", [(1, 4), (2, 3), (3, 2)])
    def test_loop_free(self, n, m):
        g = build_grid(n, m)
        for x in g.vertices:
            assert x not in reachable_from(g, x, strict=True)


class TestEnumerate:
    def test_trivial(self):
        g = build_grid(1, 2)
        paths = enumerate_dipaths(g, (0, 1), (0, 1))
        assert len(paths) == 1 and len(paths[0]) == 0

    def test_square(self):
        g = build_grid(1, 2)
        paths = enumerate_dipaths(g, (0, 0), (2, 2))
        assert [p.steps for p in paths] == [(0, 0, 1, 1), (1, 1, 0, 0)]

    def test_slice(self):
        g = build_grid(2, 2)
        paths = enumerate_dipaths(g, (0, 0, 1), (2, 2, 1))
        assert len(paths) == 2
        assert all(v[2] == 1 for p in paths for v in p.vertices)

    @pytest.mark.parametrize("n, m, x, y", [
        (2, 2, (0, 0, 0), (2, 2, 2)),
        (2, 3, (0, 1, 0), (3, 3, 2)),
        (3, 2, (0, 0, 0, 0), (2, 2, 2, 2)),
    ])
    def test_count_matches_dp(self, n, m, x, y):
        g = build_grid(n, m)
        paths = enumerate_dipaths(g, x, y)
        assert len(paths) == count_paths(g, x, y)
        assert len({p.vertices for p in paths}) == len(paths)
        assert all(p.is_valid(g) and p.start == x and p.end == y for p in paths)
        assert [p.steps for p in paths] == sorted(p.steps for p in paths)

    def test_cap(self):
        g = build_grid(2, 2)
        with pytest.raises(GuardrailExceeded) as info:
            enumerate_dipaths(g, (0, 0, 0), (2, 2, 2), cap=5)
        assert info.value.details["reached"] == 6

    def test_env_cap(self, monkeypatch):
        monkeypatch.setenv("DISPHERES_GUARDRAIL_PATHS", "1")
        with pytest.raises(GuardrailExceeded):
            enumerate_dipaths(build_grid(1, 2), (0, 0), (2, 2))

    def test_unordered(self):
        with pytest.raises(ParameterError):
            enumerate_dipaths(build_grid(1, 2), (2, 2), (0, 0))


class TestClasses:
    def test_self_pair(self):
        g = build_grid(2, 2)
        assert dihomotopy_classes(g, (0, 0, 1), (0, 0, 1)) == 1

    @pytest.mark.parametrize("m", [1, 2, 3, 4])
    def test_square_corner_pair(self, m):
        assert dihomotopy_classes(build_grid(1, m), (0, 0), (m, m)) == 2

    @pytest.mark.parametrize("m", [2, 4])
    def test_slice_pair(self, m):
        g = build_grid(2, m)
        for k in range(1, m):
            assert dihomotopy_classes(g, (0, 0, k), (m, m, k)) == 2

    def test_cube_corners_single_class(self):
        # the fibre between opposite corners of the 2-sphere is connected
        g = build_grid(2, 2)
        assert dihomotopy_classes(g, (0, 0, 0), (2, 2, 2)) == 1

    @pytest.mark.parametrize("n, m", [(1, 3), (2, 2)])
    def test_unique_path_means_one_class(self, n, m):
        g = build_grid(n, m)
        for x in g.vertices:
            for y in g.vertices:
                if g.closure[g.index[x], g.index[y]] and count_paths(g, x, y) == 1:
                    assert dihomotopy_classes(g, x, y) == 1


class TestHalfSquare:
    @pytest.mark.parametrize("m, t, x", [(4, 1, 2), (2, 1, 1), (4, 2, 2), (4, 3, 1)])
    def test_confined(self, m, t, x):
        assert verify_halfsquare_confinement(build_grid(2, m), t, x)

    @pytest.mark.parametrize("t, x", [(0, 1), (2, 1), (1, 0)])
    def test_bad_indices(self, t, x):
        with pytest.raises(ParameterError):
            verify_halfsquare_confinement(build_grid(2, 2), t, x)

    def test_needs_n2(self):
        with pytest.raises(ParameterError):
            verify_halfsquare_confinement(build_grid(1, 2), 1, 1)

    def test_midpoint_distance(self):
        assert limit_midpoint_distance_squared(Fraction(1, 2)) == 2
