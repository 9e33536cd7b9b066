"""Verification pipeline: every analytic claim checked against brute force.

Each ``check_*`` function returns a :class:`CheckResult` with deterministic
counters, so a fixed seed gives byte-identical reports. The CLI ``verify``
command and the acceptance tests both run these.
"""
from __future__ import annotations

import itertools
import os
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

import numpy as np

from . import kernels
from .core import (
    Dipath,
    Point,
    evaluate,
    is_monotone,
    on_boundary,
    pattern_of,
    stays_on_boundary,
)
from .errors import DispheresError, GuardrailExceeded
from .oracle import (
    build_grid,
    dihomotopy_classes,
    enumerate_dipaths,
    expected_vertex_count,
    limit_midpoint_distance_squared,
    oracle_reach,
    reachable_from,
    verify_halfsquare_confinement,
)
from .planner import (
    IDENTITY,
    REVERSAL,
    PlannerOrder,
    classify,
    contract_homotopy,
    is_reachable,
    plan,
    staircase,
    violation_witness,
)

DEFAULT_MAX_VERTICES = 2000
SAMPLE_DENOMINATOR = 12


def max_vertices() -> int:
    raw = os.environ.get("DISPHERES_GUARDRAIL_VERTICES")
    return int(raw) if raw else DEFAULT_MAX_VERTICES


@dataclass
class CheckResult:
    name: str
    passed: bool
    counters: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"name": self.name, "passed": self.passed, "counters": self.counters}


# -- sampling ---------------------------------------------------------------


def sample_boundary_pairs(rng: np.random.Generator, size: int, count: int,
                          den: int = SAMPLE_DENOMINATOR) -> tuple[np.ndarray, np.ndarray]:
    """Random ordered pairs of boundary points as numerators over ``den``.

    Each row draws its own interior probability so that both mostly-pinned
    and mostly-interior patterns occur, and equal interior coordinates are
    planted on purpose (they decide strictness in the pattern conditions).
    """
    p_int = rng.uniform(0.3, 0.95, size=(count, 1))

    def draw():
        u = rng.random((count, size))
        interior = rng.integers(1, den, size=(count, size))
        edge = np.where(rng.random((count, size)) < 0.5, 0, den)
        return np.where(u < p_int, interior, edge)

    a, b = draw(), draw()
    ties = rng.random((count, size)) < 0.15
    b = np.where(ties, a, b)
    lo, hi = np.minimum(a, b), np.maximum(a, b)
    rows = np.arange(count)
    lo_free = ~np.any((lo == 0) | (lo == den), axis=1)
    col = rng.integers(0, size, size=count)
    lo[rows[lo_free], col[lo_free]] = 0
    hi_free = ~np.any((hi == 0) | (hi == den), axis=1)
    col = rng.integers(0, size, size=count)
    hi[rows[hi_free], col[hi_free]] = den
    return lo.astype(np.int64), hi.astype(np.int64)


def sample_reachable_pairs(rng: np.random.Generator, size: int, count: int,
                           den: int = SAMPLE_DENOMINATOR) -> tuple[np.ndarray, np.ndarray]:
    xs, ys, have = [], [], 0
    while have < count:
        X, Y = sample_boundary_pairs(rng, size, count, den)
        keep = kernels.batch_reachable(X, Y, den)
        xs.append(X[keep])
        ys.append(Y[keep])
        have += int(keep.sum())
    return np.concatenate(xs)[:count], np.concatenate(ys)[:count]


def row_point(row, den: int) -> Point:
    return Point(Fraction(int(v), den) for v in row)


def sample_dipath(rng: np.random.Generator, size: int, den: int = 8) -> Dipath:
    """Random monotone PL path in [0, 1]^size with strictly increasing stages."""
    segments = int(rng.integers(0, 5))
    if segments == 0:
        return Dipath([row_point(rng.integers(0, den + 1, size), den)], [0])
    coords = np.sort(rng.integers(0, den + 1, size=(segments + 1, size)), axis=0)
    cuts = np.sort(rng.choice(np.arange(1, 10), size=segments - 1, replace=False))
    stages = [Fraction(0)] + [Fraction(int(c), 10) for c in cuts] + [Fraction(1)]
    return Dipath([row_point(r, den) for r in coords], stages)


# -- independent evaluators -------------------------------------------------


def staircase_point(x: Point, y: Point, order: tuple[int, ...], u: Fraction) -> tuple[Fraction, ...]:
    """Point at parameter u of the staircase from x to y, straight from the definition."""
    size = len(order)
    pos = min(int(u * size), size - 1)
    lam = u * size - pos
    out = list(x.coords)
    for q in range(pos):
        out[order[q]] = y.coords[order[q]]
    c = order[pos]
    out[c] = x.coords[c] + (y.coords[c] - x.coords[c]) * lam
    return tuple(out)


def homotopy_point(gamma: Dipath, t: Fraction, s: Fraction, order: PlannerOrder = IDENTITY):
    """The three-branch formula for H(gamma, t)(s), evaluated pointwise."""
    lo, hi = t / 2, 1 - t / 2
    if s <= lo or s >= hi:
        return evaluate(gamma, s).coords
    perm = order.resolve(gamma.size)
    return staircase_point(evaluate(gamma, lo), evaluate(gamma, hi), perm, (s - lo) / (1 - t))


def max_slope(gamma: Dipath) -> Fraction:
    best = Fraction(0)
    for p, q, s0, s1 in gamma.segments():
        if s1 > s0:
            best = max(best, max(b - a for a, b in zip(p.coords, q.coords)) / (s1 - s0))
    return best


def sup_distance(f: Callable, g: Callable, samples) -> Fraction:
    return max(max(abs(a - b) for a, b in zip(f(s), g(s))) for s in samples)


# -- checks -------------------------------------------------------------------


def check_structure(n: int, m: int) -> CheckResult:
    g = build_grid(n, m)
    expected = expected_vertex_count(n, m)
    explicit = sum(
        1 for v in itertools.product(range(m + 1), repeat=n + 1) if any(c in (0, m) for c in v)
    )
    acyclic = all(sum(v) == sum(u) + 1 for u, v in g.edges)
    midpoints = all(
        on_boundary(Point(Fraction(a + b, 2 * m) for a, b in zip(u, v))) for u, v in g.edges
    )
    no_return = all(x not in reachable_from(g, x, strict=True) for x in g.vertices)
    return CheckResult(
        f"structure[n={n},m={m}]",
        len(g.vertices) == expected == explicit and acyclic and midpoints and no_return,
        {"vertices": len(g.vertices), "expected_vertices": expected, "edges": g.edge_count,
         "acyclic": acyclic, "edge_midpoints_on_boundary": midpoints, "loop_free": no_return},
    )


def _guarded_grid(n: int, m: int):
    count = expected_vertex_count(n, m)
    limit = max_vertices()
    if count > limit:
        raise GuardrailExceeded(
            f"grid n={n}, m={m} has {count} vertices, above the limit {limit}",
            guardrail="DISPHERES_GUARDRAIL_VERTICES", reached=count,
        )
    return build_grid(n, m)


def check_oracle_agreement(n: int, m: int) -> CheckResult:
    """is_reachable against graph search, over every ordered vertex pair."""
    g = _guarded_grid(n, m)
    closure = g.closure
    index = g.index
    bfs_matches = all(
        closure[index[x]].sum() == len(reach) and all(closure[index[x], index[v]] for v in reach)
        for x in g.vertices
        for reach in [reachable_from(g, x)]
    )
    points = [g.to_point(v) for v in g.vertices]
    disagree = 0
    reachable = 0
    for i, x in enumerate(points):
        row = closure[i]
        for j, y in enumerate(points):
            r = is_reachable(x, y)
            reachable += r
            disagree += r != row[j]
    V = np.asarray(g.vertices, dtype=np.int64)
    nv = len(V)
    X = np.repeat(V, nv, axis=0)
    Y = np.tile(V, (nv, 1))
    kernel_disagree = int((kernels.batch_reachable(X, Y, m) != closure.reshape(-1)).sum())
    return CheckResult(
        f"oracle_agreement[n={n},m={m}]",
        bfs_matches and disagree == 0 and kernel_disagree == 0,
        {"pairs": nv * nv, "reachable": int(reachable), "disagreements": int(disagree),
         "kernel_disagreements": kernel_disagree, "closure_matches_bfs": bfs_matches},
    )


def check_planner_oracle(n: int, m: int) -> CheckResult:
    """Plans between grid points are grid routes the oracle accepts."""
    g = _guarded_grid(n, m)
    closure = g.closure
    failures = 0
    pairs = 0
    for i, u in enumerate(g.vertices):
        for j, v in enumerate(g.vertices):
            if not closure[i, j]:
                continue
            pairs += 1
            path = plan(g.to_point(u), g.to_point(v))
            if not _snaps_to_route(g, path):
                failures += 1
    return CheckResult(f"planner_oracle[n={n},m={m}]", failures == 0,
                       {"reachable_pairs": pairs, "failures": failures})


def _snaps_to_route(g, path: Dipath) -> bool:
    try:
        corners = [g.vertex_of(w) for w in path.waypoints]
    except DispheresError:
        return False
    for a, b in zip(corners, corners[1:]):
        moving = [i for i in range(len(a)) if a[i] != b[i]]
        if len(moving) > 1:
            return False
        cur = a
        while cur != b:
            i = moving[0]
            nxt = cur[:i] + (cur[i] + 1,) + cur[i + 1:]
            if nxt not in g.successors[cur]:
                return False
            cur = nxt
    return True


def check_conditions(n: int, samples: int, seed: int) -> CheckResult:
    """Pattern condition against the geometry of the staircase, both orders."""
    rng = np.random.default_rng([seed, n, 2])
    size = n + 1
    den = SAMPLE_DENOMINATOR
    X, Y = sample_boundary_pairs(rng, size, samples, den)
    mismatches = 0
    counts = {"identity_violations": 0, "reversal_violations": 0}
    for xr, yr in zip(X, Y):
        x, y = row_point(xr, den), row_point(yr, den)
        for order, key in ((IDENTITY, "identity_violations"), (REVERSAL, "reversal_violations")):
            v = violation_witness(x, y, order) is not None
            counts[key] += v
            mismatches += v == stays_on_boundary(staircase(x, y, order))
    kernel_mismatches = 0
    for order in (IDENTITY, REVERSAL):
        perm = order.resolve(size)
        kernel_mismatches += int(
            (kernels.batch_violates(X, Y, den, perm) != kernels.batch_staircase_leaves(X, Y, den, perm)).sum()
        )
    return CheckResult(
        f"conditions[n={n}]",
        mismatches == 0 and kernel_mismatches == 0,
        {"samples": samples, **counts, "mismatches": mismatches, "kernel_mismatches": kernel_mismatches},
    )


def _is_forbidden_pattern(x: Point, y: Point) -> bool:
    """(−⋯−0−⋯−, −⋯−1−⋯−) with the pinned slot shared."""
    px, py = str(pattern_of(x)), str(pattern_of(y))
    slots = [i for i, ch in enumerate(px) if ch != "−"]
    return (
        len(slots) == 1
        and px[slots[0]] == "0"
        and py[slots[0]] == "1"
        and all(ch == "−" for i, ch in enumerate(py) if i != slots[0])
    )


def _disjointness_tally(pairs) -> dict:
    tally = {"pairs": 0, "both_conditions": 0, "reachable_with_both": 0,
             "both_but_other_pattern": 0, "both_but_accepted": 0}
    for x, y in pairs:
        tally["pairs"] += 1
        u1 = violation_witness(x, y, IDENTITY) is not None
        u2 = violation_witness(x, y, REVERSAL) is not None
        r = is_reachable(x, y)
        if u1 and u2:
            tally["both_conditions"] += 1
            tally["reachable_with_both"] += r
            tally["both_but_accepted"] += r
            tally["both_but_other_pattern"] += not _is_forbidden_pattern(x, y)
    return tally


def pattern_pairs(size: int):
    """One concrete ordered boundary pair per pattern-and-strictness combination."""
    third = Fraction(1, 3)
    options = [(0, 0), (0, third), (0, 1), (third, third), (third, 2 * third), (third, 1), (1, 1)]
    for combo in itertools.product(options, repeat=size):
        x = Point(a for a, _ in combo)
        y = Point(b for _, b in combo)
        if on_boundary(x) and on_boundary(y):
            yield x, y


def check_disjointness(n: int, samples: int, seed: int) -> CheckResult:
    rng = np.random.default_rng([seed, n, 2])  # same stream as check_conditions
    den = SAMPLE_DENOMINATOR
    X, Y = sample_boundary_pairs(rng, n + 1, samples, den)
    sampled = _disjointness_tally((row_point(a, den), row_point(b, den)) for a, b in zip(X, Y))
    counters = {"sampled": sampled}
    bad = sampled["reachable_with_both"] + sampled["both_but_other_pattern"]
    if n <= 4:
        exhaustive = _disjointness_tally(pattern_pairs(n + 1))
        counters["exhaustive"] = exhaustive
        bad += exhaustive["reachable_with_both"] + exhaustive["both_but_other_pattern"]
        # every (−⋯−0−⋯−, −⋯−1−⋯−) realization: n+1 slots, 2^n strictness choices
        bad += exhaustive["both_conditions"] != (n + 1) * 2**n
    return CheckResult(f"disjointness[n={n}]", bad == 0, counters)


def check_partition(n: int, samples: int, seed: int) -> CheckResult:
    rng = np.random.default_rng([seed, n, 4])
    den = SAMPLE_DENOMINATOR
    X, Y = sample_reachable_pairs(rng, n + 1, samples, den)
    failures = 0
    labels = {"A1": 0, "A2": 0}
    for xr, yr in zip(X, Y):
        x, y = row_point(xr, den), row_point(yr, den)
        labels[classify(x, y).value] += 1
        path = plan(x, y)
        ok = (
            evaluate(path, 0) == x
            and evaluate(path, 1) == y
            and is_monotone(path)
            and stays_on_boundary(path)
        )
        failures += not ok
    kernel_failures = int((~kernels.batch_plan_on_boundary(X, Y, den)).sum())
    return CheckResult(
        f"partition[n={n}]",
        failures == 0 and kernel_failures == 0,
        {"samples": samples, **labels, "failures": failures, "kernel_failures": kernel_failures},
    )


def check_single_planner_insufficiency(ms=(2, 4)) -> CheckResult:
    half = Fraction(1, 2)
    left = (Point([0, half, half]), Point([1, 1, half]))
    bottom = (Point([half, 0, half]), Point([1, 1, half]))
    identity_fails = not stays_on_boundary(staircase(*left, IDENTITY))
    reversal_fails = not stays_on_boundary(staircase(*bottom, REVERSAL))
    both_reachable = is_reachable(*left) and is_reachable(*bottom)
    confinement = {}
    for m in ms:
        confinement[str(m)] = verify_halfsquare_confinement(build_grid(2, m), m // 2, m // 2)
    dist2 = limit_midpoint_distance_squared(half)
    return CheckResult(
        "single_planner_insufficiency",
        identity_fails and reversal_fails and both_reachable and all(confinement.values()) and dist2 == 2,
        {"identity_fails_on_left": identity_fails, "reversal_fails_on_bottom": reversal_fails,
         "both_reachable": both_reachable, "halfsquare_confinement": confinement,
         "midpoint_distance_squared": str(dist2)},
    )


def check_fiber_classes(n: int, m: int) -> CheckResult:
    g = build_grid(n, m)
    counters = {}
    ok = True
    if n == 1:
        c = dihomotopy_classes(g, (0, 0), (m, m))
        counters["corner_pair"] = c
        ok &= c == 2
    else:
        # (0, 0, k, ..., k) -> (m, m, k, ..., k): the fibre of the square slice
        for k in range(1, m):
            rest = (k,) * (n - 1)
            c = dihomotopy_classes(g, (0, 0) + rest, (m, m) + rest)
            counters[f"slice_{k}/{m}"] = c
            ok &= c == 2
    v = g.vertices[len(g.vertices) // 2]
    same = dihomotopy_classes(g, v, v)
    counters["self_pair"] = same
    ok &= same == 1
    return CheckResult(f"fiber_classes[n={n},m={m}]", bool(ok), counters)


def check_homotopy(size: int, samples: int, seed: int, steps: int = 10, s_samples: int = 16) -> CheckResult:
    rng = np.random.default_rng([seed, size, 7])
    ts = [Fraction(k, steps) for k in range(steps + 1)]
    tally = {"paths": samples, "endpoint_failures": 0, "monotone_failures": 0,
             "t0_failures": 0, "t1_failures": 0, "formula_mismatches": 0, "continuity_failures": 0}
    for _ in range(samples):
        gamma = sample_dipath(rng, size)
        start, end = evaluate(gamma, 0), evaluate(gamma, 1)
        bound = max_slope(gamma) * Fraction(size + 1, 2)
        paths = {t: contract_homotopy(gamma, t) for t in ts}
        for t, h in paths.items():
            tally["endpoint_failures"] += not (evaluate(h, 0) == start and evaluate(h, 1) == end)
            tally["monotone_failures"] += not is_monotone(h)
            grid = sorted({Fraction(k, s_samples) for k in range(s_samples + 1)} | {t / 2, 1 - t / 2})
            tally["formula_mismatches"] += any(
                evaluate(h, s).coords != homotopy_point(gamma, t, s) for s in grid
            )
        tally["t0_failures"] += paths[ts[0]] != staircase(start, end, IDENTITY)
        tally["t1_failures"] += paths[ts[-1]] != gamma
        grid = [Fraction(k, s_samples) for k in range(s_samples + 1)]
        for t0, t1 in zip(ts, ts[1:]):
            d = sup_distance(lambda s: evaluate(paths[t0], s).coords,
                             lambda s: evaluate(paths[t1], s).coords, grid)
            tally["continuity_failures"] += d > bound * (t1 - t0)
    passed = all(v == 0 for k, v in tally.items() if k != "paths")
    return CheckResult(f"homotopy[dim={size}]", passed, tally)


def run_verify(n: int, m: int, samples: int, seed: int) -> list[CheckResult]:
    """The full pipeline for one (n, m); raises GuardrailExceeded on oversize requests."""
    results = [
        check_structure(n, m),
        check_oracle_agreement(n, m),
        check_planner_oracle(n, m),
        check_conditions(n, samples, seed),
        check_disjointness(n, samples, seed),
        check_partition(n, samples, seed),
        check_homotopy(n + 1, max(1, samples // 100), seed),
        check_fiber_classes(n, m),
    ]
    if n == 2 and m >= 2:
        results.append(check_single_planner_insufficiency((m,)))
    return results
