"""Exit criteria. Every check is exact; one PASS/FAIL line per criterion is printed.

Run alone with ``pytest tests/test_acceptance.py -v``.
"""
import time
from fractions import Fraction

import pytest

from dispheres.oracle import build_grid, dihomotopy_classes
from dispheres.verify import (
    check_conditions,
    check_disjointness,
    check_homotopy,
    check_oracle_agreement,
    check_partition,
    check_single_planner_insufficiency,
    check_structure,
)

SEED = 20261016
SAMPLES = 100_000


@pytest.fixture
def report(capsys):
    def emit(criterion, ok, detail=""):
        with capsys.disabled():
            print(f"\nACCEPTANCE {criterion}: {'PASS' if ok else 'FAIL'} {detail}".rstrip())
        return ok

    return emit


def test_c1_gamma_decision_matches_oracle(report):
    start = time.perf_counter()
    results = [check_oracle_agreement(n, m) for n in (1, 2, 3) for m in (1, 2, 3, 4)]
    elapsed = time.perf_counter() - start
    pairs = sum(r.counters["pairs"] for r in results)
    bad = sum(r.counters["disagreements"] for r in results)
    ok = all(r.passed for r in results) and elapsed < 120
    assert report("1 gamma-vs-oracle", ok, f"pairs={pairs} disagreements={bad} time={elapsed:.1f}s")


def test_c2_conditions_match_geometry(report):
    results = [check_conditions(n, SAMPLES, SEED) for n in range(1, 6)]
    mismatches = sum(r.counters["mismatches"] + r.counters["kernel_mismatches"] for r in results)
    violations = [r.counters["identity_violations"] + r.counters["reversal_violations"] for r in results]
    ok = all(r.passed for r in results) and all(v > 0 for v in violations)
    assert report("2 condition/geometry", ok, f"samples={5 * SAMPLES} mismatches={mismatches}")


def test_c3_conditions_disjoint_on_gamma(report):
    results = [check_disjointness(n, SAMPLES, SEED) for n in range(1, 6)]
    both = sum(r.counters["sampled"]["both_conditions"] for r in results)
    exhaustive = sum(r.counters["exhaustive"]["pairs"] for r in results if "exhaustive" in r.counters)
    ok = all(r.passed for r in results) and both > 0
    assert report("3 disjointness", ok, f"both-condition pairs={both} exhaustive pairs={exhaustive}")


def test_c4_partition_is_sound(report):
    results = [check_partition(n, SAMPLES, SEED) for n in range(1, 6)]
    failures = sum(r.counters["failures"] + r.counters["kernel_failures"] for r in results)
    a2 = sum(r.counters["A2"] for r in results)
    ok = all(r.passed for r in results) and a2 > 0
    assert report("4 partition soundness", ok, f"reachable samples={5 * SAMPLES} A2={a2} failures={failures}")


def test_c5_single_planner_insufficient(report):
    result = check_single_planner_insufficiency((2, 4))
    c = result.counters
    ok = (result.passed and c["identity_fails_on_left"] and c["reversal_fails_on_bottom"]
          and all(c["halfsquare_confinement"].values())
          and Fraction(c["midpoint_distance_squared"]) == 2)
    assert report("5 single-planner insufficiency", ok,
                  f"confinement={c['halfsquare_confinement']} squared midpoint distance={c['midpoint_distance_squared']}")


def test_c6_fiber_disconnected(report):
    start = time.perf_counter()
    counts = {}
    for m in (1, 2, 3, 4):
        counts[f"n1,m{m}"] = dihomotopy_classes(build_grid(1, m), (0, 0), (m, m))
    for m in (2, 4):
        g = build_grid(2, m)
        for k in range(1, m):
            counts[f"n2,m{m},x={k}/{m}"] = dihomotopy_classes(g, (0, 0, k), (m, m, k))
    g = build_grid(2, 4)
    same = dihomotopy_classes(g, (0, 0, 2), (0, 0, 2))
    elapsed = time.perf_counter() - start
    ok = all(c == 2 for c in counts.values()) and same == 1 and elapsed < 30
    assert report("6 fiber disconnectedness", ok, f"classes={sorted(set(counts.values()))} x=y->{same} "
                                                  f"time={elapsed:.1f}s")


def test_c7_contraction_homotopy(report):
    result = check_homotopy(2, 1000, SEED)
    assert report("7 contraction homotopy", result.passed,
                  " ".join(f"{k}={v}" for k, v in result.counters.items()))


def test_c8_structural_counts(report):
    results = [check_structure(n, m) for n in (1, 2, 3) for m in (1, 2, 3, 4)]
    ok = all(r.passed for r in results)
    assert report("8 structural counts", ok, f"grids={len(results)}")
