"""Pure-Python twins of the compiled kernels in ``_speedups.pyx``.

Same signatures, same results. Coordinates are integer numerators over a
shared denominator ``den``; Python ints never overflow, so this module also
serves inputs too large for the 64-bit kernels.
"""
from __future__ import annotations


def _interior(v, den):
    return 0 < v < den


def _on_boundary(p, den):
    return any(not (0 < v < den) for v in p)


def violates_witness(xs, ys, den, order):
    size = len(xs)
    for p in range(size):
        c = order[p]
        if xs[c] >= ys[c]:
            continue
        if all(_interior(ys[order[q]], den) for q in range(p)) and all(
            _interior(xs[order[q]], den) for q in range(p + 1, size)
        ):
            return c
    return -1


def staircase_leaves(xs, ys, den, order):
    cur = list(xs)
    if not _on_boundary(cur, den):
        return True
    for c in order:
        if cur[c] != ys[c]:
            if not any(not _interior(v, den) for k, v in enumerate(cur) if k != c):
                return True
            cur[c] = ys[c]
            if not _on_boundary(cur, den):
                return True
    return False


def reachable(xs, ys, den):
    if not (_on_boundary(xs, den) and _on_boundary(ys, den)):
        return False
    if any(a > b for a, b in zip(xs, ys)):
        return False
    size = len(xs)
    if violates_witness(xs, ys, den, range(size)) < 0:
        return True
    return violates_witness(xs, ys, den, range(size - 1, -1, -1)) < 0


def batch_violates(X, Y, den, order, out):
    order = [int(c) for c in order]
    for r, (x, y) in enumerate(zip(X.tolist(), Y.tolist())):
        out[r] = violates_witness(x, y, den, order) >= 0


def batch_staircase_leaves(X, Y, den, order, out):
    order = [int(c) for c in order]
    for r, (x, y) in enumerate(zip(X.tolist(), Y.tolist())):
        out[r] = staircase_leaves(x, y, den, order)


def batch_reachable(X, Y, den, out):
    for r, (x, y) in enumerate(zip(X.tolist(), Y.tolist())):
        out[r] = reachable(x, y, den)


def batch_plan_on_boundary(X, Y, den, out):
    """1 where the planner's chosen staircase stays on the boundary."""
    size = X.shape[1]
    ident = list(range(size))
    rev = ident[::-1]
    for r, (x, y) in enumerate(zip(X.tolist(), Y.tolist())):
        order = ident if violates_witness(x, y, den, ident) < 0 else rev
        out[r] = not staircase_leaves(x, y, den, order)


def reach_closure(indptr, indices, out):
    """Depth-first search from every vertex of a CSR digraph; ``out[s, v] = 1`` iff v is reachable."""
    indptr = indptr.tolist()
    indices = indices.tolist()
    nv = len(indptr) - 1
    for s in range(nv):
        seen = {s}
        stack = [s]
        while stack:
            u = stack.pop()
            for v in indices[indptr[u]:indptr[u + 1]]:
                if v not in seen:
                    seen.add(v)
                    stack.append(v)
        out[s, sorted(seen)] = 1
