"""Hot loops on integer-scaled coordinates, compiled when available.

The Cython extension ``dispheres._speedups`` is used if it imports and
``DISPHERES_PURE_PYTHON`` is unset; otherwise the pure-Python twin in
``dispheres._fallback`` is used. ``BACKEND`` names the active one.
Scalar calls whose numerators overflow 64 bits drop to the Python twin.
"""
from __future__ import annotations

import os
from types import ModuleType

import numpy as np

from . import _fallback

_compiled: ModuleType | None
try:
    from . import _speedups as _compiled
except ImportError:  # extension not built
    _compiled = None

if _compiled is not None and not os.environ.get("DISPHERES_PURE_PYTHON"):
    _impl: ModuleType = _compiled
    BACKEND = "cython"
else:
    _impl = _fallback
    BACKEND = "python"


def available_backends() -> dict[str, ModuleType]:
    backends = {"python": _fallback}
    if _compiled is not None:
        backends["cython"] = _compiled
    return backends


def violates_witness(xs, ys, den: int, order) -> int:
    try:
        return _impl.violates_witness(xs, ys, den, order)
    except OverflowError:
        return _fallback.violates_witness(xs, ys, den, order)


def staircase_leaves(xs, ys, den: int, order) -> bool:
    try:
        return _impl.staircase_leaves(xs, ys, den, order)
    except OverflowError:
        return _fallback.staircase_leaves(xs, ys, den, order)


def reachable(xs, ys, den: int) -> bool:
    try:
        return _impl.reachable(xs, ys, den)
    except OverflowError:
        return _fallback.reachable(xs, ys, den)


def _rows(X, Y):
    X = np.ascontiguousarray(X, dtype=np.int64)
    Y = np.ascontiguousarray(Y, dtype=np.int64)
    if X.shape != Y.shape or X.ndim != 2:
        raise ValueError(f"expected matching 2-D arrays, got {X.shape} and {Y.shape}")
    return X, Y, np.zeros(X.shape[0], dtype=np.uint8)


def batch_violates(X, Y, den: int, order, backend: ModuleType | None = None) -> np.ndarray:
    X, Y, out = _rows(X, Y)
    (backend or _impl).batch_violates(X, Y, den, np.ascontiguousarray(order, dtype=np.int64), out)
    return out.astype(bool)


def batch_staircase_leaves(X, Y, den: int, order, backend: ModuleType | None = None) -> np.ndarray:
    X, Y, out = _rows(X, Y)
    (backend or _impl).batch_staircase_leaves(X, Y, den, np.ascontiguousarray(order, dtype=np.int64), out)
    return out.astype(bool)


def batch_reachable(X, Y, den: int, backend: ModuleType | None = None) -> np.ndarray:
    X, Y, out = _rows(X, Y)
    (backend or _impl).batch_reachable(X, Y, den, out)
    return out.astype(bool)


def batch_plan_on_boundary(X, Y, den: int, backend: ModuleType | None = None) -> np.ndarray:
    X, Y, out = _rows(X, Y)
    (backend or _impl).batch_plan_on_boundary(X, Y, den, out)
    return out.astype(bool)


def reach_closure(indptr, indices, backend: ModuleType | None = None) -> np.ndarray:
    indptr = np.ascontiguousarray(indptr, dtype=np.int64)
    indices = np.ascontiguousarray(indices, dtype=np.int64)
    nv = indptr.shape[0] - 1
    out = np.zeros((nv, nv), dtype=np.uint8)
    (backend or _impl).reach_closure(indptr, indices, out)
    return out.astype(bool)
