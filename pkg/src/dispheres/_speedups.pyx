# Compiled kernels on integer-scaled coordinates.
#
# A point is a row of numerators over a shared denominator ``den``: a
# coordinate is pinned at 0 when it equals 0 and at 1 when it equals ``den``.
# Every function here mirrors one in ``_fallback.py``; the two must agree
# bit for bit (tests/test_kernels.py).
from libc.stdint cimport int64_t, uint8_t
from libc.stdlib cimport free, malloc

cimport cython


cdef inline bint _interior(int64_t v, int64_t den) noexcept nogil:
    return 0 < v < den


cdef inline bint _on_boundary(const int64_t* p, int size, int64_t den) noexcept nogil:
    cdef int i
    for i in range(size):
        if not _interior(p[i], den):
            return True
    return False


cdef inline bint _leq(const int64_t* x, const int64_t* y, int size) noexcept nogil:
    cdef int i
    for i in range(size):
        if x[i] > y[i]:
            return False
    return True


cdef int _violates(const int64_t* x, const int64_t* y, int64_t den,
                   const int64_t* order, int size) noexcept nogil:
    # coordinate index witnessing the condition, or -1
    cdef int p, q, c
    cdef bint ok
    for p in range(size):
        c = <int>order[p]
        if x[c] >= y[c]:
            continue
        ok = True
        for q in range(p):
            if not _interior(y[order[q]], den):
                ok = False
                break
        if ok:
            for q in range(p + 1, size):
                if not _interior(x[order[q]], den):
                    ok = False
                    break
        if ok:
            return c
    return -1


cdef int _violates_fixed(const int64_t* x, const int64_t* y, int64_t den,
                         int size, bint reverse) noexcept nogil:
    cdef int p, q, c, d
    cdef bint ok
    for p in range(size):
        c = size - 1 - p if reverse else p
        if x[c] >= y[c]:
            continue
        ok = True
        for q in range(p):
            d = size - 1 - q if reverse else q
            if not _interior(y[d], den):
                ok = False
                break
        if ok:
            for q in range(p + 1, size):
                d = size - 1 - q if reverse else q
                if not _interior(x[d], den):
                    ok = False
                    break
        if ok:
            return c
    return -1


cdef bint _staircase_leaves(const int64_t* x, const int64_t* y, int64_t den,
                            const int64_t* order, int size, int64_t* cur) noexcept nogil:
    # walk the staircase waypoint by waypoint; ``cur`` is scratch of length size
    cdef int p, k, c
    cdef bint pinned
    for k in range(size):
        cur[k] = x[k]
    if not _on_boundary(cur, size, den):
        return True
    for p in range(size):
        c = <int>order[p]
        if cur[c] != y[c]:
            pinned = False
            for k in range(size):
                if k != c and not _interior(cur[k], den):
                    pinned = True
                    break
            if not pinned:
                return True
            cur[c] = y[c]
            if not _on_boundary(cur, size, den):
                return True
    return False


cdef bint _reachable(const int64_t* x, const int64_t* y, int64_t den, int size) noexcept nogil:
    if not (_on_boundary(x, size, den) and _on_boundary(y, size, den)):
        return False
    if not _leq(x, y, size):
        return False
    if _violates_fixed(x, y, den, size, False) < 0:
        return True
    return _violates_fixed(x, y, den, size, True) < 0


cdef int64_t* _to_buffer(object seq, int size) except NULL:
    cdef int64_t* buf = <int64_t*>malloc(max(size, 1) * sizeof(int64_t))
    cdef int i
    if buf == NULL:
        raise MemoryError()
    try:
        for i in range(size):
            buf[i] = seq[i]
    except BaseException:
        free(buf)
        raise
    return buf


def violates_witness(xs, ys, int64_t den, order):
    cdef int size = len(xs)
    cdef int64_t* x = _to_buffer(xs, size)
    cdef int64_t* y = NULL
    cdef int64_t* o = NULL
    try:
        y = _to_buffer(ys, size)
        o = _to_buffer(order, size)
        return _violates(x, y, den, o, size)
    finally:
        free(x)
        free(y)
        free(o)


def staircase_leaves(xs, ys, int64_t den, order):
    cdef int size = len(xs)
    cdef int64_t* x = _to_buffer(xs, size)
    cdef int64_t* y = NULL
    cdef int64_t* o = NULL
    cdef int64_t* cur = NULL
    try:
        y = _to_buffer(ys, size)
        o = _to_buffer(order, size)
        cur = _to_buffer(xs, size)
        return bool(_staircase_leaves(x, y, den, o, size, cur))
    finally:
        free(x)
        free(y)
        free(o)
        free(cur)


def reachable(xs, ys, int64_t den):
    cdef int size = len(xs)
    cdef int64_t* x = _to_buffer(xs, size)
    cdef int64_t* y = NULL
    try:
        y = _to_buffer(ys, size)
        return bool(_reachable(x, y, den, size))
    finally:
        free(x)
        free(y)


def batch_violates(const int64_t[:, ::1] X, const int64_t[:, ::1] Y, int64_t den,
                   const int64_t[::1] order, uint8_t[::1] out):
    cdef Py_ssize_t r
    cdef int size = X.shape[1]
    with nogil:
        for r in range(X.shape[0]):
            out[r] = _violates(&X[r, 0], &Y[r, 0], den, &order[0], size) >= 0


def batch_staircase_leaves(const int64_t[:, ::1] X, const int64_t[:, ::1] Y, int64_t den,
                           const int64_t[::1] order, uint8_t[::1] out):
    cdef Py_ssize_t r
    cdef int size = X.shape[1]
    cdef int64_t* cur = <int64_t*>malloc(max(size, 1) * sizeof(int64_t))
    if cur == NULL:
        raise MemoryError()
    try:
        with nogil:
            for r in range(X.shape[0]):
                out[r] = _staircase_leaves(&X[r, 0], &Y[r, 0], den, &order[0], size, cur)
    finally:
        free(cur)


def batch_reachable(const int64_t[:, ::1] X, const int64_t[:, ::1] Y, int64_t den,
                    uint8_t[::1] out):
    cdef Py_ssize_t r
    cdef int size = X.shape[1]
    with nogil:
        for r in range(X.shape[0]):
            out[r] = _reachable(&X[r, 0], &Y[r, 0], den, size)


def batch_plan_on_boundary(const int64_t[:, ::1] X, const int64_t[:, ::1] Y, int64_t den,
                           uint8_t[::1] out):
    """1 where the planner's chosen staircase stays on the boundary."""
    cdef Py_ssize_t r
    cdef int k, size = X.shape[1]
    cdef int64_t* cur = <int64_t*>malloc(max(size, 1) * sizeof(int64_t))
    cdef int64_t* ident = <int64_t*>malloc(max(size, 1) * sizeof(int64_t))
    cdef int64_t* rev = <int64_t*>malloc(max(size, 1) * sizeof(int64_t))
    if cur == NULL or ident == NULL or rev == NULL:
        free(cur)
        free(ident)
        free(rev)
        raise MemoryError()
    for k in range(size):
        ident[k] = k
        rev[k] = size - 1 - k
    try:
        with nogil:
            for r in range(X.shape[0]):
                if _violates_fixed(&X[r, 0], &Y[r, 0], den, size, False) < 0:
                    out[r] = not _staircase_leaves(&X[r, 0], &Y[r, 0], den, ident, size, cur)
                else:
                    out[r] = not _staircase_leaves(&X[r, 0], &Y[r, 0], den, rev, size, cur)
    finally:
        free(cur)
        free(ident)
        free(rev)


def reach_closure(const int64_t[::1] indptr, const int64_t[::1] indices, uint8_t[:, ::1] out):
    """Depth-first search from every vertex of a CSR digraph; ``out[s, v] = 1`` iff v is reachable."""
    cdef Py_ssize_t nv = indptr.shape[0] - 1
    cdef Py_ssize_t s, u, v, e, top
    cdef int64_t* stack = <int64_t*>malloc(max(nv, 1) * sizeof(int64_t))
    if stack == NULL:
        raise MemoryError()
    try:
        with nogil:
            for s in range(nv):
                out[s, s] = 1
                stack[0] = s
                top = 1
                while top > 0:
                    top -= 1
                    u = stack[top]
                    for e in range(indptr[u], indptr[u + 1]):
                        v = indices[e]
                        if not out[s, v]:
                            out[s, v] = 1
                            stack[top] = v
                            top += 1
    finally:
        free(stack)
