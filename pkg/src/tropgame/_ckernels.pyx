# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twins of the loops in ``_pykernels``.

Entries are int64 with ``NEG`` standing for ``-inf``.  Callers guarantee that
every finite intermediate stays below ``2**61`` in modulus.
"""
import numpy as np
cimport numpy as cnp

cnp.import_array()

ctypedef cnp.int64_t i64

cdef i64 NEG = -(1 << 62)
cdef i64 POS = (1 << 62)


cdef struct Game:
    Py_ssize_t n
    Py_ssize_t m
    const i64* col_ptr
    const i64* col_row
    const i64* col_a
    const i64* row_ptr
    const i64* row_col
    const i64* row_b


cdef void _apply_f(Game* g, const i64* x, i64* bx, i64* out) noexcept nogil:
    cdef Py_ssize_t i, j, p
    cdef i64 best, s, xk
    for i in range(g.m):
        best = NEG
        for p in range(g.row_ptr[i], g.row_ptr[i + 1]):
            xk = x[g.row_col[p]]
            if xk != NEG:
                s = g.row_b[p] + xk
                if s > best:
                    best = s
        bx[i] = best
    for j in range(g.n):
        best = POS
        for p in range(g.col_ptr[j], g.col_ptr[j + 1]):
            s = bx[g.col_row[p]]
            if s != NEG:
                s = s - g.col_a[p]
            if s < best:
                best = s
        out[j] = best


cdef void _apply_g(Game* g, const i64* x, i64* bx, i64* out) noexcept nogil:
    cdef Py_ssize_t j
    _apply_f(g, x, bx, out)
    for j in range(g.n):
        if x[j] < out[j]:
            out[j] = x[j]


cdef bint _all_negative(const i64* x, Py_ssize_t n) noexcept nogil:
    cdef Py_ssize_t j
    for j in range(n):
        if x[j] >= 0:
            return False
    return True


cdef bint _equal(const i64* a, const i64* b, Py_ssize_t n) noexcept nogil:
    cdef Py_ssize_t j
    for j in range(n):
        if a[j] != b[j]:
            return False
    return True


cdef class _Buffers:
    """Owns the CSR arrays and work vectors for one call."""
    cdef Game g
    cdef object keep
    cdef cnp.ndarray x, nxt, y, gy, bx

    def __init__(self, col_ptr, col_row, col_a, row_ptr, row_col, row_b, x0):
        arrays = [np.ascontiguousarray(a, dtype=np.int64) for a in (col_ptr, col_row, col_a, row_ptr, row_col, row_b)]
        # empty arrays still need a valid pointer
        arrays = [a if a.size else np.zeros(1, dtype=np.int64) for a in arrays]
        self.keep = arrays
        self.g.n = len(col_ptr) - 1
        self.g.m = len(row_ptr) - 1
        self.g.col_ptr = <const i64*> cnp.PyArray_DATA(arrays[0])
        self.g.col_row = <const i64*> cnp.PyArray_DATA(arrays[1])
        self.g.col_a = <const i64*> cnp.PyArray_DATA(arrays[2])
        self.g.row_ptr = <const i64*> cnp.PyArray_DATA(arrays[3])
        self.g.row_col = <const i64*> cnp.PyArray_DATA(arrays[4])
        self.g.row_b = <const i64*> cnp.PyArray_DATA(arrays[5])
        self.x = np.array(x0, dtype=np.int64).reshape(self.g.n) if x0 is not None else np.zeros(self.g.n, dtype=np.int64)
        self.nxt = np.zeros(max(self.g.n, 1), dtype=np.int64)
        self.y = np.zeros(max(self.g.n, 1), dtype=np.int64)
        self.gy = np.zeros(max(self.g.n, 1), dtype=np.int64)
        self.bx = np.zeros(max(self.g.m, 1), dtype=np.int64)


cdef inline i64* _ptr(cnp.ndarray a):
    return <i64*> cnp.PyArray_DATA(a)


def iterate(col_ptr, col_row, col_a, row_ptr, row_col, row_b, x0, long long steps):
    cdef _Buffers buf = _Buffers(col_ptr, col_row, col_a, row_ptr, row_col, row_b, x0)
    cdef i64* x = _ptr(buf.x)
    cdef i64* nxt = _ptr(buf.nxt)
    cdef i64* bx = _ptr(buf.bx)
    cdef i64* tmp
    cdef long long s
    with nogil:
        for s in range(steps):
            _apply_f(&buf.g, x, bx, nxt)
            tmp = x
            x = nxt
            nxt = tmp
    return [x[j] for j in range(buf.g.n)]


def power(col_ptr, col_row, col_a, row_ptr, row_col, row_b, long long horizon, bint record):
    cdef _Buffers buf = _Buffers(col_ptr, col_row, col_a, row_ptr, row_col, row_b, None)
    cdef Py_ssize_t n = buf.g.n
    cdef i64* x = _ptr(buf.x)
    cdef i64* nxt = _ptr(buf.nxt)
    cdef i64* y = _ptr(buf.y)
    cdef i64* gy = _ptr(buf.gy)
    cdef i64* bx = _ptr(buf.bx)
    cdef i64* tmp
    cdef long long k = 0
    cdef Py_ssize_t j, dropped
    iterates = [[0] * n] if record else []
    while True:
        if _all_negative(x, n):
            return 0, k, [x[j] for j in range(n)], None, iterates
        if k >= horizon:
            return 3, k, [x[j] for j in range(n)], None, iterates
        _apply_g(&buf.g, x, bx, nxt)
        if _equal(nxt, x, n):
            cur = [x[j] for j in range(n)]
            return 1, k, cur, list(cur), iterates
        if record:
            iterates.append([nxt[j] for j in range(n)])
        dropped = 0
        for j in range(n):
            if nxt[j] < x[j]:
                dropped += 1
                y[j] = NEG
            else:
                y[j] = x[j]
        if 0 < dropped < n:
            _apply_g(&buf.g, y, bx, gy)
            if _equal(gy, y, n):
                return 2, k, [nxt[j] for j in range(n)], [y[j] for j in range(n)], iterates
        tmp = x
        x = nxt
        nxt = tmp
        k += 1


def fixpoint(col_ptr, col_row, col_a, row_ptr, row_col, row_b, x0, long long max_iter):
    cdef _Buffers buf = _Buffers(col_ptr, col_row, col_a, row_ptr, row_col, row_b, x0)
    cdef Py_ssize_t n = buf.g.n
    cdef i64* x = _ptr(buf.x)
    cdef i64* nxt = _ptr(buf.nxt)
    cdef i64* bx = _ptr(buf.bx)
    cdef i64* tmp
    cdef long long it
    cdef bint done = False
    with nogil:
        for it in range(max_iter + 1):
            _apply_g(&buf.g, x, bx, nxt)
            if _equal(nxt, x, n):
                done = True
                break
            tmp = x
            x = nxt
            nxt = tmp
    if done:
        return [x[j] for j in range(n)], it
    return None, max_iter
