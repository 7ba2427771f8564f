# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled fraction-free Gauss-Jordan elimination on int64 rows.

Same contract as ``siltgeo._pykernel.echelon``.  Any intermediate product or
difference that leaves the int64 range raises ``OverflowError`` so that the
caller can rerun the reduction on arbitrary-precision integers.
"""
from libc.stdlib cimport malloc, free
from libc.stdint cimport int64_t

cdef extern from *:
    """
    static inline int sg_mul_ovf(long long a, long long b, long long *r) {
        return __builtin_mul_overflow(a, b, r);
    }
    static inline int sg_sub_ovf(long long a, long long b, long long *r) {
        return __builtin_sub_overflow(a, b, r);
    }
    """
    int sg_mul_ovf(long long a, long long b, long long *r) nogil
    int sg_sub_ovf(long long a, long long b, long long *r) nogil


cdef inline long long _gcd(long long a, long long b) nogil:
    if a < 0:
        a = -a
    if b < 0:
        b = -b
    while b:
        a, b = b, a % b
    return a


cdef int _make_primitive(long long *row, Py_ssize_t ncols) nogil:
    cdef long long g = 0
    cdef Py_ssize_t j
    for j in range(ncols):
        if row[j] != 0:
            g = _gcd(g, row[j])
            if g == 1:
                return 0
    if g > 1:
        for j in range(ncols):
            row[j] = row[j] // g
    return 0


cdef int _reduce(long long *a, Py_ssize_t nrows, Py_ssize_t ncols,
                 Py_ssize_t *piv, Py_ssize_t *rank_out) nogil:
    """Returns 1 on overflow, 0 otherwise."""
    cdef Py_ssize_t rank = 0, col, i, j, best
    cdef long long v, av, best_abs, p, x, g, ca, cb, t1, t2
    cdef long long *prow
    cdef long long *row
    cdef long long tmp
    for col in range(ncols):
        if rank == nrows:
            break
        best = -1
        best_abs = 0
        for i in range(rank, nrows):
            v = a[i * ncols + col]
            if v != 0:
                av = -v if v < 0 else v
                if best < 0 or av < best_abs:
                    best = i
                    best_abs = av
                    if av == 1:
                        break
        if best < 0:
            continue
        if best != rank:
            for j in range(ncols):
                tmp = a[rank * ncols + j]
                a[rank * ncols + j] = a[best * ncols + j]
                a[best * ncols + j] = tmp
        prow = a + rank * ncols
        if prow[col] < 0:
            for j in range(ncols):
                prow[j] = -prow[j]
        _make_primitive(prow, ncols)
        p = prow[col]
        for i in range(nrows):
            if i == rank:
                continue
            row = a + i * ncols
            x = row[col]
            if x == 0:
                continue
            g = _gcd(p, x)
            ca = p // g
            cb = x // g
            for j in range(ncols):
                if sg_mul_ovf(ca, row[j], &t1):
                    return 1
                if prow[j] != 0:
                    if sg_mul_ovf(cb, prow[j], &t2):
                        return 1
                    if sg_sub_ovf(t1, t2, &t1):
                        return 1
                row[j] = t1
            _make_primitive(row, ncols)
        piv[rank] = col
        rank += 1
    rank_out[0] = rank
    return 0


def echelon(rows, Py_ssize_t ncols):
    """Integer echelon form; see ``siltgeo._pykernel.echelon``."""
    cdef list kept = [r for r in rows if any(r)]
    cdef Py_ssize_t nrows = len(kept)
    cdef Py_ssize_t i, j, rank = 0
    cdef long long *a
    cdef Py_ssize_t *piv
    cdef int status
    if nrows == 0 or ncols == 0:
        return [], []
    a = <long long *> malloc(nrows * ncols * sizeof(long long))
    piv = <Py_ssize_t *> malloc(ncols * sizeof(Py_ssize_t))
    if a == NULL or piv == NULL:
        free(a)
        free(piv)
        raise MemoryError()
    try:
        for i in range(nrows):
            r = kept[i]
            for j in range(ncols):
                a[i * ncols + j] = r[j]  # raises OverflowError if too large
        with nogil:
            status = _reduce(a, nrows, ncols, piv, &rank)
        if status:
            raise OverflowError("int64 overflow in echelon")
        out = [[a[i * ncols + j] for j in range(ncols)] for i in range(rank)]
        pivots = [piv[i] for i in range(rank)]
        return out, pivots
    finally:
        free(a)
        free(piv)
