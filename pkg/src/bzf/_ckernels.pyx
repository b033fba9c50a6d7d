# cython: language_level=3
"""Compiled window kernels; same contracts as ``bzf._pykernels``."""

cimport cython
from libc.stdint cimport int64_t


cdef inline void _mul(int64_t ai, int64_t aj, int64_t ap,
                      int64_t bi, int64_t bj, int64_t bp,
                      int64_t* oi, int64_t* oj, int64_t* op) noexcept nogil:
    cdef int64_t d, q
    if aj <= bi:
        d = bi - aj
        q = ap - d
        oi[0] = ai + d
        oj[0] = bj
        op[0] = q if q > bp else bp
    else:
        d = aj - bi
        q = bp - d
        oi[0] = ai
        oj[0] = d + bj
        op[0] = ap if ap > q else q


cdef inline void _apply(int64_t i, int64_t j, int64_t p, int64_t shift, int flip, int64_t k,
                        int64_t* oi, int64_t* oj, int64_t* op) noexcept nogil:
    cdef int64_t d
    if flip:
        d = shift + p
        oi[0] = i + d
        oj[0] = j + d
        op[0] = k - p
    else:
        oi[0] = i + shift
        oj[0] = j + shift
        op[0] = p


@cython.boundscheck(False)
@cython.wraparound(False)
cdef Py_ssize_t _assoc_scan(const int64_t[:, ::1] E) noexcept nogil:
    cdef Py_ssize_t n = E.shape[0]
    cdef Py_ssize_t a, b, c
    cdef int64_t abi, abj, abp, bci, bcj, bcp
    cdef int64_t li, lj, lp, ri, rj, rp
    for a in range(n):
        for b in range(n):
            _mul(E[a, 0], E[a, 1], E[a, 2], E[b, 0], E[b, 1], E[b, 2], &abi, &abj, &abp)
            for c in range(n):
                _mul(E[b, 0], E[b, 1], E[b, 2], E[c, 0], E[c, 1], E[c, 2], &bci, &bcj, &bcp)
                _mul(abi, abj, abp, E[c, 0], E[c, 1], E[c, 2], &li, &lj, &lp)
                _mul(E[a, 0], E[a, 1], E[a, 2], bci, bcj, bcp, &ri, &rj, &rp)
                if li != ri or lj != rj or lp != rp:
                    return (a * n + b) * n + c
    return -1


@cython.boundscheck(False)
@cython.wraparound(False)
cdef Py_ssize_t _aut_hom_scan(const int64_t[:, ::1] E, int64_t shift, int flip, int64_t k) noexcept nogil:
    cdef Py_ssize_t n = E.shape[0]
    cdef Py_ssize_t a, b
    cdef int64_t pi, pj, pp, li, lj, lp, ri, rj, rp
    cdef int64_t ai, aj, ap, bi, bj, bp
    for a in range(n):
        _apply(E[a, 0], E[a, 1], E[a, 2], shift, flip, k, &ai, &aj, &ap)
        for b in range(n):
            _mul(E[a, 0], E[a, 1], E[a, 2], E[b, 0], E[b, 1], E[b, 2], &pi, &pj, &pp)
            _apply(pi, pj, pp, shift, flip, k, &li, &lj, &lp)
            _apply(E[b, 0], E[b, 1], E[b, 2], shift, flip, k, &bi, &bj, &bp)
            _mul(ai, aj, ap, bi, bj, bp, &ri, &rj, &rp)
            if li != ri or lj != rj or lp != rp:
                return a * n + b
    return -1


def assoc_scan(const int64_t[:, ::1] E):
    """Index ``(a*n + b)*n + c`` of the first non-associative triple, or -1."""
    cdef Py_ssize_t r
    with nogil:
        r = _assoc_scan(E)
    return r


def aut_hom_scan(const int64_t[:, ::1] E, int64_t shift, int flip, int64_t k):
    """Index ``a*n + b`` of the first pair with ``m(ab) != m(a)m(b)``, or -1."""
    cdef Py_ssize_t r
    with nogil:
        r = _aut_hom_scan(E, shift, flip, k)
    return r
