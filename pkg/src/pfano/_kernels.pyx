# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled rank kernels over GF(q); mirrors ``_pykernels``."""

import numpy as np
cimport numpy as cnp

ctypedef long long i64


cdef i64 _inv(i64 a, i64 q) nogil:
    cdef i64 t = 0, newt = 1, r = q, newr = a, quo, tmp
    while newr != 0:
        quo = r // newr
        tmp = t - quo * newt
        t = newt
        newt = tmp
        tmp = r - quo * newr
        r = newr
        newr = tmp
    if t < 0:
        t += q
    return t


cdef int _rank_inplace(i64[:, ::1] m, i64 q) nogil:
    cdef Py_ssize_t nrows = m.shape[0], ncols = m.shape[1]
    cdef Py_ssize_t r, c, k, piv
    cdef int rank = 0
    cdef i64 inv, f, tmp
    for c in range(ncols):
        if rank == nrows:
            break
        piv = -1
        for r in range(rank, nrows):
            if m[r, c] != 0:
                piv = r
                break
        if piv < 0:
            continue
        if piv != rank:
            for k in range(c, ncols):
                tmp = m[rank, k]
                m[rank, k] = m[piv, k]
                m[piv, k] = tmp
        inv = _inv(m[rank, c], q)
        for r in range(rank + 1, nrows):
            f = m[r, c]
            if f != 0:
                f = f * inv % q
                for k in range(c, ncols):
                    tmp = (m[r, k] - f * m[rank, k]) % q
                    if tmp < 0:
                        tmp += q
                    m[r, k] = tmp
        rank += 1
    return rank


def rank_mod(a, long long q):
    """Rank over GF(q) of a 2-D integer array (entries already reduced)."""
    cdef i64[:, ::1] work = np.array(a, dtype=np.int64, order="C", ndmin=2)
    if work.shape[0] == 0 or work.shape[1] == 0:
        return 0
    return _rank_inplace(work, q)


def subset_block_ranks(a, int t, long long q):
    """Ranks of every block-column subset, indexed by bitmask (bit i = block i+1)."""
    cdef i64[:, ::1] src = np.array(a, dtype=np.int64, order="C", ndmin=2)
    cdef Py_ssize_t nrows = src.shape[0], ncols = src.shape[1]
    cdef Py_ssize_t n = ncols // t
    cdef Py_ssize_t mask, b, k, r, width
    cdef i64[:, ::1] work = np.zeros((nrows, ncols), dtype=np.int64)
    out_arr = np.zeros(1 << n, dtype=np.int64)
    cdef i64[::1] out = out_arr
    if nrows == 0:
        return out_arr.tolist()
    with nogil:
        for mask in range(1, 1 << n):
            width = 0
            for b in range(n):
                if (mask >> b) & 1:
                    for k in range(t):
                        for r in range(nrows):
                            work[r, width] = src[r, b * t + k]
                        width += 1
            out[mask] = _rank_inplace(work[:, :width], q)
    return out_arr.tolist()


def circuit_triples(a, b, cands, long long q):
    """For each row ``v`` of ``cands``: is ``{a, v, b}`` a circuit (rank 2, every pair rank 2)?"""
    cdef i64[::1] av = np.ascontiguousarray(a, dtype=np.int64)
    cdef i64[::1] bv = np.ascontiguousarray(b, dtype=np.int64)
    cdef i64[:, ::1] cv = np.array(cands, dtype=np.int64, order="C", ndmin=2)
    cdef Py_ssize_t r = av.shape[0], k, i
    cdef Py_ssize_t ncand = cv.shape[0] if cv.shape[1] == r else 0
    cdef i64[:, ::1] work = np.zeros((r, 3), dtype=np.int64)
    out_arr = np.zeros(ncand, dtype=np.uint8)
    cdef unsigned char[::1] out = out_arr
    cdef int ok
    with nogil:
        for k in range(ncand):
            for i in range(r):
                work[i, 0] = av[i]
                work[i, 1] = cv[k, i]
                work[i, 2] = bv[i]
            ok = _rank_inplace(work, q) == 2
            if ok:
                for i in range(r):
                    work[i, 0] = av[i]
                    work[i, 1] = cv[k, i]
                ok = _rank_inplace(work[:, :2], q) == 2
            if ok:
                for i in range(r):
                    work[i, 0] = av[i]
                    work[i, 1] = bv[i]
                ok = _rank_inplace(work[:, :2], q) == 2
            if ok:
                for i in range(r):
                    work[i, 0] = cv[k, i]
                    work[i, 1] = bv[i]
                ok = _rank_inplace(work[:, :2], q) == 2
            out[k] = ok
    return [bool(x) for x in out_arr]
