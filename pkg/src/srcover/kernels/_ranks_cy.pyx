# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled rank kernel.

Same contract as the numpy fallback, but each matrix is decoded and
eliminated in a tight C loop instead of being broadcast across a chunk;
the win is a constant factor, the algorithm is identical.
"""

import numpy as np

BACKEND_NAME = "cython"


def rank_table(int q, int rows, int cols, sub, mul, inv):
    """Ranks of all q**(rows*cols) matrices, indexed by base-q digits.

    Digit k of the index is entry (k % rows, k // rows): column-major,
    matching the coordinate layout of the ambient space.
    """
    cdef unsigned char[:, ::1] sub_t = np.ascontiguousarray(sub, dtype=np.uint8)
    cdef unsigned char[:, ::1] mul_t = np.ascontiguousarray(mul, dtype=np.uint8)
    cdef unsigned char[::1] inv_t = np.ascontiguousarray(inv, dtype=np.uint8)
    cdef int entries = rows * cols
    cdef long long total = 1
    cdef int e
    for e in range(entries):
        total *= q
    out_arr = np.empty(total, dtype=np.uint8)
    cdef unsigned char[::1] out = out_arr
    scratch = np.empty((rows, cols), dtype=np.uint8)
    cdef unsigned char[:, ::1] a = scratch
    cdef long long idx, rem
    cdef int r, c, i, k, piv, rank
    cdef unsigned char tmp, f, coef
    for idx in range(total):
        rem = idx
        for k in range(entries):
            a[k % rows, k // rows] = <unsigned char>(rem % q)
            rem = rem // q
        rank = 0
        for c in range(cols):
            piv = -1
            for i in range(rank, rows):
                if a[i, c] != 0:
                    piv = i
                    break
            if piv < 0:
                continue
            if piv != rank:
                for k in range(c, cols):
                    tmp = a[rank, k]
                    a[rank, k] = a[piv, k]
                    a[piv, k] = tmp
            f = inv_t[a[rank, c]]
            for k in range(c, cols):
                a[rank, k] = mul_t[f, a[rank, k]]
            for i in range(rank + 1, rows):
                coef = a[i, c]
                if coef != 0:
                    for k in range(c, cols):
                        a[i, k] = sub_t[a[i, k], mul_t[coef, a[rank, k]]]
            rank += 1
            if rank == rows:
                break
        out[idx] = <unsigned char>rank
    return out_arr
