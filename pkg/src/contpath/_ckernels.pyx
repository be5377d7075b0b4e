# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels. Same contracts as ``contpath._pykernels``."""

import numpy as np
from libc.math cimport fabs


cdef double _series(double q, double a, double b, double shift,
                    double rel_tol, double abs_tol, long max_terms,
                    long *used) noexcept nogil:
    cdef double r = 1.0
    cdef double total = 0.0
    cdef double term
    cdef long n
    cdef int small = 0
    for n in range(max_terms):
        term = (a + b * n) * r
        total += term
        if fabs(term) < rel_tol * fabs(total) + abs_tol:
            small += 1
            if small == 2:
                used[0] = n + 1
                return total
        else:
            small = 0
        r = r * q / ((n + 1.0) * (n + 1.0 + shift))
    used[0] = -1
    return total


def series(double q, double a, double b, double shift,
           double rel_tol, double abs_tol, long max_terms):
    cdef long used = 0
    cdef double value = _series(q, a, b, shift, rel_tol, abs_tol, max_terms, &used)
    return value, used


def series_array(q, double a, double b, double shift,
                 double rel_tol, double abs_tol, long max_terms):
    cdef double[::1] qv = np.ascontiguousarray(q, dtype=np.float64)
    out = np.empty(qv.shape[0], dtype=np.float64)
    cdef double[::1] ov = out
    cdef Py_ssize_t i
    cdef long used = 0
    cdef long worst = 0
    cdef bint failed = False
    with nogil:
        for i in range(qv.shape[0]):
            ov[i] = _series(qv[i], a, b, shift, rel_tol, abs_tol, max_terms, &used)
            if used < 0:
                failed = True
            elif used > worst:
                worst = used
    if failed:
        return out, -1
    return out, worst


def lambda_hits(u, v):
    cdef double[:, ::1] uv = np.ascontiguousarray(u, dtype=np.float64)
    cdef double[:, ::1] vv = np.ascontiguousarray(v, dtype=np.float64)
    cdef Py_ssize_t rows = uv.shape[0], cols = uv.shape[1]
    cdef Py_ssize_t i, j
    cdef long hits = 0
    cdef bint ok
    with nogil:
        for i in range(rows):
            ok = True
            for j in range(cols):
                if uv[i, j] < vv[i, j]:
                    ok = False
                    break
                if j > 0 and (uv[i, j] < uv[i, j - 1] or vv[i, j] < vv[i, j - 1]):
                    ok = False
                    break
            if ok:
                hits += 1
    return hits


def simplex_pair_hits(u, v, double u_budget, double v_budget):
    cdef double[:, ::1] uv = np.ascontiguousarray(u, dtype=np.float64)
    cdef double[:, ::1] vv = np.ascontiguousarray(v, dtype=np.float64)
    cdef Py_ssize_t rows = uv.shape[0]
    cdef Py_ssize_t ucols = uv.shape[1], vcols = vv.shape[1]
    cdef Py_ssize_t i, j
    cdef long hits = 0
    cdef double acc
    with nogil:
        for i in range(rows):
            if ucols:
                acc = 0.0
                for j in range(ucols):
                    acc = acc + uv[i, j]
                if not acc <= u_budget:
                    continue
            if vcols:
                acc = 0.0
                for j in range(vcols):
                    acc = acc + vv[i, j]
                if not acc <= v_budget:
                    continue
            hits += 1
    return hits
