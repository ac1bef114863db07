# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled index-shuffling kernels; same contracts as ``_fallback``."""
import numpy as np
cimport numpy as cnp

cnp.import_array()


def relabel_map(dims, order):
    cdef Py_ssize_t n = len(dims)
    cdef Py_ssize_t total = 1
    cdef Py_ssize_t k, r, cur
    cdef const Py_ssize_t[::1] d = np.asarray(dims, dtype=np.intp)
    cdef const Py_ssize_t[::1] o = np.asarray(order, dtype=np.intp)
    cdef Py_ssize_t[::1] local = np.zeros(n, dtype=np.intp)
    # stride[p]: weight of original particle p in the reordered flat index
    cdef Py_ssize_t[::1] stride = np.empty(n, dtype=np.intp)
    for k in range(n):
        total *= d[k]
    cur = 1
    for k in range(n - 1, -1, -1):
        stride[o[k]] = cur
        cur *= d[o[k]]
    out = np.empty(total, dtype=np.intp)
    cdef Py_ssize_t[::1] sigma = out
    cur = 0
    for r in range(total):
        sigma[r] = cur
        k = n - 1
        while k >= 0:
            local[k] += 1
            cur += stride[k]
            if local[k] < d[k]:
                break
            cur -= stride[k] * d[k]
            local[k] = 0
            k -= 1
    return out


def permute_vector(v, sigma):
    cdef const double complex[::1] src = np.ascontiguousarray(v, dtype=np.complex128)
    cdef const Py_ssize_t[::1] s = np.asarray(sigma, dtype=np.intp)
    cdef Py_ssize_t n = src.shape[0]
    cdef Py_ssize_t r
    out = np.empty(n, dtype=np.complex128)
    cdef double complex[::1] dst = out
    for r in range(n):
        dst[s[r]] = src[r]
    return out


def permute_square(m, sigma):
    cdef const double complex[:, ::1] src = np.ascontiguousarray(m, dtype=np.complex128)
    cdef const Py_ssize_t[::1] s = np.asarray(sigma, dtype=np.intp)
    cdef Py_ssize_t n = src.shape[0]
    cdef Py_ssize_t r, c, sr
    out = np.empty((n, n), dtype=np.complex128)
    cdef double complex[:, ::1] dst = out
    for r in range(n):
        sr = s[r]
        for c in range(n):
            dst[sr, s[c]] = src[r, c]
    return out


def partial_transpose(m, Py_ssize_t n1, Py_ssize_t n2, int side):
    cdef const double complex[:, ::1] src = np.ascontiguousarray(m, dtype=np.complex128)
    cdef Py_ssize_t i, j, k, l
    out = np.empty((n1 * n2, n1 * n2), dtype=np.complex128)
    cdef double complex[:, ::1] dst = out
    for i in range(n1):
        for j in range(n2):
            for k in range(n1):
                for l in range(n2):
                    if side == 1:
                        dst[k * n2 + j, i * n2 + l] = src[i * n2 + j, k * n2 + l]
                    else:
                        dst[i * n2 + l, k * n2 + j] = src[i * n2 + j, k * n2 + l]
    return out


def partial_trace(m, Py_ssize_t n1, Py_ssize_t n2, int keep):
    cdef const double complex[:, ::1] src = np.ascontiguousarray(m, dtype=np.complex128)
    cdef Py_ssize_t i, j, k
    cdef double complex acc
    if keep == 1:
        out = np.empty((n1, n1), dtype=np.complex128)
    else:
        out = np.empty((n2, n2), dtype=np.complex128)
    cdef double complex[:, ::1] dst = out
    if keep == 1:
        for i in range(n1):
            for k in range(n1):
                acc = 0
                for j in range(n2):
                    acc = acc + src[i * n2 + j, k * n2 + j]
                dst[i, k] = acc
    else:
        for j in range(n2):
            for k in range(n2):
                acc = 0
                for i in range(n1):
                    acc = acc + src[i * n2 + j, i * n2 + k]
                dst[j, k] = acc
    return out
