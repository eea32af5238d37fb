# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled log-determinant kernels.

Mirrors :mod:`gqnet._kernels_py`; both return NaN instead of raising when a
(sub)matrix is not positive definite so the caller decides how to report it.
"""
import numpy as np
cimport numpy as cnp
from libc.math cimport log, sqrt, NAN

cnp.import_array()


cdef double _chol_logdet_inplace(double* a, Py_ssize_t k) noexcept nogil:
    # Lower Cholesky on a row-major k*k buffer; returns ln det or NaN.
    cdef Py_ssize_t i, j, p
    cdef double s, d, acc = 0.0
    for j in range(k):
        s = a[j * k + j]
        for p in range(j):
            s -= a[j * k + p] * a[j * k + p]
        if not s > 0.0:
            return NAN
        d = sqrt(s)
        a[j * k + j] = d
        acc += log(s)
        for i in range(j + 1, k):
            s = a[i * k + j]
            for p in range(j):
                s -= a[i * k + p] * a[j * k + p]
            a[i * k + j] = s / d
    return acc


def chol_logdet(const double[:, ::1] a):
    cdef Py_ssize_t k = a.shape[0]
    cdef double[::1] work = np.empty(k * k)
    cdef Py_ssize_t i, j
    cdef double out
    for i in range(k):
        for j in range(k):
            work[i * k + j] = a[i, j]
    with nogil:
        out = _chol_logdet_inplace(&work[0], k)
    return out


def subset_logdets(const double[:, ::1] v, const cnp.int64_t[::1] owner, int n_parties):
    """ln det of the principal submatrix for every party bitmask.

    ``owner[row]`` is the party index of matrix row ``row``. Entry 0 of the
    result (empty subset) is 0.
    """
    cdef Py_ssize_t dim = v.shape[0]
    cdef Py_ssize_t n_masks = (<Py_ssize_t> 1) << n_parties
    cdef double[::1] out = np.zeros(n_masks)
    cdef double[::1] work = np.empty(dim * dim)
    cdef Py_ssize_t[::1] idx = np.empty(dim, dtype=np.intp)
    cdef Py_ssize_t mask, r, i, j, k
    with nogil:
        for mask in range(1, n_masks):
            k = 0
            for r in range(dim):
                if (mask >> owner[r]) & 1:
                    idx[k] = r
                    k += 1
            for i in range(k):
                for j in range(k):
                    work[i * k + j] = v[idx[i], idx[j]]
            out[mask] = _chol_logdet_inplace(&work[0], k)
    return np.asarray(out)
