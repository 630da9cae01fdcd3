# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled complex-double kernels; same API as ``_pykernels``."""

import numpy as np
cimport numpy as cnp
from libc.complex cimport cexp

cnp.import_array()

ctypedef double complex cplx


cdef double[::1] _inverse_factorials(Py_ssize_t n):
    cdef double[::1] out = np.empty(n + 1)
    cdef double acc = 1.0
    cdef Py_ssize_t k
    out[0] = 1.0
    for k in range(1, n + 1):
        acc /= k
        out[k] = acc
    return out


def inverse_factorials(n):
    return np.asarray(_inverse_factorials(n))


def numbers_scaled(lam, Py_ssize_t N):
    cdef cplx l = complex(lam)
    cdef double[::1] inv = _inverse_factorials(N + 2)
    cdef cplx[::1] b = np.zeros(N + 1, dtype=np.complex128)
    cdef Py_ssize_t n, k
    cdef cplx acc, s, denom
    if l == 1:
        for n in range(N + 1):
            acc = 1.0 if n == 0 else 0.0
            for k in range(n):
                acc = acc - b[k] * inv[n + 1 - k]
            b[n] = acc
    else:
        denom = l - 1.0
        for n in range(1, N + 1):
            acc = 1.0 if n == 1 else 0.0
            s = 0.0
            for k in range(n):
                s = s + b[k] * inv[n - k]
            b[n] = (acc - l * s) / denom
    return np.asarray(b)


def direct_scaled(lam, x, Py_ssize_t N):
    cdef cplx l = complex(lam)
    cdef cplx xx = complex(x)
    cdef double[::1] inv = _inverse_factorials(N + 2)
    cdef cplx[::1] b = np.zeros(N + 1, dtype=np.complex128)
    cdef Py_ssize_t n, k
    cdef cplx acc, s, denom
    cdef cplx xpow = 1.0
    if l == 1:
        for n in range(N + 1):
            if n > 0:
                xpow = xpow * xx / n
            acc = xpow
            for k in range(n):
                acc = acc - b[k] * inv[n + 1 - k]
            b[n] = acc
    else:
        denom = l - 1.0
        for n in range(1, N + 1):
            if n > 1:
                xpow = xpow * xx / (n - 1)
            s = 0.0
            for k in range(n):
                s = s + b[k] * inv[n - k]
            b[n] = (xpow - l * s) / denom
    return np.asarray(b)


def appell_shift(b_in, z):
    cdef cplx[::1] b = np.ascontiguousarray(b_in, dtype=np.complex128)
    cdef Py_ssize_t N = b.shape[0] - 1
    cdef cplx zz = complex(z)
    cdef cplx[::1] zp = np.empty(N + 1, dtype=np.complex128)
    cdef cplx[::1] out = np.empty(N + 1, dtype=np.complex128)
    cdef Py_ssize_t n, k
    cdef cplx acc
    zp[0] = 1.0
    for k in range(1, N + 1):
        zp[k] = zp[k - 1] * zz / k
    for n in range(N + 1):
        acc = 0.0
        for k in range(n + 1):
            acc = acc + b[n - k] * zp[k]
        out[n] = acc
    return np.asarray(out)


def horner_many(coeffs, xs_in):
    cdef cplx[::1] c = np.ascontiguousarray(coeffs, dtype=np.complex128)
    cdef cplx[::1] xs = np.ascontiguousarray(xs_in, dtype=np.complex128)
    cdef Py_ssize_t m = xs.shape[0]
    cdef Py_ssize_t deg = c.shape[0] - 1
    cdef cplx[::1] out = np.empty(m, dtype=np.complex128)
    cdef Py_ssize_t i, j
    cdef cplx acc, x
    for i in range(m):
        x = xs[i]
        acc = 0.0
        for j in range(deg, -1, -1):
            acc = acc * x + c[j]
        out[i] = acc
    return np.asarray(out)


def pole_power_sums(poles, z, Py_ssize_t n_from, Py_ssize_t n_to):
    cdef cplx[::1] a = np.ascontiguousarray(poles, dtype=np.complex128)
    cdef cplx zz = complex(z)
    cdef Py_ssize_t count = n_to - n_from + 1
    cdef cplx[::1] out = np.zeros(count, dtype=np.complex128)
    cdef Py_ssize_t j, i
    cdef cplx inv_a, term
    for j in range(a.shape[0]):
        inv_a = 1.0 / a[j]
        term = cexp(a[j] * zz) * (inv_a ** n_from)
        for i in range(count):
            out[i] = out[i] + term
            term = term * inv_a
    return np.asarray(out)
