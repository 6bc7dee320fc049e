# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled versions of the hot kernels (see ``_fallback.py`` for the contract)."""
import numpy as np
cimport numpy as cnp
from libc.math cimport sin, cos, pow, fabs, M_PI

from .errors import SingularMatrixError

cnp.import_array()

NAME = "compiled"


def grunwald_weights(double alpha, Py_ssize_t L):
    cdef cnp.ndarray[cnp.float64_t, ndim=1] w = np.empty(L)
    cdef double[::1] wv = w
    cdef Py_ssize_t k
    cdef double a1 = alpha + 1.0
    if L == 0:
        return w
    wv[0] = 1.0
    for k in range(1, L):
        wv[k] = wv[k - 1] * (1.0 - a1 / <double>k)
    return w


def fused_weights(w, double l1, double l2, double l3):
    cdef double[::1] wv = np.ascontiguousarray(w, dtype=np.float64)
    cdef Py_ssize_t L = wv.shape[0], k
    g = np.empty(L)
    cdef double[::1] gv = g
    for k in range(L):
        gv[k] = l1 * wv[k]
        if k >= 1:
            gv[k] += l2 * wv[k - 1]
        if k >= 2:
            gv[k] += l3 * wv[k - 2]
    return g


def wsgd_left_sum(g, u):
    cdef double[::1] gv = np.ascontiguousarray(g, dtype=np.float64)
    cdef double[::1] uv = np.ascontiguousarray(u, dtype=np.float64)
    cdef Py_ssize_t N = uv.shape[0] - 1, j, k
    cdef double acc
    if gv.shape[0] < N + 1:
        raise ValueError(f"need at least {N + 1} weights, got {gv.shape[0]}")
    out = np.empty(max(N - 1, 0))
    cdef double[::1] ov = out
    for j in range(1, N):
        acc = 0.0
        for k in range(j + 2):
            acc += gv[k] * uv[j - k + 1]
        ov[j - 1] = acc
    return out


def wsgd_right_sum(g, u):
    cdef double[::1] gv = np.ascontiguousarray(g, dtype=np.float64)
    cdef double[::1] uv = np.ascontiguousarray(u, dtype=np.float64)
    cdef Py_ssize_t N = uv.shape[0] - 1, j, k
    cdef double acc
    if gv.shape[0] < N + 1:
        raise ValueError(f"need at least {N + 1} weights, got {gv.shape[0]}")
    out = np.empty(max(N - 1, 0))
    cdef double[::1] ov = out
    for j in range(1, N):
        acc = 0.0
        for k in range(N - j + 2):
            acc += gv[k] * uv[j + k - 1]
        ov[j - 1] = acc
    return out


def left_operator(g, Py_ssize_t N):
    cdef double[::1] gv = np.ascontiguousarray(g, dtype=np.float64)
    out = np.zeros((N - 1, N + 1))
    cdef double[:, ::1] ov = out
    cdef Py_ssize_t j, i
    for j in range(1, N):
        for i in range(j + 2):
            ov[j - 1, i] = gv[j - i + 1]
    return out


def lu_factor(a):
    """Right-looking LU with partial pivoting; LAPACK getrf pivot convention."""
    lu = np.array(a, dtype=np.float64, order="C")
    if lu.ndim != 2 or lu.shape[0] != lu.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {lu.shape}")
    cdef double[:, ::1] A = lu
    cdef Py_ssize_t n = A.shape[0], i, j, k, p
    piv = np.empty(n, dtype=np.intp)
    cdef Py_ssize_t[::1] pv = piv
    cdef double amax, t, lik, akk
    for k in range(n):
        p = k
        amax = fabs(A[k, k])
        for i in range(k + 1, n):
            if fabs(A[i, k]) > amax:
                amax = fabs(A[i, k])
                p = i
        pv[k] = p
        if amax == 0.0:
            raise SingularMatrixError(f"zero pivot in column {k}")
        if p != k:
            for j in range(n):
                t = A[k, j]
                A[k, j] = A[p, j]
                A[p, j] = t
        akk = A[k, k]
        for i in range(k + 1, n):
            lik = A[i, k] / akk
            A[i, k] = lik
            if lik != 0.0:
                for j in range(k + 1, n):
                    A[i, j] -= lik * A[k, j]
    return lu, piv


def lu_solve(lu, piv, b):
    cdef double[:, ::1] A = np.ascontiguousarray(lu, dtype=np.float64)
    cdef Py_ssize_t[::1] pv = np.ascontiguousarray(piv, dtype=np.intp)
    x = np.array(b, dtype=np.float64, order="C")
    vector = x.ndim == 1
    if vector:
        x = x[:, None].copy()
    cdef double[:, ::1] X = x
    cdef Py_ssize_t n = A.shape[0], m = X.shape[1], i, j, k, p
    cdef double t
    if X.shape[0] != n:
        raise ValueError(f"right-hand side has {X.shape[0]} rows, matrix has {n}")
    for k in range(n):
        p = pv[k]
        if p != k:
            for j in range(m):
                t = X[k, j]
                X[k, j] = X[p, j]
                X[p, j] = t
    for i in range(n):
        for k in range(i):
            t = A[i, k]
            if t != 0.0:
                for j in range(m):
                    X[i, j] -= t * X[k, j]
    for i in range(n - 1, -1, -1):
        for k in range(i + 1, n):
            t = A[i, k]
            if t != 0.0:
                for j in range(m):
                    X[i, j] -= t * X[k, j]
        t = A[i, i]
        for j in range(m):
            X[i, j] /= t
    return x[:, 0] if vector else x


def q_basis(theta, alpha):
    cdef double[::1] th = np.ascontiguousarray(theta, dtype=np.float64)
    cdef double[::1] al = np.ascontiguousarray(alpha, dtype=np.float64)
    cdef Py_ssize_t nt = th.shape[0], na = al.shape[0], i, j
    out = np.empty((3, nt, na))
    cdef double[:, :, ::1] ov = out
    cdef double s, amp, c, t
    for i in range(nt):
        t = th[i]
        s = 2.0 * sin(t / 2.0)
        for j in range(na):
            amp = pow(s, al[j])
            c = al[j] / 2.0 * (t - M_PI)
            ov[0, i, j] = amp * cos(c - t)
            ov[1, i, j] = amp * cos(c)
            ov[2, i, j] = amp * cos(c + t)
    return out
