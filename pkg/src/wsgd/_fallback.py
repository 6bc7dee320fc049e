"""Pure numpy/scipy versions of the hot kernels.

Every function here has a twin with the same signature in ``_kernels.pyx``;
``wsgd._backend`` picks one set at import time.
"""
import warnings

import numpy as np
import scipy.linalg

from .errors import SingularMatrixError

NAME = "python"


def grunwald_weights(alpha, L):
    k = np.arange(1, L, dtype=float)
    w = np.empty(L)
    w[0] = 1.0
    w[1:] = np.cumprod(1.0 - (alpha + 1.0) / k)
    return w


def fused_weights(w, l1, l2, l3):
    w = np.asarray(w, dtype=float)
    g = l1 * w
    g[1:] += l2 * w[:-1]
    g[2:] += l3 * w[:-2]
    return g


def wsgd_left_sum(g, u):
    # v_j = sum_{k=0}^{j+1} g_k u_{j-k+1}, j = 1..N-1
    u = np.asarray(u, dtype=float)
    N = u.shape[0] - 1
    c = np.convolve(np.asarray(g, dtype=float)[: N + 1], u)
    return c[2 : N + 1]


def wsgd_right_sum(g, u):
    u = np.asarray(u, dtype=float)
    return wsgd_left_sum(g, u[::-1])[::-1]


def left_operator(g, N):
    g = np.asarray(g, dtype=float)
    j = np.arange(1, N)[:, None]
    i = np.arange(N + 1)[None, :]
    k = j - i + 1
    mask = k >= 0
    out = np.zeros((N - 1, N + 1))
    out[mask] = g[k[mask]]
    return out


def lu_factor(a):
    a = np.array(a, dtype=float, order="C")
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    with warnings.catch_warnings():
        # singularity is reported below as an exception
        warnings.simplefilter("ignore", scipy.linalg.LinAlgWarning)
        lu, piv = scipy.linalg.lu_factor(a, check_finite=False, overwrite_a=True)
    zero = np.flatnonzero(np.diag(lu) == 0.0)
    if zero.size:
        raise SingularMatrixError(f"zero pivot in column {zero[0]}")
    return lu, piv.astype(np.intp)


def lu_solve(lu, piv, b):
    return scipy.linalg.lu_solve((lu, piv), np.asarray(b, dtype=float), check_finite=False)


def q_basis(theta, alpha):
    th = np.asarray(theta, dtype=float)[:, None]
    al = np.asarray(alpha, dtype=float)[None, :]
    amp = (2.0 * np.sin(th / 2.0)) ** al
    c = al / 2.0 * (th - np.pi)
    return np.stack([amp * np.cos(c - th), amp * np.cos(c), amp * np.cos(c + th)])
