"""Dense LU core: factor once, solve many right-hand sides."""
from __future__ import annotations

import numpy as np

from ._backend import kernels


class LUFactor:
    """Partial-pivoting LU of a square matrix, reused across solves."""

    def __init__(self, a):
        a = np.asarray(a, dtype=float)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError(f"expected a square matrix, got shape {a.shape}")
        self.n = a.shape[0]
        self._lu, self._piv = kernels.lu_factor(a)

    def solve(self, b) -> np.ndarray:
        """Solve A x = b; ``b`` may be a vector or an (n, k) batch of columns."""
        b = np.asarray(b, dtype=float)
        if b.shape[0] != self.n:
            raise ValueError(f"right-hand side has {b.shape[0]} rows, matrix has {self.n}")
        return kernels.lu_solve(self._lu, self._piv, b)


def lu_solve_core(a, rhs) -> np.ndarray:
    return LUFactor(a).solve(rhs)
