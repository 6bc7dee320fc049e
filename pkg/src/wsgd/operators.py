"""Discrete left/right WSGD operators and central advection on uniform grids.

All ``apply_*`` functions take node values u_0..u_N and return the N-1
interior values. Matrices act on full node vectors or are split into an
interior block plus the two boundary columns.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from ._backend import kernels
from .errors import UnsupportedShiftError
from .weights import STANDARD_SHIFTS, WsgdParams, wsgd_weights


@dataclass(frozen=True)
class Grid1D:
    a: float
    b: float
    N: int

    def __post_init__(self):
        if not self.b > self.a:
            raise ValueError(f"grid needs b > a, got a={self.a}, b={self.b}")
        if int(self.N) != self.N or self.N < 2:
            raise ValueError(f"grid needs an integer N >= 2, got {self.N}")

    @property
    def h(self) -> float:
        return (self.b - self.a) / self.N

    @property
    def nodes(self) -> np.ndarray:
        return self.a + self.h * np.arange(self.N + 1)

    @property
    def interior(self) -> np.ndarray:
        return self.nodes[1:-1]

    @classmethod
    def from_step(cls, a: float, b: float, h) -> "Grid1D":
        """Grid with step ``h``; rational steps such as Fraction(1, 10) are exact."""
        n = Fraction(b - a) / Fraction(h) if isinstance(h, Fraction) else (b - a) / h
        N = round(n)
        if abs(float(n) - N) > 1e-9:
            raise ValueError(f"step {h} does not divide [{a}, {b}] into whole intervals")
        return cls(a, b, int(N))


@dataclass(frozen=True)
class Grid2D:
    gx: Grid1D
    gy: Grid1D


def _check_shifts(shifts: Sequence[float]):
    if tuple(float(s) for s in shifts) != STANDARD_SHIFTS:
        raise UnsupportedShiftError(
            f"grid operators support only the shift set (1, 0, -1), got {tuple(shifts)}"
        )


def _weights(params: WsgdParams, N: int, shifts) -> np.ndarray:
    _check_shifts(shifts)
    return wsgd_weights(params, N + 1)


def apply_left_wsgd(u, params: WsgdParams, h: float, shifts=STANDARD_SHIFTS) -> np.ndarray:
    u = np.asarray(u, dtype=float)
    g = _weights(params, len(u) - 1, shifts)
    return kernels.wsgd_left_sum(g, u) / h ** params.alpha


def apply_right_wsgd(u, params: WsgdParams, h: float, shifts=STANDARD_SHIFTS) -> np.ndarray:
    u = np.asarray(u, dtype=float)
    g = _weights(params, len(u) - 1, shifts)
    return kernels.wsgd_right_sum(g, u) / h ** params.alpha


def central_advection(u, h: float) -> np.ndarray:
    u = np.asarray(u, dtype=float)
    return (u[2:] - u[:-2]) / (2.0 * h)


def left_matrix(params: WsgdParams, N: int, h: float, shifts=STANDARD_SHIFTS) -> np.ndarray:
    """(N-1) x (N+1) matrix of the left operator acting on node values."""
    g = _weights(params, N, shifts)
    return kernels.left_operator(g, N) / h ** params.alpha


def right_matrix(params: WsgdParams, N: int, h: float, shifts=STANDARD_SHIFTS) -> np.ndarray:
    return left_matrix(params, N, h, shifts)[::-1, ::-1].copy()


def advection_matrix(N: int, h: float) -> np.ndarray:
    C = np.zeros((N - 1, N + 1))
    r = np.arange(N - 1)
    C[r, r] = -1.0 / (2.0 * h)
    C[r, r + 2] = 1.0 / (2.0 * h)
    return C


@dataclass(frozen=True)
class FracOperatorMatrix:
    """Interior block plus boundary-coupling columns of a node-to-interior operator."""

    interior: np.ndarray
    left_col: np.ndarray
    right_col: np.ndarray
    h: float
    alpha: float
    params: WsgdParams | None = None

    @classmethod
    def from_full(cls, full: np.ndarray, h: float, alpha: float, params=None) -> "FracOperatorMatrix":
        full = np.asarray(full, dtype=float)
        return cls(full[:, 1:-1].copy(), full[:, 0].copy(), full[:, -1].copy(), h, alpha, params)

    @property
    def full(self) -> np.ndarray:
        return np.column_stack([self.left_col, self.interior, self.right_col])

    def apply(self, u) -> np.ndarray:
        u = np.asarray(u, dtype=float)
        return self.interior @ u[1:-1] + self.left_col * u[0] + self.right_col * u[-1]

    def boundary_term(self, u_left: float, u_right: float) -> np.ndarray:
        return self.left_col * u_left + self.right_col * u_right


def assemble_diffusion_matrix(grid: Grid1D, params: WsgdParams, d: float = 1.0,
                              shifts=STANDARD_SHIFTS) -> FracOperatorMatrix:
    """d * (L + R) split into interior block and boundary columns."""
    full = d * (left_matrix(params, grid.N, grid.h, shifts) + right_matrix(params, grid.N, grid.h, shifts))
    return FracOperatorMatrix.from_full(full, grid.h, params.alpha, params)


def axis_operator(grid: Grid1D, params: WsgdParams, d: float, v: float,
                  shifts=STANDARD_SHIFTS) -> FracOperatorMatrix:
    """Spatial operator d(L + R) - v*C of the advection-diffusion right-hand side."""
    N, h = grid.N, grid.h
    full = d * (left_matrix(params, N, h, shifts) + right_matrix(params, N, h, shifts))
    full -= v * advection_matrix(N, h)
    return FracOperatorMatrix.from_full(full, h, params.alpha, params)
