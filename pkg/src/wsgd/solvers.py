"""Time stepping for the 1D implicit / Crank-Nicolson schemes and the 2D ADI splittings.

Each run builds its spatial operators once, factors the time-independent
left-hand matrices once, and then only back-substitutes per step.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .linalg import LUFactor
from .operators import FracOperatorMatrix, Grid1D, axis_operator
from .weights import WsgdParams, check_order

SCHEMES_1D = ("implicit", "cn")
ADI_VARIANTS = ("pr", "douglas", "dyakonov")
SCHEMES = SCHEMES_1D + ADI_VARIANTS
STORE_POLICIES = ("final", "all")


def _zero(*_args):
    return 0.0


@dataclass
class Problem1D:
    v: float
    d: float
    alpha: float
    f: Callable
    u0: Callable
    a: float = 0.0
    b: float = 1.0
    T: float = 1.0
    phi1: Callable = _zero
    phi2: Callable = _zero
    exact: Optional[Callable] = None

    def __post_init__(self):
        self.alpha = check_order(self.alpha)
        if self.v < 0 or self.d < 0:
            raise ValueError(f"coefficients must be nonnegative, got v={self.v}, d={self.d}")

    def grid(self, N: int) -> Grid1D:
        return Grid1D(self.a, self.b, N)


@dataclass
class Problem2D:
    vx: float
    vy: float
    dx: float
    dy: float
    alpha: float
    beta: float
    f: Callable
    u0: Callable
    ax: float = 0.0
    bx: float = 1.0
    ay: float = 0.0
    by: float = 1.0
    T: float = 1.0
    phi: Callable = _zero
    exact: Optional[Callable] = None

    def __post_init__(self):
        self.alpha = check_order(self.alpha)
        self.beta = check_order(self.beta)
        for name in ("vx", "vy", "dx", "dy"):
            if getattr(self, name) < 0:
                raise ValueError(f"coefficient {name} must be nonnegative, got {getattr(self, name)}")

    def grids(self, Nx: int, Ny: int) -> tuple[Grid1D, Grid1D]:
        return Grid1D(self.ax, self.bx, Nx), Grid1D(self.ay, self.by, Ny)


@dataclass
class Trajectory:
    """Stored time levels. ``states[i]`` holds all node values at ``times[i]``."""

    scheme: str
    tau: float
    Nt: int
    nodes: tuple
    times: list = field(default_factory=list)
    states: list = field(default_factory=list)
    levels: list = field(default_factory=list)

    @property
    def final(self) -> np.ndarray:
        return self.states[-1]

    def record(self, level: int, t: float, state: np.ndarray, store: str):
        if store == "all" or level == self.Nt:
            self.levels.append(level)
            self.times.append(t)
            self.states.append(state.copy())


def _check_run(Nt: int, store: str):
    if Nt < 0 or int(Nt) != Nt:
        raise ValueError(f"number of time steps must be a nonnegative integer, got {Nt}")
    if store not in STORE_POLICIES:
        raise ValueError(f"unknown storage policy {store!r}; expected one of {', '.join(STORE_POLICIES)}")


def _boundary_values(p: Problem1D, t: float) -> tuple[float, float]:
    return float(p.phi1(t)), float(p.phi2(t))


def _setup_1d(p: Problem1D, params: WsgdParams, N: int, Nt: int, store: str):
    _check_run(Nt, store)
    if abs(params.alpha - p.alpha) > 1e-15:
        raise ValueError(f"params alpha {params.alpha} does not match problem alpha {p.alpha}")
    grid = p.grid(N)
    K = axis_operator(grid, params, p.d, p.v)
    tau = p.T / Nt if Nt else 0.0
    x = grid.nodes
    U = np.asarray(p.u0(x), dtype=float) * np.ones_like(x)
    U[0], U[-1] = _boundary_values(p, 0.0)
    return grid, K, tau, x, U


def system_matrix_implicit(p: Problem1D, params: WsgdParams, N: int, Nt: int) -> np.ndarray:
    """Interior matrix I - tau*K of the implicit scheme."""
    K = axis_operator(p.grid(N), params, p.d, p.v)
    return np.eye(N - 1) - (p.T / Nt) * K.interior


def solve_implicit_1d(p: Problem1D, params: WsgdParams, N: int, Nt: int, store: str = "final") -> Trajectory:
    grid, K, tau, x, U = _setup_1d(p, params, N, Nt, store)
    traj = Trajectory("implicit", tau, Nt, (x,))
    traj.record(0, 0.0, U, store)
    if Nt == 0:
        return traj
    lu = LUFactor(np.eye(N - 1) - tau * K.interior)
    xi = x[1:-1]
    for n in range(Nt):
        t1 = (n + 1) * tau
        b1 = _boundary_values(p, t1)
        rhs = U[1:-1] + tau * np.asarray(p.f(xi, t1), dtype=float) + tau * K.boundary_term(*b1)
        U = np.empty_like(U)
        U[1:-1] = lu.solve(rhs)
        U[0], U[-1] = b1
        traj.record(n + 1, t1, U, store)
    return traj


def solve_cn_1d(p: Problem1D, params: WsgdParams, N: int, Nt: int, store: str = "final") -> Trajectory:
    grid, K, tau, x, U = _setup_1d(p, params, N, Nt, store)
    traj = Trajectory("cn", tau, Nt, (x,))
    traj.record(0, 0.0, U, store)
    if Nt == 0:
        return traj
    half = 0.5 * tau
    lu = LUFactor(np.eye(N - 1) - half * K.interior)
    xi = x[1:-1]
    f0 = np.asarray(p.f(xi, 0.0), dtype=float)
    for n in range(Nt):
        t1 = (n + 1) * tau
        b1 = _boundary_values(p, t1)
        f1 = np.asarray(p.f(xi, t1), dtype=float)
        rhs = U[1:-1] + half * K.apply(U) + half * (f1 + f0) + half * K.boundary_term(*b1)
        U = np.empty_like(U)
        U[1:-1] = lu.solve(rhs)
        U[0], U[-1] = b1
        f0 = f1
        traj.record(n + 1, t1, U, store)
    return traj


def solve_1d(scheme: str, p: Problem1D, params: WsgdParams, N: int, Nt: int, store: str = "final") -> Trajectory:
    if scheme == "implicit":
        return solve_implicit_1d(p, params, N, Nt, store)
    if scheme == "cn":
        return solve_cn_1d(p, params, N, Nt, store)
    raise ValueError(f"unknown 1D scheme {scheme!r}; expected one of {', '.join(SCHEMES_1D)}")


def _boundary_frame(p: Problem2D, X, Y, t: float) -> np.ndarray:
    """Full array with Dirichlet data on the boundary and zeros inside."""
    B = np.zeros_like(X)
    phi = np.asarray(p.phi(X, Y, t), dtype=float) * np.ones_like(X)
    B[0, :], B[-1, :], B[:, 0], B[:, -1] = phi[0, :], phi[-1, :], phi[:, 0], phi[:, -1]
    return B


def solve_adi(p: Problem2D, variant: str, params_x: WsgdParams, params_y: WsgdParams,
              Nx: int, Ny: int, Nt: int, store: str = "final") -> Trajectory:
    """Factored 2D Crank-Nicolson step split as Peaceman-Rachford, Douglas or D'Yakonov.

    Arrays are indexed [x, y]. The intermediate value V on the x-boundaries is
    chosen so that each splitting reproduces the unsplit factored scheme.
    """
    variant = variant.lower()
    if variant not in ADI_VARIANTS:
        raise ValueError(f"unknown ADI variant {variant!r}; expected one of {', '.join(ADI_VARIANTS)}")
    _check_run(Nt, store)
    gx, gy = p.grids(Nx, Ny)
    Kx = axis_operator(gx, params_x, p.dx, p.vx)
    Ky = axis_operator(gy, params_y, p.dy, p.vy)
    Mx, My = Kx.full, Ky.full
    tau = p.T / Nt if Nt else 0.0
    x, y = gx.nodes, gy.nodes
    X, Y = np.meshgrid(x, y, indexing="ij")
    U = np.asarray(p.u0(X, Y), dtype=float) * np.ones_like(X)
    B = _boundary_frame(p, X, Y, 0.0)
    U[0, :], U[-1, :], U[:, 0], U[:, -1] = B[0, :], B[-1, :], B[:, 0], B[:, -1]

    traj = Trajectory(variant, tau, Nt, (x, y))
    traj.record(0, 0.0, U, store)
    if Nt == 0:
        return traj

    h2 = 0.5 * tau
    lux = LUFactor(np.eye(Nx - 1) - h2 * Kx.interior)
    luy = LUFactor(np.eye(Ny - 1) - h2 * Ky.interior)
    Xi, Yi = X[1:-1, 1:-1], Y[1:-1, 1:-1]

    def ay(W):
        return W @ My.T

    def ax(W):
        return Mx @ W

    for n in range(Nt):
        t0 = n * tau
        t1 = t0 + tau
        F = np.asarray(p.f(Xi, Yi, t0 + h2), dtype=float)
        Bn = _boundary_frame(p, X, Y, t1)
        AyU = ay(U)
        AyB = ay(Bn[[0, -1], :])

        if variant == "pr":
            Vb = 0.5 * ((U[[0, -1], 1:-1] + h2 * AyU[[0, -1]]) + (Bn[[0, -1], 1:-1] - h2 * AyB))
            rhs1 = U[1:-1, 1:-1] + h2 * AyU[1:-1] + h2 * F
        elif variant == "douglas":
            Vb = Bn[[0, -1], 1:-1] - h2 * AyB + h2 * AyU[[0, -1]]
            rhs1 = U[1:-1, 1:-1] + h2 * ax(U)[:, 1:-1] + tau * AyU[1:-1] + tau * F
        else:
            Vb = Bn[[0, -1], 1:-1] - h2 * AyB
            Z = U[:, 1:-1] + h2 * AyU
            rhs1 = Z[1:-1] + h2 * ax(Z) + tau * F

        rhs1 = rhs1 + h2 * (np.outer(Kx.left_col, Vb[0]) + np.outer(Kx.right_col, Vb[1]))
        V = np.empty((Nx + 1, Ny - 1))
        V[[0, -1]] = Vb
        V[1:-1] = lux.solve(rhs1)

        if variant == "pr":
            rhs2 = V[1:-1] + h2 * ax(V) + h2 * F
        elif variant == "douglas":
            rhs2 = V[1:-1] - h2 * AyU[1:-1]
        else:
            rhs2 = V[1:-1]

        Un = Bn.copy()
        rhs2 = rhs2 + h2 * (np.outer(Bn[1:-1, 0], Ky.left_col) + np.outer(Bn[1:-1, -1], Ky.right_col))
        Un[1:-1, 1:-1] = luy.solve(rhs2.T).T
        U = Un
        traj.record(n + 1, t1, U, store)
    return traj
