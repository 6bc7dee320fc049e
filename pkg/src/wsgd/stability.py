"""Symbol Q(theta, alpha) of the combined left+right stencil and amplification factors."""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from ._backend import kernels
from .weights import SETS, WsgdParams, set_triple

NONPOS_TOL = 1e-12
DEFAULT_THETA_POINTS = 2001
DEFAULT_ALPHA_POINTS = 101

# Free values plotted per set in the Q-curve figures.
FIGURE_PRESETS = {
    "S1": (0.75, 1.0, 1.2, 1.5),
    "S2": (-2.0, -0.1, 0.0, 0.4),
    "S3": (-0.001, 0.0, 0.001, 0.01),
}


@dataclass(frozen=True)
class CourantNumbers:
    nu: float
    lam: float

    def __post_init__(self):
        if self.lam < 0:
            raise ValueError(f"diffusion number lam must be >= 0, got {self.lam}")


def theta_grid(M: int = DEFAULT_THETA_POINTS) -> np.ndarray:
    if M < 2:
        raise ValueError(f"theta grid needs at least 2 points, got {M}")
    return np.linspace(0.0, np.pi, M)


def alpha_grid(M: int = DEFAULT_ALPHA_POINTS, lo: float = 1.0, hi: float = 2.0) -> np.ndarray:
    if M < 1:
        raise ValueError(f"alpha grid needs at least 1 point, got {M}")
    return np.linspace(lo, hi, M)


def _q_triple(theta, alpha, l1, l2, l3):
    th = np.abs(np.asarray(theta, dtype=float))
    c = alpha / 2.0 * (th - np.pi)
    amp = (2.0 * np.sin(th / 2.0)) ** alpha
    return amp * (l1 * np.cos(c - th) + l2 * np.cos(c) + l3 * np.cos(c + th))


def q_symbol(theta, alpha, triple):
    """Q for a raw (alpha, triple) pair without validation; alpha = 1 is allowed."""
    out = _q_triple(theta, alpha, *triple)
    return float(out) if np.ndim(out) == 0 else out


def eval_Q(theta, params: WsgdParams):
    """Q at ``theta`` (scalar or array). Uses |theta| so the result is even."""
    out = _q_triple(theta, params.alpha, *params.triple)
    return float(out) if np.ndim(out) == 0 else out


def amp_implicit(theta, c: CourantNumbers, params: WsgdParams, coef: float = 0.5):
    """Modulus of the implicit amplification factor; ``coef`` multiplies lam*Q."""
    q = eval_Q(theta, params)
    b = c.nu * np.sin(theta)
    return 1.0 / np.sqrt((1.0 - coef * c.lam * q) ** 2 + b * b)


def amp_cn(theta, c: CourantNumbers, params: WsgdParams, coef: float = 0.5):
    """Modulus of the Crank-Nicolson amplification factor."""
    q = eval_Q(theta, params)
    a = coef * c.lam * q
    b = c.nu * np.sin(theta)
    return np.sqrt(((1.0 + a) ** 2 + b * b) / ((1.0 - a) ** 2 + b * b))


def amp_2d(theta_x, theta_y, cx: CourantNumbers, cy: CourantNumbers,
           px: WsgdParams, py: WsgdParams, coef: float = 0.5):
    return amp_cn(theta_x, cx, px, coef) * amp_cn(theta_y, cy, py, coef)


def q_surface(set_name: str, free_value: float, thetas=None, alphas=None) -> np.ndarray:
    """Q sampled on the (theta, alpha) tensor grid, shape (len(thetas), len(alphas))."""
    thetas = theta_grid() if thetas is None else np.asarray(thetas, dtype=float)
    alphas = alpha_grid() if alphas is None else np.asarray(alphas, dtype=float)
    basis = kernels.q_basis(np.abs(thetas), alphas)
    l1, l2, l3 = set_triple(set_name, free_value, alphas)
    return basis[0] * l1 + basis[1] * l2 + basis[2] * l3


def max_abs_Q(set_name: str, free_value: float, thetas=None, alphas=None) -> float:
    return float(np.max(np.abs(q_surface(set_name, free_value, thetas, alphas))))


def scan_region(set_name: str, lo: float, hi: float, step: float,
                thetas=None, alphas=None, tol: float = NONPOS_TOL):
    """Maximal sub-intervals of sampled free values where Q <= tol on the whole grid.

    Returns a list of (start, end) pairs at the sampling resolution.
    """
    if step <= 0:
        raise ValueError(f"step must be positive, got {step}")
    if set_name not in SETS:
        raise ValueError(f"unknown parameter set {set_name!r}; expected one of {', '.join(SETS)}")
    thetas = theta_grid() if thetas is None else np.asarray(thetas, dtype=float)
    alphas = alpha_grid() if alphas is None else np.asarray(alphas, dtype=float)
    basis = kernels.q_basis(np.abs(thetas), alphas)
    n = int(np.floor((hi - lo) / step + 1e-9)) + 1
    values = lo + step * np.arange(n)
    # Q is affine in the free value: Q = B0 + s*B1 on the whole grid.
    t0 = set_triple(set_name, 0.0, alphas)
    t1 = set_triple(set_name, 1.0, alphas)
    b0 = sum(basis[i] * t0[i] for i in range(3))
    b1 = sum(basis[i] * t1[i] for i in range(3)) - b0
    ok = np.array([np.max(b0 + s * b1) <= tol for s in values])
    regions = []
    start = None
    for i, good in enumerate(ok):
        if good and start is None:
            start = i
        if not good and start is not None:
            regions.append((float(values[start]), float(values[i - 1])))
            start = None
    if start is not None:
        regions.append((float(values[start]), float(values[-1])))
    return regions


@dataclass
class StabilityReport:
    params: WsgdParams
    samples: list = field(default_factory=list)
    q_max_abs: float = 0.0
    q_all_nonpositive: bool = True

    @classmethod
    def build(cls, params: WsgdParams, thetas=None, tol: float = NONPOS_TOL):
        thetas = theta_grid() if thetas is None else np.asarray(thetas, dtype=float)
        q = np.atleast_1d(eval_Q(thetas, params))
        samples = [(float(t), params.alpha, float(v)) for t, v in zip(thetas, q)]
        return cls(params, samples, float(np.max(np.abs(q))), bool(np.all(q <= tol)))


def figure_params(set_name: str, alphas: Sequence[float], free_values: Iterable[float] | None = None):
    """(label, WsgdParams) pairs for each preset free value and alpha."""
    free_values = FIGURE_PRESETS[set_name] if free_values is None else free_values
    out = []
    for s in free_values:
        for a in alphas:
            l1, l2, l3 = (float(v) for v in set_triple(set_name, s, a))
            out.append((f"{set_name}={s:g}", WsgdParams(a, l1, l2, l3, label=f"{set_name}={s:g}")))
    return out


def emit_q_curves(params_list, thetas=None) -> list[tuple[float, float, str, float]]:
    """Records (theta, alpha, label, Q) for every (params, theta) combination.

    ``params_list`` holds WsgdParams or (label, WsgdParams) pairs.
    """
    thetas = theta_grid() if thetas is None else np.asarray(thetas, dtype=float)
    rows = []
    for item in params_list:
        label, p = item if isinstance(item, tuple) else (item.label, item)
        q = np.atleast_1d(eval_Q(thetas, p))
        rows.extend((float(t), p.alpha, label, float(v)) for t, v in zip(thetas, q))
    return rows


def q_curves_csv(rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["theta", "alpha", "label", "Q"])
    for t, a, label, q in rows:
        w.writerow([f"{t:.17g}", f"{a:.17g}", label, f"{q:.17g}"])
    return buf.getvalue()
