"""Manufactured test problems built from the Riemann-Liouville derivative of monomials."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Union

import numpy as np
from scipy.special import gammaln, gammasgn

from .solvers import Problem1D, Problem2D
from .weights import check_order

# x^3 (1-x)^3 = x^3 - 3x^4 + 3x^5 - x^6
BUMP_TERMS = ((3, 1.0), (4, -3.0), (5, 3.0), (6, -1.0))


def gamma_ratio(p: int, alpha: float) -> float:
    """Gamma(p+1) / Gamma(p+1-alpha) through log-Gamma."""
    z = p + 1 - alpha
    if z <= 0 and float(z).is_integer():
        raise ValueError(f"Gamma({z}) is undefined for p={p}, alpha={alpha}")
    return float(gammasgn(z) * np.exp(gammaln(p + 1) - gammaln(z)))


def rl_monomial(p: int, alpha: float, x):
    """Left Riemann-Liouville derivative (lower limit 0) of x^p, i.e. Gamma ratio times x^(p-alpha)."""
    if int(p) != p or p < 0:
        raise ValueError(f"monomial degree must be a nonnegative integer, got {p}")
    x = np.asarray(x, dtype=float)
    if np.any(x < 0):
        raise ValueError("rl_monomial needs x >= 0")
    c = gamma_ratio(int(p), alpha)
    with np.errstate(divide="ignore"):
        out = c * x ** (p - alpha)
    return float(out) if out.ndim == 0 else out


def bump(x):
    return x ** 3 * (1 - x) ** 3


def bump_dx(x):
    return 3 * x ** 2 * (1 - x) ** 3 - 3 * x ** 3 * (1 - x) ** 2


def bump_rl_sum(x, alpha):
    """Left plus right RL derivative of x^3(1-x)^3 on (0, 1).

    The bump is symmetric under x -> 1-x, so the right derivative is the left one mirrored.
    """
    x = np.asarray(x, dtype=float)
    return sum(c * (rl_monomial(p, alpha, x) + rl_monomial(p, alpha, 1 - x)) for p, c in BUMP_TERMS)


@dataclass
class ManufacturedCase:
    name: str
    problem: Union[Problem1D, Problem2D]
    exact: Callable
    description: str
    dim: int


def example1(alpha: float) -> ManufacturedCase:
    alpha = check_order(alpha)

    def f(x, t):
        return np.exp(-t) * (-bump(x) + bump_dx(x) - bump_rl_sum(x, alpha))

    def exact(x, t):
        return np.exp(-t) * bump(np.asarray(x, dtype=float))

    prob = Problem1D(v=1.0, d=1.0, alpha=alpha, f=f, u0=lambda x: bump(np.asarray(x, dtype=float)),
                     a=0.0, b=1.0, T=1.0, exact=exact)
    return ManufacturedCase("example1", prob, exact,
                            "1D advection-diffusion on (0,1), u = exp(-t) x^3 (1-x)^3", 1)


def example2(alpha: float, beta: float) -> ManufacturedCase:
    alpha, beta = check_order(alpha), check_order(beta)

    def f(x, y, t):
        X, Y = bump(x), bump(y)
        return np.exp(-t) * (-X * Y + bump_dx(x) * Y + X * bump_dx(y)
                             - bump_rl_sum(x, alpha) * Y - X * bump_rl_sum(y, beta))

    def exact(x, y, t):
        return np.exp(-t) * bump(np.asarray(x, dtype=float)) * bump(np.asarray(y, dtype=float))

    prob = Problem2D(vx=1.0, vy=1.0, dx=1.0, dy=1.0, alpha=alpha, beta=beta, f=f,
                     u0=lambda x, y: bump(np.asarray(x, dtype=float)) * bump(np.asarray(y, dtype=float)),
                     T=1.0, exact=exact)
    return ManufacturedCase("example2", prob, exact,
                            "2D advection-diffusion on (0,1)^2, u = exp(-t) x^3(1-x)^3 y^3(1-y)^3", 2)


CASES = {"example1": example1, "example2": example2}


def get_case(name: str, alpha: float, beta: float | None = None) -> ManufacturedCase:
    if name not in CASES:
        raise ValueError(f"unknown case {name!r}; expected one of {', '.join(CASES)}")
    if name == "example2":
        return example2(alpha, alpha if beta is None else beta)
    return example1(alpha)
