"""Grünwald weights, WSGD weight triples and fused second-order weights.

The WSGD operator mixes shifted Grünwald sums with weights ``lambda_j``
chosen so the first-order error term cancels::

    sum_j lambda_j = 1,    sum_j lambda_j * (p_j - alpha/2) = 0.

For the shift set (1, 0, -1) the solutions form a line, parameterised by
whichever of the three weights is fixed (sets ``S1``, ``S2``, ``S3``).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ._backend import kernels
from .errors import DegenerateShiftError, InvalidOrderError

SETS = ("S1", "S2", "S3")
STANDARD_SHIFTS = (1.0, 0.0, -1.0)
PARAM_TOL = 1e-13


def check_order(alpha: float) -> float:
    """Validate a fractional order; admitted range is 1 < alpha <= 2."""
    alpha = float(alpha)
    if not (1.0 < alpha <= 2.0):
        raise InvalidOrderError(f"fractional order must satisfy 1 < alpha <= 2, got {alpha!r}")
    return alpha


@dataclass(frozen=True)
class WsgdParams:
    """A weight triple for the shift set (1, 0, -1), tied to an order alpha."""

    alpha: float
    lambda1: float
    lambda2: float
    lambda3: float
    label: str = ""

    def __post_init__(self):
        object.__setattr__(self, "alpha", check_order(self.alpha))
        scale = 1.0 + max(abs(self.lambda1), abs(self.lambda2), abs(self.lambda3))
        r1, r2 = self.residuals()
        if abs(r1) > PARAM_TOL * scale or abs(r2) > PARAM_TOL * scale:
            raise ValueError(
                f"weights {self.triple} violate the constraints at alpha={self.alpha}: "
                f"sum-1={r1:.3e}, l1-l3-alpha/2={r2:.3e}"
            )

    @property
    def triple(self) -> tuple[float, float, float]:
        return (self.lambda1, self.lambda2, self.lambda3)

    def residuals(self) -> tuple[float, float]:
        """Defects of the two constraints (both zero for a valid triple)."""
        l1, l2, l3 = self.triple
        return (l1 + l2 + l3 - 1.0, l1 - l3 - self.alpha / 2.0)


def set_triple(set_name: str, free_value, alpha):
    """Weight triple for ``set_name`` at ``free_value``; broadcasts over arrays."""
    s = free_value
    a = alpha
    if set_name == "S1":
        return (s + 0 * a, (2.0 + a) / 2.0 - 2.0 * s, s - a / 2.0)
    if set_name == "S2":
        return ((2.0 + a) / 4.0 - s / 2.0, s + 0 * a, (2.0 - a) / 4.0 - s / 2.0)
    if set_name == "S3":
        return (a / 2.0 + s, (2.0 - a) / 2.0 - 2.0 * s, s + 0 * a)
    raise ValueError(f"unknown parameter set {set_name!r}; expected one of {', '.join(SETS)}")


def params_from_set(set_name: str, free_value: float, alpha: float) -> WsgdParams:
    alpha = check_order(alpha)
    l1, l2, l3 = (float(v) for v in set_triple(set_name, float(free_value), alpha))
    return WsgdParams(alpha, l1, l2, l3, label=f"{set_name}={free_value:g}")


def params_general(shifts: Sequence[float], alpha: float, given: tuple[int, float] | None = None):
    """Solve the weight system for m = 2 or m = 3 real shifts.

    For m = 3 exactly one weight is fixed through ``given = (index, value)``
    with a zero-based index. Returns a tuple of m weights.
    """
    alpha = check_order(alpha)
    p = [float(v) for v in shifts]
    m = len(p)
    if m not in (2, 3):
        raise ValueError(f"only m = 2 or m = 3 shifts are supported, got m = {m}")
    if len(set(p)) != m:
        raise DegenerateShiftError(f"shifts must be pairwise distinct, got {tuple(p)}")

    if m == 2:
        if given is not None:
            raise ValueError("the m = 2 system has a unique solution; do not fix a weight")
        p1, p2 = p
        return ((alpha - 2 * p2) / (2 * (p1 - p2)), (2 * p1 - alpha) / (2 * (p1 - p2)))

    if given is None:
        raise ValueError("the m = 3 system needs one fixed weight: given=(index, value)")
    idx, val = given
    val = float(val)
    p1, p2, p3 = p
    if idx == 0:
        _check_pair(p2, p3, "p2", "p3")
        l2 = (2 * (p1 - p3) * val + 2 * p3 - alpha) / (2 * (p3 - p2))
        l3 = (2 * (p2 - p1) * val - 2 * p2 + alpha) / (2 * (p3 - p2))
        return (val, l2, l3)
    if idx == 1:
        _check_pair(p1, p3, "p1", "p3")
        l1 = (2 * (p2 - p3) * val + 2 * p3 - alpha) / (2 * (p3 - p1))
        l3 = (2 * (p1 - p2) * val - 2 * p1 + alpha) / (2 * (p3 - p1))
        return (l1, val, l3)
    if idx == 2:
        _check_pair(p1, p2, "p1", "p2")
        l1 = (2 * (p2 - p3) * val - 2 * p2 + alpha) / (2 * (p1 - p2))
        l2 = (2 * (p3 - p1) * val + 2 * p1 - alpha) / (2 * (p1 - p2))
        return (l1, l2, val)
    raise ValueError(f"given index must be 0, 1 or 2, got {idx!r}")


def _check_pair(a, b, na, nb):
    if a == b:
        raise DegenerateShiftError(f"shifts {na} and {nb} coincide ({a}); the weight formula divides by {na} - {nb}")


def grunwald_weights(alpha: float, L: int) -> np.ndarray:
    """First ``L`` normalized Grünwald weights via w_k = (1 - (alpha+1)/k) w_{k-1}."""
    alpha = check_order(alpha)
    if L < 1:
        raise ValueError(f"need at least one weight, got L = {L}")
    return kernels.grunwald_weights(alpha, int(L))


def wsgd_weights(params: WsgdParams, L: int) -> np.ndarray:
    """Fused weights g_k = l1 w_k + l2 w_{k-1} + l3 w_{k-2}."""
    w = grunwald_weights(params.alpha, L)
    return kernels.fused_weights(w, *params.triple)


# C_alpha for the three canonical triples (second-order error constant).
_CANONICAL = {
    "first": lambda a: (a - a * a) / 4.0,
    "second": lambda a: (2.0 - a * a) / 4.0,
    "third": lambda a: (4.0 - a * a) / 4.0,
}


def canonical_triple(which: str, alpha: float) -> tuple[float, float, float]:
    a = alpha
    if which == "first":
        return (a / 2.0, (2.0 - a) / 2.0, 0.0)
    if which == "second":
        return ((2.0 + a) / 4.0, 0.0, (2.0 - a) / 4.0)
    if which == "third":
        return ((2.0 + a) / 2.0, (-2.0 - a) / 2.0, 1.0)
    raise ValueError(f"unknown canonical triple {which!r}; expected first, second or third")


def error_constant(alpha: float, which: str) -> float:
    """Leading h^2 coefficient of the symbol expansion for a canonical triple.

    Diagnostic only; alpha = 1 is accepted here since the formula is a polynomial.
    """
    if which not in _CANONICAL:
        raise ValueError(f"unknown canonical triple {which!r}; expected first, second or third")
    a = float(alpha)
    return _CANONICAL[which](a) + (3.0 * a * a + a) / 24.0
