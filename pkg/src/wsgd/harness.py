"""Error norms, convergence studies and table emission."""
from __future__ import annotations

import csv
import enum
import io
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .errors import MissingExactSolutionError
from .problems import ManufacturedCase
from .solvers import ADI_VARIANTS, SCHEMES_1D, Trajectory, solve_1d, solve_adi
from .weights import WsgdParams

TAU_RULES = ("h", "h2", "fixed")


class ErrorNorm(str, enum.Enum):
    FINAL_TIME_MAX = "final_time_max"
    ALL_LEVELS_MAX = "all_levels_max"


@dataclass(frozen=True)
class ConvergenceRow:
    h: float
    tau: float
    error: float
    rate: Optional[float] = None


def _level_error(traj: Trajectory, i: int, exact) -> float:
    t = traj.times[i]
    U = traj.states[i]
    if len(traj.nodes) == 1:
        x = traj.nodes[0][1:-1]
        return float(np.max(np.abs(exact(x, t) - U[1:-1]), initial=0.0))
    X, Y = np.meshgrid(traj.nodes[0][1:-1], traj.nodes[1][1:-1], indexing="ij")
    return float(np.max(np.abs(exact(X, Y, t) - U[1:-1, 1:-1]), initial=0.0))


def max_error(traj: Trajectory, exact, norm=ErrorNorm.FINAL_TIME_MAX) -> float:
    """Max-norm error over interior nodes.

    ``all_levels_max`` maximises over time levels 1..Nt-1 as well; it needs a
    trajectory stored with every level and falls back to the last level when Nt <= 1.
    """
    if exact is None:
        raise MissingExactSolutionError("this problem has no exact solution to measure errors against")
    norm = ErrorNorm(norm)
    if norm is ErrorNorm.FINAL_TIME_MAX or traj.Nt <= 1:
        return _level_error(traj, len(traj.states) - 1, exact)
    if len(traj.levels) != traj.Nt + 1:
        raise ValueError("all_levels_max needs a trajectory stored with store='all'")
    return max(_level_error(traj, i, exact) for i in range(1, traj.Nt))


def steps_for(h, tau_rule: str, T: float = 1.0, tau=None) -> tuple[float, int]:
    """(tau, Nt) for a grid step under a coupling rule; Nt is rounded to a whole number."""
    if tau_rule == "h":
        tau_v = Fraction(h) if isinstance(h, Fraction) else h
    elif tau_rule == "h2":
        tau_v = (Fraction(h) ** 2) if isinstance(h, Fraction) else h * h
    elif tau_rule == "fixed":
        if tau is None:
            raise ValueError("tau_rule 'fixed' needs an explicit tau")
        tau_v = tau
    else:
        raise ValueError(f"unknown tau rule {tau_rule!r}; expected one of {', '.join(TAU_RULES)}")
    Nt = round(float(Fraction(T) / Fraction(tau_v)) if isinstance(tau_v, Fraction) else T / tau_v)
    if Nt < 1:
        raise ValueError(f"time step {tau_v} exceeds the horizon T={T}")
    return T / Nt, Nt


def run_case(case: ManufacturedCase, scheme: str, params: WsgdParams, h, Nt: int,
             params_y: WsgdParams | None = None, store: str = "final") -> Trajectory:
    p = case.problem
    if case.dim == 1:
        if scheme not in SCHEMES_1D:
            raise ValueError(f"scheme {scheme!r} does not apply to a 1D case; use one of {', '.join(SCHEMES_1D)}")
        N = round((p.b - p.a) / float(h))
        return solve_1d(scheme, p, params, N, Nt, store)
    if scheme not in ADI_VARIANTS:
        raise ValueError(f"scheme {scheme!r} does not apply to a 2D case; use one of {', '.join(ADI_VARIANTS)}")
    Nx = round((p.bx - p.ax) / float(h))
    Ny = round((p.by - p.ay) / float(h))
    return solve_adi(p, scheme, params, params_y if params_y is not None else params, Nx, Ny, Nt, store)


def convergence_study(case: ManufacturedCase, scheme: str, params: WsgdParams, h_list: Sequence,
                      tau_rule: str = "h", norm=ErrorNorm.FINAL_TIME_MAX,
                      params_y: WsgdParams | None = None, tau=None) -> list[ConvergenceRow]:
    if not h_list:
        raise ValueError("h_list is empty")
    for a, b in zip(h_list, h_list[1:]):
        if not math.isclose(float(a), 2 * float(b), rel_tol=1e-12):
            raise ValueError(f"grid steps must halve each time, got {float(a)} then {float(b)}")
    norm = ErrorNorm(norm)
    store = "all" if norm is ErrorNorm.ALL_LEVELS_MAX else "final"
    rows: list[ConvergenceRow] = []
    for h in h_list:
        tau_v, Nt = steps_for(h, tau_rule, case.problem.T, tau)
        traj = run_case(case, scheme, params, h, Nt, params_y, store)
        err = max_error(traj, case.exact, norm)
        rate = None
        if rows and err > 0 and rows[-1].error > 0:
            rate = math.log2(rows[-1].error / err)
        rows.append(ConvergenceRow(float(h), tau_v, err, rate))
    return rows


def _fmt_rate(r):
    return "-" if r is None else f"{r:.2f}"


def emit_table(rows: Sequence[ConvergenceRow], fmt: str = "csv") -> str:
    if not rows:
        raise ValueError("no rows to emit")
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["h", "tau", "error", "rate"])
        for r in rows:
            w.writerow([f"{r.h:.17g}", f"{r.tau:.17g}", f"{r.error:.2E}", _fmt_rate(r.rate)])
        return buf.getvalue()
    if fmt == "markdown":
        lines = ["| h | tau | ‖e‖∞ | Rate |", "|---|---|---|---|"]
        for r in rows:
            lines.append(f"| {_fmt_step(r.h)} | {_fmt_step(r.tau)} | {r.error:.2E} | {_fmt_rate(r.rate)} |")
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown table format {fmt!r}; expected csv or markdown")


def _fmt_step(v: float) -> str:
    fr = Fraction(v).limit_denominator(10 ** 6)
    if fr.numerator == 1 and abs(float(fr) - v) < 1e-15:
        return f"1/{fr.denominator}"
    return f"{v:.6g}"


def parse_table_csv(text: str) -> list[ConvergenceRow]:
    reader = csv.DictReader(io.StringIO(text))
    if reader.fieldnames != ["h", "tau", "error", "rate"]:
        raise ValueError(f"unexpected CSV header {reader.fieldnames}")
    out = []
    for rec in reader:
        rate = None if rec["rate"] == "-" else float(rec["rate"])
        out.append(ConvergenceRow(float(rec["h"]), float(rec["tau"]), float(rec["error"]), rate))
    return out
