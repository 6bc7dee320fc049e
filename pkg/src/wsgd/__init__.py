"""Second-order weighted and shifted Grünwald difference (WSGD) schemes for
space-fractional advection-diffusion equations, with stability tools."""
from ._backend import BACKEND
from .errors import (
    DegenerateShiftError,
    InvalidOrderError,
    MissingExactSolutionError,
    SingularMatrixError,
    UnsupportedShiftError,
    WsgdError,
)
from .harness import ConvergenceRow, ErrorNorm, convergence_study, emit_table, max_error, parse_table_csv
from .linalg import LUFactor, lu_solve_core
from .operators import (
    FracOperatorMatrix,
    Grid1D,
    Grid2D,
    apply_left_wsgd,
    apply_right_wsgd,
    assemble_diffusion_matrix,
    axis_operator,
    central_advection,
)
from .problems import CASES, ManufacturedCase, example1, example2, rl_monomial
from .solvers import Problem1D, Problem2D, Trajectory, solve_adi, solve_cn_1d, solve_implicit_1d
from .stability import (
    CourantNumbers,
    StabilityReport,
    amp_2d,
    amp_cn,
    amp_implicit,
    emit_q_curves,
    eval_Q,
    max_abs_Q,
    q_symbol,
    scan_region,
)
from .weights import (
    WsgdParams,
    check_order,
    error_constant,
    grunwald_weights,
    params_from_set,
    params_general,
    wsgd_weights,
)

__version__ = "0.1.0"
