"""Command-line front end: ``wsgd {weights,stability,solve,converge,figures}``.

Options may also come from a flat ``key=value`` config file (``--config``);
keys are flag names with dashes replaced by underscores, and flags given on
the command line win over the file.
"""
from __future__ import annotations

import argparse
import math
import os
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import harness, stability
from .errors import SingularMatrixError, WsgdError
from .problems import CASES, get_case
from .solvers import ADI_VARIANTS, SCHEMES, SCHEMES_1D
from .weights import SETS, error_constant, grunwald_weights, params_from_set, wsgd_weights

EXIT_OK, EXIT_USAGE, EXIT_NUMERIC = 0, 1, 2
OUTPUT_DIR_ENV = "WSGD_OUTPUT_DIR"
NORM_CHOICES = ("auto", "final_time_max", "all_levels_max")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a number or ratio: {text!r}")


def rational_list(text: str) -> list[Fraction]:
    return [rational(t) for t in text.split(",") if t.strip()]


def float_list(text: str) -> list[float]:
    try:
        return [float(rational(t)) for t in text.split(",") if t.strip()]
    except argparse.ArgumentTypeError:
        raise
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated list of numbers: {text!r}")


def real(text: str) -> float:
    return float(rational(text))


# dest -> (type, default); None defaults stay unset unless a command needs them.
_OPTION_TYPES = {}


def _add(p, flag, dest, typ, default, help_, **kw):
    _OPTION_TYPES.setdefault(p.prog, {})[dest] = (typ, default)
    p.add_argument(flag, dest=dest, type=typ, default=None, help=f"{help_} (default: {default})", **kw)


def _run_options(p):
    _add(p, "--case", "case", str, "example1", f"manufactured case: {', '.join(CASES)}", choices=sorted(CASES))
    _add(p, "--scheme", "scheme", str, "cn", f"time stepping scheme: {', '.join(SCHEMES)}", choices=SCHEMES)
    _add(p, "--set", "set", str, "S1", f"parameter set for x: {', '.join(SETS)}", choices=SETS)
    _add(p, "--free", "free", real, 0.75, "free weight value of the x set")
    _add(p, "--set-y", "set_y", str, None, "parameter set for y (2D; defaults to --set)", choices=SETS)
    _add(p, "--free-y", "free_y", real, None, "free weight value for y (2D; defaults to --free)")
    _add(p, "--alpha", "alpha", real, 1.5, "fractional order in x, 1 < alpha <= 2")
    _add(p, "--beta", "beta", real, None, "fractional order in y (2D; defaults to --alpha)")
    _add(p, "--tau-rule", "tau_rule", str, "h", "time step rule: h, h2 or fixed", choices=harness.TAU_RULES)
    _add(p, "--tau", "tau", rational, None, "time step for --tau-rule fixed")
    _add(p, "--norm", "norm", str, "auto",
         "error norm: final_time_max, all_levels_max, or auto (all levels in 1D, final time in 2D)",
         choices=NORM_CHOICES)
    _add(p, "--format", "format", str, "csv", "table format: csv or markdown", choices=("csv", "markdown"))
    _add(p, "--output", "output", str, None, f"output file (relative paths go under ${OUTPUT_DIR_ENV})")


def build_parser() -> argparse.ArgumentParser:
    _OPTION_TYPES.clear()
    epilog = (f"cases: {', '.join(CASES)}; schemes: {', '.join(SCHEMES_1D)} (1D), "
              f"{', '.join(ADI_VARIANTS)} (2D ADI); parameter sets: {', '.join(SETS)}. "
              f"Exit status: 0 ok, 1 usage error, 2 numeric failure.")
    parser = _Parser(prog="wsgd", description="WSGD fractional advection-diffusion solvers and stability tools.",
                     epilog=epilog)
    parser.add_argument("--config", type=Path, help="flat key=value config file; flags override its values")
    sub = parser.add_subparsers(dest="command", metavar="{weights,stability,solve,converge,figures}",
                                parser_class=_Parser)
    sub.required = True

    p = sub.add_parser("weights", help="print Grünwald or fused WSGD weights", epilog=epilog)
    _add(p, "--alpha", "alpha", real, 1.5, "fractional order, 1 < alpha <= 2")
    _add(p, "--count", "count", int, 5, "number of weights")
    _add(p, "--set", "set", str, None, f"print fused weights for this set: {', '.join(SETS)}", choices=SETS)
    _add(p, "--free", "free", real, None, "free weight value of the set")
    p.add_argument("--error-constants", dest="error_constants", action="store_true", default=None,
                   help="also print the error constants of the three canonical triples")

    p = sub.add_parser("stability", help="scan parameter regions or tabulate max|Q|", epilog=epilog)
    _add(p, "--scan", "scan", str, None, f"scan a set for Q <= 0: {', '.join(SETS)}", choices=SETS)
    _add(p, "--lo", "lo", real, None, "lower end of the scanned interval")
    _add(p, "--hi", "hi", real, None, "upper end of the scanned interval")
    _add(p, "--step", "step", real, 0.005, "scan step")
    _add(p, "--max-q", "max_q", str, None, f"report max|Q| for a set: {', '.join(SETS)}", choices=SETS)
    _add(p, "--free", "free", real, None, "free weight value for --max-q")
    _add(p, "--theta-points", "theta_points", int, stability.DEFAULT_THETA_POINTS, "theta samples on [0, pi]")
    _add(p, "--alpha-points", "alpha_points", int, stability.DEFAULT_ALPHA_POINTS, "alpha samples on [1, 2]")

    p = sub.add_parser("solve", help="run one scheme on one grid and report the error", epilog=epilog)
    _run_options(p)
    _add(p, "--h", "h", rational, Fraction(1, 10), "grid step, e.g. 1/10")

    p = sub.add_parser("converge", help="convergence study over halving grid steps", epilog=epilog)
    _run_options(p)
    _add(p, "--h", "h", rational_list, "1/10,1/20,1/40", "comma-separated grid steps, e.g. 1/10,1/20,1/40")

    p = sub.add_parser("figures", help="emit Q(theta, alpha) curves as CSV", epilog=epilog)
    _add(p, "--set", "set", str, "S1", f"parameter set: {', '.join(SETS)}", choices=SETS)
    _add(p, "--free", "free", float_list, None, "comma-separated free values (default: the figure presets)")
    _add(p, "--alphas", "alphas", float_list, "1.1,1.3,1.5,1.7,1.9,2", "comma-separated orders")
    _add(p, "--theta-points", "theta_points", int, 201, "theta samples on [0, pi]")
    _add(p, "--output", "output", str, None, f"output file (relative paths go under ${OUTPUT_DIR_ENV})")
    return parser


def read_config(path: Path) -> dict[str, str]:
    out = {}
    try:
        lines = path.read_text().splitlines()
    except OSError as exc:
        raise UsageError(f"cannot read config file {path}: {exc.strerror}")
    for lineno, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected key=value, got {raw.strip()!r}")
        key, val = (s.strip() for s in line.split("=", 1))
        out[key.replace("-", "_")] = val
    return out


def resolve(args: argparse.Namespace, parser: argparse.ArgumentParser) -> argparse.Namespace:
    prog = f"wsgd {args.command}"
    types = _OPTION_TYPES[prog]
    config = read_config(args.config) if args.config else {}
    for key, raw in config.items():
        if key == "command":
            if raw != args.command:
                raise UsageError(f"config key 'command' says {raw!r} but the command line says {args.command!r}")
            continue
        if key == "error_constants" and args.command == "weights":
            if args.error_constants is None:
                args.error_constants = raw.lower() in ("1", "true", "yes", "on")
            continue
        if key not in types:
            raise UsageError(f"unknown config key {key!r} for command {args.command!r}")
        if getattr(args, key) is None:
            typ = types[key][0]
            try:
                setattr(args, key, typ(raw))
            except (ValueError, argparse.ArgumentTypeError):
                raise UsageError(f"bad value for config key {key!r}: {raw!r}")
    for key, (typ, default) in types.items():
        if getattr(args, key) is None and default is not None:
            setattr(args, key, typ(default) if isinstance(default, str) else default)
    _check_choices(args, parser)
    return args


def _check_choices(args, parser):
    sub = next(a for a in parser._actions if isinstance(a, argparse._SubParsersAction))
    for action in sub.choices[args.command]._actions:
        val = getattr(args, action.dest, None)
        if action.choices and val is not None and val not in action.choices:
            raise UsageError(f"invalid value {val!r} for {action.dest}; choose from {', '.join(map(str, action.choices))}")


def _output_path(name: str) -> Path:
    p = Path(name)
    base = os.environ.get(OUTPUT_DIR_ENV)
    if base and not p.is_absolute():
        p = Path(base) / p
    return p


def _emit(text: str, output: str | None, out):
    if output is None:
        out.write(text)
        return
    path = _output_path(output)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text)
    out.write(f"wrote {path}\n")


def _cmd_weights(args, out):
    if args.set is not None:
        if args.free is None:
            raise UsageError("--set needs --free")
        vals = wsgd_weights(params_from_set(args.set, args.free, args.alpha), args.count)
    else:
        vals = grunwald_weights(args.alpha, args.count)
    for v in vals:
        out.write(f"{v:.15g}\n")
    if args.error_constants:
        for which in ("first", "second", "third"):
            out.write(f"C_alpha[{which}] = {error_constant(args.alpha, which):.17g}\n")


def _cmd_stability(args, out):
    thetas = stability.theta_grid(args.theta_points)
    alphas = stability.alpha_grid(args.alpha_points)
    if args.scan is None and args.max_q is None:
        raise UsageError("stability needs --scan SET (with --lo/--hi) or --max-q SET (with --free)")
    if args.scan is not None:
        if args.lo is None or args.hi is None:
            raise UsageError("--scan needs --lo and --hi")
        regions = stability.scan_region(args.scan, args.lo, args.hi, args.step, thetas, alphas)
        out.write(f"set={args.scan} interval=[{args.lo:g}, {args.hi:g}] step={args.step:g}\n")
        if not regions:
            out.write("no non-positive region found\n")
        for lo, hi in regions:
            out.write(f"region [{lo:.6g}, {hi:.6g}]\n")
    if args.max_q is not None:
        if args.free is None:
            raise UsageError("--max-q needs --free")
        m = stability.max_abs_Q(args.max_q, args.free, thetas, alphas)
        out.write(f"set={args.max_q} free={args.free:g} max|Q|={m:.5g}\n")


def _run_params(args, case):
    px = params_from_set(args.set, args.free, args.alpha)
    py = None
    if case.dim == 2:
        set_y = args.set_y or args.set
        free_y = args.free if args.free_y is None else args.free_y
        py = params_from_set(set_y, free_y, case.problem.beta)
    return px, py


def _norm(args, case):
    if args.norm == "auto":
        return harness.ErrorNorm.ALL_LEVELS_MAX if case.dim == 1 else harness.ErrorNorm.FINAL_TIME_MAX
    return harness.ErrorNorm(args.norm)


def _case(args):
    beta = args.beta if args.beta is not None else args.alpha
    return get_case(args.case, args.alpha, beta)


def _cmd_solve(args, out):
    case = _case(args)
    px, py = _run_params(args, case)
    norm = _norm(args, case)
    tau, Nt = harness.steps_for(args.h, args.tau_rule, case.problem.T, args.tau)
    store = "all" if norm is harness.ErrorNorm.ALL_LEVELS_MAX else "final"
    traj = harness.run_case(case, args.scheme, px, args.h, Nt, py, store)
    if not np.all(np.isfinite(traj.final)):
        raise FloatingPointError("solution contains non-finite values")
    err = harness.max_error(traj, case.exact, norm)
    row = harness.ConvergenceRow(float(args.h), tau, err, None)
    _emit(harness.emit_table([row], args.format), args.output, out)


def _cmd_converge(args, out):
    case = _case(args)
    px, py = _run_params(args, case)
    rows = harness.convergence_study(case, args.scheme, px, args.h, args.tau_rule, _norm(args, case), py, args.tau)
    if not all(math.isfinite(r.error) for r in rows):
        raise FloatingPointError("non-finite error in convergence study")
    _emit(harness.emit_table(rows, args.format), args.output, out)


def _cmd_figures(args, out):
    thetas = stability.theta_grid(args.theta_points)
    items = stability.figure_params(args.set, args.alphas, args.free)
    rows = stability.emit_q_curves(items, thetas)
    _emit(stability.q_curves_csv(rows), args.output, out)


_COMMANDS = {
    "weights": _cmd_weights,
    "stability": _cmd_stability,
    "solve": _cmd_solve,
    "converge": _cmd_converge,
    "figures": _cmd_figures,
}


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        args = resolve(args, parser)
        _COMMANDS[args.command](args, out)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (SingularMatrixError, FloatingPointError, np.linalg.LinAlgError) as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (WsgdError, ValueError) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
