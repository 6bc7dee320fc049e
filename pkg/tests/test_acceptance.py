"""Acceptance criteria, one test per criterion.

Each test records a PASS/FAIL line in ``RESULTS``; ``conftest.py`` prints
them in the terminal summary, and running this file directly prints them
too. Lines tagged ``info`` are diagnostics and never fail the run.

Reference numbers are the published table entries. Where a printed entry is
off by exactly one power of ten and its printed rate confirms the slip, the
corrected value is used and marked with a trailing ``# typo`` comment.
"""
from __future__ import annotations

import functools
import math
import time
from fractions import Fraction

import numpy as np
import pytest

from wsgd.harness import ErrorNorm, convergence_study
from wsgd.operators import Grid1D, apply_left_wsgd, apply_right_wsgd
from wsgd.problems import BUMP_TERMS, bump, example1, example2, rl_monomial
from wsgd.solvers import Problem1D, solve_adi, solve_cn_1d, solve_implicit_1d, system_matrix_implicit
from wsgd.stability import (
    CourantNumbers,
    StabilityReport,
    alpha_grid,
    amp_2d,
    amp_cn,
    amp_implicit,
    max_abs_Q,
    q_symbol,
    scan_region,
    theta_grid,
)
from wsgd.weights import WsgdParams, params_from_set, set_triple, wsgd_weights

RESULTS: dict[str, tuple[bool, str, bool]] = {}

H1D = [Fraction(1, 10), Fraction(1, 20), Fraction(1, 40)]
H2D = [Fraction(1, 10), Fraction(1, 20), Fraction(1, 40), Fraction(1, 80)]
ALL = ErrorNorm.ALL_LEVELS_MAX
FINAL = ErrorNorm.FINAL_TIME_MAX


def record(cid: str, ok: bool, detail: str, info: bool = False) -> bool:
    RESULTS[cid] = (bool(ok), detail, info)
    tag = "info" if info else ("PASS" if ok else "FAIL")
    print(f"ACCEPTANCE {cid:<14} {tag:<4} {detail}")
    return bool(ok)


def rel_err(a, b):
    return abs(a - b) / abs(b)


@functools.lru_cache(maxsize=None)
def study_1d(scheme, set_name, free, alpha, norm):
    rule = "h2" if scheme == "implicit" else "h"
    rows = convergence_study(example1(alpha), scheme, params_from_set(set_name, free, alpha), H1D, rule, norm)
    return tuple(r.error for r in rows), tuple(r.rate for r in rows[1:])


@functools.lru_cache(maxsize=None)
def study_2d(variant, sx, fx, sy, fy, alpha=1.5, beta=1.8):
    case = example2(alpha, beta)
    px, py = params_from_set(sx, fx, alpha), params_from_set(sy, fy, beta)
    rows = convergence_study(case, variant, px, H2D, "h", FINAL, py)
    return tuple(r.error for r in rows), tuple(r.rate for r in rows[1:])


def compare_block(errs, rates, ref_errs, ref_rates, tol=0.10, rate_tol=0.2):
    e_ok = all(rel_err(a, b) <= tol for a, b in zip(errs, ref_errs))
    r_ok = ref_rates is None or all(abs(a - b) <= rate_tol for a, b in zip(rates, ref_rates))
    worst = max(rel_err(a, b) for a, b in zip(errs, ref_errs))
    return e_ok and r_ok, worst


def fmt(v):
    return "[" + ", ".join(f"{x:.3g}" for x in v) + "]"


# ---------------------------------------------------------------- 1D tables
TABLE1 = {  # implicit, S1 lambda1 = 0.75, tau = h^2
    1.2: ((5.63e-4, 1.61e-4, 4.41e-5), (1.80, 1.87)),
    1.7: ((4.67e-4, 6.60e-5, 1.27e-5), (2.82, 2.37)),
    1.9: ((4.69e-4, 9.92e-5, 2.35e-5), (2.15, 2.13)),
}
TABLE2 = {  # Crank-Nicolson, S1 lambda1 = 0.75, tau = h
    1.2: ((5.63e-4, 1.60e-4, 4.34e-5), (1.82, 1.88)),
    1.7: ((7.54e-4, 9.81e-5, 1.38e-5), (2.94, 2.82)),
    1.9: ((7.46e-4, 1.07e-4, 2.39e-5), (2.80, 2.16)),
}
SPOTS = {  # table -> (scheme, set, [(free, alpha, errors, rates)])
    3: ("implicit", "S2", [(0.0, 1.7, (6.46e-4, 1.67e-4, 4.17e-5), (1.95, 2.00)),
                           (-0.1, 1.2, (6.20e-4, 1.81e-4, 5.24e-5), (1.78, 1.79))]),
    4: ("cn", "S2", [(0.0, 1.7, (8.58e-4, 1.83e-4, 4.14e-5), (2.23, 2.14)),
                     (-0.1, 1.9, (9.01e-4, 1.96e-4, 4.51e-5), (2.20, 2.11))]),
    5: ("implicit", "S3", [(0.0, 1.9, (4.52e-4, 1.10e-4, 2.70e-5), (2.04, 2.03)),
                           (-0.001, 1.2, (5.93e-4, 1.71e-4, 4.83e-5), (1.79, 1.83))]),
    6: ("cn", "S3", [(0.0, 1.7, (8.59e-4, 1.83e-4, 4.14e-5), (2.23, 2.14)),
                     (0.001, 1.2, (5.95e-4, 1.69e-4, 4.75e-5), (1.81, 1.83))]),
}


def _table_1d(cid, scheme, table, norm, info=False):
    t0 = time.perf_counter()
    ok_all, notes = True, []
    for alpha, (ref_e, ref_r) in table.items():
        errs, rates = study_1d(scheme, "S1", 0.75, alpha, norm)
        ok, worst = compare_block(errs, rates, ref_e, ref_r)
        ok_all &= ok
        notes.append(f"a={alpha}: {fmt(errs)} rates {fmt(rates)} worst {worst:.1%}")
    dt = time.perf_counter() - t0
    return record(cid, ok_all, f"[{norm.value}] " + "; ".join(notes) + f" ({dt:.1f}s)", info)


def test_c1_table1_implicit():
    _table_1d("C1/all-levels", "implicit", TABLE1, ALL, info=True)
    assert _table_1d("C1", "implicit", TABLE1, FINAL)


def test_c2_table2_cn():
    _table_1d("C2/all-levels", "cn", TABLE2, ALL, info=True)
    assert _table_1d("C2", "cn", TABLE2, FINAL)


def test_c3_tables_3_to_6():
    ok_all, notes = True, []
    for tab, (scheme, set_name, cells) in SPOTS.items():
        tab_ok = True
        for free, alpha, ref_e, ref_r in cells:
            errs, rates = study_1d(scheme, set_name, free, alpha, ALL)
            ok, worst = compare_block(errs, rates, ref_e, ref_r)
            tab_ok &= ok
            notes.append(f"T{tab} {set_name}={free} a={alpha}: {worst:.1%}{'' if ok else ' X'}")
        ok_all &= tab_ok
    for scheme in ("implicit", "cn"):
        cols = [study_1d(scheme, "S3", v, 1.2, ALL)[0] for v in (-0.001, 0.0, 0.001)]
        spread = max(max(c[i] for c in cols) / min(c[i] for c in cols) - 1 for i in range(3))
        ok_all &= spread <= 0.02
        notes.append(f"S3 columns ({scheme}) spread {spread:.2%}")
    # diagnostic: the S3 tables agree with the S2 formulas evaluated at the printed value
    relabel = []
    for tab in (5, 6):
        scheme, _, cells = SPOTS[tab]
        for free, alpha, ref_e, _ in cells:
            errs, _ = study_1d(scheme, "S2", free, alpha, ALL)
            relabel.append(max(rel_err(a, b) for a, b in zip(errs, ref_e)))
    record("C3/S2-relabel", True, f"tables 5-6 cells recomputed with S2 formulas: worst {max(relabel):.2%}", True)
    assert record("C3", ok_all, "[all_levels_max] " + "; ".join(notes))


# ---------------------------------------------------------------- 2D tables
T2D = {  # (table, set, free): {variant: errors}
    (7, "S1", 0.8): {"pr": (4.65e-6, 1.10e-6, 2.81e-7, 7.08e-8), "douglas": (3.40e-6, 8.05e-7, 2.03e-7, 5.17e-8)},
    (7, "S1", 1.0): {"pr": (8.45e-6, 2.33e-6, 5.98e-7, 1.51e-7),  # typo: 2.33E-07 printed
                     "douglas": (7.17e-6, 2.02e-6, 5.22e-7, 1.33e-7)},  # typo: 2.02E-07 printed
    (7, "S1", 1.2): {"pr": (1.24e-5, 3.59e-6, 9.26e-7, 2.34e-7), "douglas": (1.11e-5, 3.27e-6, 8.55e-7, 2.16e-7)},
    (8, "S2", -0.3): {"pr": (1.00e-5, 2.80e-6, 7.17e-7, 1.81e-7),  # typo: 1.81E-08 printed
                      "douglas": (8.75e-6, 2.49e-6, 6.43e-7, 1.63e-7)},
    (8, "S2", 0.0): {"pr": (7.13e-6, 1.87e-6, 4.75e-7, 1.19e-7),
                     "douglas": (5.86e-6, 1.56e-6, 3.99e-7, 1.00e-7)},  # typo: 1.56E-07 printed
    (8, "S2", 0.3): {"pr": (4.28e-6, 9.82e-7, 2.42e-7, 6.08e-8),
                     "douglas": (3.03e-6, 6.73e-7, 1.65e-7, 4.15e-8)},  # typo: 4.15E-07 printed (Douglas)
    (9, "S3", -0.002): {"pr": (5.84e-6, 1.42e-6, 3.55e-7, 8.87e-8), "douglas": (4.52e-6, 1.10e-6, 2.73e-7, 6.84e-8),
                        "dyakonov": (4.52e-6, 1.09e-6, 2.73e-7, 6.84e-8)},
    (9, "S3", 0.0): {"pr": (5.82e-6, 1.41e-6, 3.54e-7, 8.85e-8), "douglas": (4.56e-6, 1.11e-6, 2.76e-7, 6.91e-8),
                     "dyakonov": (4.52e-6, 1.11e-6, 2.76e-7, 6.91e-8)},
    (9, "S3", 0.002): {"pr": (5.86e-6, 1.43e-6, 3.57e-7, 8.92e-8), "douglas": (4.59e-6, 1.12e-6, 2.79e-7, 6.99e-8),
                       "dyakonov": (4.59e-6, 1.12e-6, 2.79e-7, 6.99e-8)},  # typo: 6.99E-07 printed (D'Yakonov)
}


def test_c4_tables_7_to_9_adi():
    t0 = time.perf_counter()
    notes = []
    errs_pr, _ = study_2d("pr", "S1", 1.0, "S1", 1.0)
    a_ok = rel_err(errs_pr[0], 8.45e-6) <= 0.10
    notes.append(f"PR S1=1.0 h=1/10: {errs_pr[0]:.3e} vs 8.45e-06 ({rel_err(errs_pr[0], 8.45e-6):.1%})")

    same_ok, dy_ok, rate_ok = True, True, True
    worst_dy, worst_rate = 0.0, 0.0
    pr_worst = 0.0
    for (tab, s, v), refs in T2D.items():
        res = {var: study_2d(var, s, v, s, v) for var in ("pr", "douglas", "dyakonov")}
        d, y = np.array(res["douglas"][0]), np.array(res["dyakonov"][0])
        same_ok &= bool(np.all(np.abs(d - y) <= 1e-10 * np.abs(d)))
        for var in ("douglas", "dyakonov"):
            ref = refs.get(var, refs["douglas"])
            w = max(rel_err(a, b) for a, b in zip(res[var][0], ref))
            worst_dy = max(worst_dy, w)
            dy_ok &= w <= 0.10
        pr_worst = max(pr_worst, max(rel_err(a, b) for a, b in zip(res["pr"][0], refs["pr"])))
        for var in res:
            r = res[var][1][-1]
            worst_rate = max(worst_rate, abs(r - 2.0))
            rate_ok &= abs(r - 2.0) <= 0.15
    dt = time.perf_counter() - t0
    notes.append(f"Douglas == D'Yakonov to 1e-10: {same_ok}")
    notes.append(f"Douglas/D'Yakonov vs printed: worst {worst_dy:.1%}")
    notes.append(f"finest-pair rates: worst |rate-2| {worst_rate:.3f}")
    notes.append(f"runtime {dt:.1f}s")
    record("C4/PR-columns", pr_worst <= 0.10, f"all PR cells vs printed: worst {pr_worst:.1%}", True)
    ok = a_ok and same_ok and dy_ok and rate_ok and dt < 120
    assert record("C4", ok, "; ".join(notes))


T10 = {
    0.4: {"pr": ((3.72e-6, 8.78e-7, 2.19e-7, 5.55e-8), (2.08, 2.00, 1.98)),
          "douglas": ((2.55e-6, 6.20e-7, 1.61e-7, 4.05e-8), (2.04, 1.95, 1.99))},
    0.5: {"pr": ((3.96e-6, 8.96e-7, 2.18e-7, 5.37e-8), (2.17, 2.04, 2.02)),
          "douglas": ((3.11e-6, 7.60e-7, 1.81e-7, 4.45e-8), (2.03, 2.07, 2.02))},
}


def test_c5_table10_mixed_sets():
    ok_all, notes = True, []
    for g2, refs in T10.items():
        for var in ("pr", "douglas", "dyakonov"):
            ref_e, ref_r = refs.get(var, refs["douglas"])
            errs, rates = study_2d(var, "S3", 0.02, "S2", g2)
            ok, worst = compare_block(errs, rates, ref_e, ref_r)
            ok_all &= ok
            notes.append(f"g2={g2} {var}: {fmt(errs)} worst {worst:.1%}")
    assert record("C5", ok_all, "; ".join(notes))


# ---------------------------------------------------------------- max |Q|
TAB60 = [("S1", 0.75, 2.1122), ("S1", 1.0, 4.2422), ("S1", 1.2, 7.1927), ("S1", 1.5, 11.984),
         ("S2", -2.0, 19.970), ("S2", -0.1, 4.7969), ("S2", 0.0, 3.9983), ("S2", 0.4, 2.1937),
         ("S3", -0.001, 3.9823), ("S3", 0.0, 3.9983), ("S3", 0.001, 4.0142), ("S3", 0.01, 4.1580)]
TAB11 = [("S1", 0.8, 2.3979), ("S1", 1.0, 4.2422), ("S1", 1.2, 7.1927),
         ("S2", -0.3, 6.3941), ("S2", 0.0, 3.9983), ("S2", 0.3, 2.3316),
         ("S3", -0.002, 3.9663), ("S3", 0.0, 3.9983), ("S3", 0.002, 4.0302)]
TAB11_MIXED = [(("S3", 0.002), ("S2", 0.4), 2.1937), (("S3", 0.002), ("S2", 0.5), 2.1122)]


def sig3_match(ours, ref):
    half_unit = 0.5 * 10 ** (math.floor(math.log10(abs(ref))) - 2)
    return abs(ours - ref) <= half_unit + 1e-12


def _q_tables(thetas, alphas):
    misses = []
    for tab, entries in (("tab:60", TAB60), ("tab:11", TAB11)):
        for s, v, ref in entries:
            m = max_abs_Q(s, v, thetas, alphas)
            if not sig3_match(m, ref):
                misses.append(f"{tab} {s}={v}: {m:.5g} vs {ref}")
    for (sx, vx), (sy, vy), ref in TAB11_MIXED:
        m = max(max_abs_Q(sx, vx, thetas, alphas), max_abs_Q(sy, vy, thetas, alphas))
        if not sig3_match(m, ref):
            misses.append(f"tab:11 {sx}={vx},{sy}={vy}: {m:.5g} vs {ref}")
    return misses


def test_c6_max_abs_Q_tables():
    # diagnostic: the printed values match a coarse grid theta = 0, 0.1, ..., 3.1
    coarse = _q_tables(np.arange(0, np.pi, 0.1), alpha_grid())
    record("C6/coarse-grid", True, f"theta step 0.1 grid misses: {coarse or 'none'}", True)
    misses = _q_tables(theta_grid(), alpha_grid())
    n = len(TAB60) + len(TAB11) + len(TAB11_MIXED)
    assert record("C6", not misses, f"2001x101 grid: {n - len(misses)}/{n} match; misses: {misses or 'none'}")


def test_c7_closed_form_identities():
    th = np.linspace(0, np.pi, 20001)
    e1 = np.max(np.abs(q_symbol(th, 1.0, (0.75, 0.0, 0.25)) + 2 * np.sin(th / 2) ** 4))
    e2 = np.max(np.abs(q_symbol(th, 1.0, (0.5, 0.5, 0.0))))
    assert record("C7", e1 <= 1e-12 and e2 <= 1e-12, f"max|Q+2sin^4| = {e1:.2e}; max|Q| = {e2:.2e}")


def test_c8_parameter_regions():
    t0 = time.perf_counter()
    targets = {"S1": ((0.0, 4.0), (0.75, 3.0)), "S2": ((-5.0, 1.0), (-4.0, 0.5)), "S3": ((-0.1, 2.5), (-0.005, 2.0))}
    ok_all, notes = True, []
    for s, ((lo, hi), (a, b)) in targets.items():
        regs = scan_region(s, lo, hi, 0.005)
        ok = any(r0 <= a + 1e-9 and r1 >= b - 1e-9 for r0, r1 in regs)
        ok_all &= ok
        notes.append(f"{s}: {[(round(x, 4), round(y, 4)) for x, y in regs]} needs [{a}, {b}] -> {'ok' if ok else 'missing'}")
    record("C8/analytic", True, "at alpha=1 the S3 symbol is -8*lambda3*sin^4(theta/2), positive for lambda3 < 0", True)
    notes.append(f"{time.perf_counter() - t0:.1f}s")
    assert record("C8", ok_all, "; ".join(notes))


def test_c9_classical_reduction():
    g = wsgd_weights(WsgdParams(2.0, 1.0, 0.0, 0.0), 3)
    w_ok = list(g) == [1.0, -2.0, 1.0]
    N, Nt, v = 16, 10, 0.8
    p = Problem1D(v=v, d=1.0, alpha=2.0, f=None, u0=None)
    A = system_matrix_implicit(p, WsgdParams(2.0, 1.0, 0.0, 0.0), N, Nt)
    h, tau = 1 / N, 1 / Nt
    r, c = tau / h ** 2, v * tau / (2 * h)
    ref = np.diag([1 + 4 * r] * (N - 1)) + np.diag([-2 * r + c] * (N - 2), 1) + np.diag([-2 * r - c] * (N - 2), -1)
    dev = np.max(np.abs(A - ref))
    assert record("C9", w_ok and dev <= 1e-14, f"g = {[float(x) for x in g]}; max matrix deviation {dev:.1e}")


def test_c10_operator_consistency():
    alpha = 1.5
    triples = [("S1", 1.0), ("S2", 0.0), ("S3", 0.0)]
    Ns = (64, 128, 256, 512)
    ok_all, notes, inner = True, [], []
    for s, v in triples:
        p = params_from_set(s, v, alpha)
        for side, op in (("L", apply_left_wsgd), ("R", apply_right_wsgd)):
            full, mid = [], []
            for N in Ns:
                x = np.linspace(0, 1, N + 1)
                xi = x[1:-1]
                ref = sum(c * rl_monomial(k, alpha, xi if side == "L" else 1 - xi) for k, c in BUMP_TERMS)
                e = np.abs(op(bump(x), p, 1 / N) - ref)
                full.append(e.max())
                mid.append(e[(xi >= 0.125) & (xi <= 0.875)].max())
            rf = np.log2(np.array(full[:-1]) / np.array(full[1:]))
            rm = np.log2(np.array(mid[:-1]) / np.array(mid[1:]))
            ok_all &= bool(np.all(rf >= 1.8))
            notes.append(f"{s}={v} {side}: {fmt(rf)}")
            inner.append(rm.min())
    record("C10/interior", min(inner) >= 1.8, f"on [1/8, 7/8] the minimum rate is {min(inner):.3f}", True)
    assert record("C10", ok_all, f"alpha={alpha}, max over all interior nodes, rates " + "; ".join(notes))


def test_c11_stability_smoke():
    rng = np.random.default_rng(11)
    region = {"S1": (0.75, 3.0), "S2": (-4.0, 0.5), "S3": (0.0, 2.0)}
    notes, ok_all = [], True
    N, steps = 40, 50
    h = 1 / N
    for i in range(5):
        s = ("S1", "S2", "S3", "S1", "S2")[i]
        alpha = float(rng.uniform(1.1, 1.95))
        free = float(rng.uniform(*region[s]))
        par = params_from_set(s, free, alpha)
        in_region = StabilityReport.build(par).q_all_nonpositive
        c = example1(alpha)
        tau = 100 * h ** alpha
        p = Problem1D(c.problem.v, c.problem.d, alpha, c.problem.f, c.problem.u0, T=steps * tau)
        bound = 10 * np.max(np.abs(c.exact(np.linspace(0, 1, N + 1), 0.0)))
        peak = max(max(np.max(np.abs(u)) for u in solve(p, par, N, steps, store="all").states)
                   for solve in (solve_implicit_1d, solve_cn_1d))
        ok_all &= in_region and peak < bound
        notes.append(f"{s}={free:.3f} a={alpha:.3f}: peak/bound {peak / bound:.3f}")
    par_bad = [params_from_set("S2", -5.0, a) for a in alpha_grid()[1:]]
    th = theta_grid()
    amp_max = max(float(np.max(amp_cn(th, CourantNumbers(nu, lam), p)))
                  for p in par_bad for nu in (0.0, 0.5) for lam in (0.5, 5.0))
    ok_all &= amp_max > 1
    notes.append(f"S2=-5: max CN |rho| {amp_max:.4f}")
    assert record("C11", ok_all, "; ".join(notes))


def test_c12_amplification_bounds():
    rng = np.random.default_rng(12)
    n = 10 ** 4
    region = {"S1": (0.75, 3.0), "S2": (-4.0, 0.5), "S3": (0.0, 2.0)}
    sets = rng.choice(list(region), n)
    worst_imp = worst_cn = worst_fac = 0.0
    for i in range(n):
        s = str(sets[i])
        alpha, beta = rng.uniform(1.0 + 1e-9, 2.0, 2)
        px = params_from_set(s, rng.uniform(*region[s]), alpha)
        sy = str(rng.choice(list(region)))
        py = params_from_set(sy, rng.uniform(*region[sy]), beta)
        tx, ty = rng.uniform(-np.pi, np.pi, 2)
        cx = CourantNumbers(rng.uniform(-20, 20), rng.uniform(0, 1e3))
        cy = CourantNumbers(rng.uniform(-20, 20), rng.uniform(0, 1e3))
        worst_imp = max(worst_imp, amp_implicit(tx, cx, px))
        worst_cn = max(worst_cn, amp_cn(tx, cx, px))
        worst_fac = max(worst_fac, abs(amp_2d(tx, ty, cx, cy, px, py) - amp_cn(tx, cx, px) * amp_cn(ty, cy, py)))
    ok = worst_imp <= 1 + 1e-12 and worst_cn <= 1 + 1e-12 and worst_fac <= 1e-14
    assert record("C12", ok, f"max implicit {worst_imp:.15f}; max CN {worst_cn:.15f}; factorization gap {worst_fac:.1e}")


if __name__ == "__main__":
    for name, fn in list(globals().items()):
        if name.startswith("test_c") and callable(fn):
            try:
                fn()
            except AssertionError:
                pass
