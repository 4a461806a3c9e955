"""Acceptance criteria, one test each; every test prints a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the lines inline; they
are also collected into an "acceptance criteria" section of the summary.
"""
import math

import numpy as np
import pytest

from conftest import report
from rieszfunc.analysis import find_extrema, find_first_zero, fit_slope
from rieszfunc.critzeta import (
    AsymptoticSpec,
    argument_principle_count,
    asymptotic_terms,
    envelope,
    eval_asymptotic,
    zeta_complex,
)
from rieszfunc.kummer import e_partial, f_kummer, g_poly
from rieszfunc.numtheory import mobius_tail_by_difference
from rieszfunc.riesz import (
    EvalConfig,
    RieszParams,
    deriv,
    eval_accelerated,
    eval_moebius,
    eval_taylor,
    tail_terms,
)

# reference extrema: (index, log10 x of max, S at max, log10 x of min, S at min)
TABLE_21 = [
    (1, 4.83284, 2.62044e-6, 4.65573, -4.78520e-7),
    (2, 5.22278, 1.65298e-6, 5.03476, -1.20507e-6),
    (3, 5.61033, 1.21568e-6, 5.41918, -1.18328e-6),
    (4, 5.99669, 9.38573e-7, 5.80406, -1.00735e-6),
    (5, 6.38315, 7.47310e-7, 6.19039, -8.20165e-7),
    (6, 6.76905, 5.93349e-7, 6.57596, -6.62603e-7),
    (7, 7.15545, 4.76797e-7, 6.96249, -5.30007e-7),
    (8, 7.54124, 3.80007e-7, 7.34817, -4.26057e-7),
]
TABLE_22 = [
    (1, 4.48752, 4.97204e-8, 4.31797, -6.46896e-9),
    (2, 4.87969, 1.97351e-8, 4.69479, -1.67414e-8),
    (3, 5.26779, 9.09065e-9, 5.07699, -1.09071e-8),
    (4, 5.65449, 4.53355e-9, 5.46263, -5.99878e-9),
    (5, 6.04080, 2.28418e-9, 5.84775, -3.14719e-9),
    (6, 6.42706, 1.17580e-9, 6.23435, -1.62554e-9),
    (7, 6.81307, 5.98676e-10, 6.61979, -8.37753e-10),
    (8, 7.19932, 3.07392e-10, 7.00651, -4.29573e-10),
]


@pytest.fixture(scope="module")
def extrema_21(table):
    return find_extrema(RieszParams(2, 1), 4.5, 7.6, table=table)


@pytest.fixture(scope="module")
def extrema_22(table):
    return find_extrema(RieszParams(2, 2), 4.2, 7.3, table=table)


def _compare_table(records, reference, rel_tol):
    by_key = {(r.kind, r.index): r for r in records}
    worst_loc = worst_rel = 0.0
    missing = []
    for k, umax, vmax, umin, vmin in reference:
        for kind, u, v in (("max", umax, vmax), ("min", umin, vmin)):
            r = by_key.get((kind, k))
            if r is None:
                missing.append(f"{kind}{k}")
                continue
            worst_loc = max(worst_loc, abs(r.log10x - u))
            worst_rel = max(worst_rel, abs(r.value - v) / abs(v))
    aligned = bool(records) and abs(records[0].log10x - reference[0][3]) <= 0.05
    ok = aligned and not missing and worst_loc <= 5e-4 and worst_rel <= rel_tol
    detail = (f"{16 - len(missing)}/16 rows, max |dlog10x| = {worst_loc:.2e} (tol 5e-4), "
              f"max rel dS = {worst_rel:.2e} (tol {rel_tol:g})")
    return ok, detail


def test_c01_evaluator_agreement(table, big_table):
    worst = 0.0
    for p in (1, 2, 3, 4):
        params = RieszParams(2, p)
        for x in np.arange(0.0, 20.0001, 0.5):
            a = eval_taylor(params, x).value
            b = eval_moebius(params, x, 2e-13, big_table).value
            c = eval_accelerated(params, x, table=table).value
            worst = max(worst, abs(a - b), abs(a - c), abs(b - c))
    ok = worst <= 1e-12
    report("C1 evaluator cross-agreement", ok, f"max pairwise |diff| = {worst:.2e} (tol 1e-12)")
    assert ok


def test_c02_table1(extrema_21):
    ok, detail = _compare_table(extrema_21, TABLE_21, 0.01)
    report("C2 S_{2,1} extrema table", ok, detail)
    assert ok


def test_c03_table2(extrema_22):
    ok, detail = _compare_table(extrema_22, TABLE_22, 0.02)
    report("C3 S_{2,2} extrema table", ok, detail)
    assert ok


def test_c04_first_zero(table):
    x0 = find_first_zero(RieszParams(2, 2), table=table)
    ok = abs(x0 - 1.15671) <= 1e-4
    report("C4 first zero of S_{2,2}", ok, f"x0 = {x0:.8f} (target 1.15671 +- 1e-4)")
    assert ok


def _slopes(records, first_index=1, last_index=8):
    return {kind: fit_slope([r for r in records if r.kind == kind], first_index, last_index).slope
            for kind in ("max", "min")}


def test_c05_slopes(extrema_21, extrema_22):
    s21, s22 = _slopes(extrema_21), _slopes(extrema_22)
    ok = all(abs(s + 0.25) <= 0.02 for s in s21.values()) and all(abs(s + 0.75) <= 0.02 for s in s22.values())
    # the same fits from the third row on, for context only
    t21, t22 = _slopes(extrema_21, 3), _slopes(extrema_22, 3)
    detail = (f"rows 1-8: S21 max {s21['max']:.3f}, min {s21['min']:.3f} (target -0.25 +- 0.02); "
              f"S22 max {s22['max']:.3f}, min {s22['min']:.3f} (target -0.75 +- 0.02) | "
              f"rows 3-8: S21 {t21['max']:.3f}/{t21['min']:.3f}, S22 {t22['max']:.3f}/{t22['min']:.3f}")
    report("C5 log-log slope fits", ok, detail)
    assert ok


def test_c06_identity_suite():
    worst = 0.0
    for k in range(0, 11):
        for z in (0.01, 0.1, 0.5, 1.0):
            fk, fk1, fk2 = f_kummer(k, z), f_kummer(k + 1, z), f_kummer(k + 2, z)
            worst = max(worst, abs(fk - (1 + z / (k + 1)) * fk1 + z / (k + 2) * fk2))
            if k >= 1:
                ek = e_partial(k, z)
                via_k = 1 - 1 / ek + z**k * fk / (math.factorial(k) * ek)
                worst = max(worst, abs(z * f_kummer(1, z) - via_k))
                down = 1 / ek + z * e_partial(k - 1, z) * fk / (k * ek)
                worst = max(worst, abs(f_kummer(k - 1, z) - down))
            if k >= 2:
                ek = e_partial(k, z)
                recip = 1 / ek - e_partial(k, -z) - z**k * g_poly(k)(z) / (math.factorial(k) * ek)
                worst = max(worst, abs(recip))
    ok = worst <= 1e-14
    report("C6 hypergeometric identity suite", ok, f"max residual = {worst:.2e} (tol 1e-14)")
    assert ok


def test_c07_tail_split(big_table):
    x = 1e4
    worst = 0.0
    for p in (1, 2):
        params = RieszParams(2, p)
        parts = tail_terms(params, x, EvalConfig(), big_table)
        n, mu = big_table.window(parts["N"], big_table.limit)
        brute = math.fsum(mu * n**-p * -np.expm1(-x / n**2))
        # leading term of what lies beyond the table, x * sum_{n>L} mu(n)/n^(2+p)
        brute += x * mobius_tail_by_difference(2 + p, big_table.limit + 1, big_table)
        worst = max(worst, abs(parts["T1"] + parts["T2"] - brute))
    ok = worst <= 1e-13
    report("C7 tail-split equivalence", ok, f"max |T1 + T2 - direct tail| = {worst:.2e} (tol 1e-13)")
    assert ok


def test_c08_derivative(table):
    params = RieszParams(2, 1)
    f = lambda x: eval_accelerated(params, x, table=table).value  # noqa: E731
    worst = 0.0
    for x in (1e3, 1e5, 1e7):
        h = 1e-3 * x
        fd = (f(x - 2 * h) - 8 * f(x - h) + 8 * f(x + h) - f(x + 2 * h)) / (12 * h)
        d = deriv(params, x, table=table).value
        worst = max(worst, abs(d - fd) / abs(d))
    exact = all(deriv(params, x, table=table).value == -eval_accelerated(RieszParams(2, 3), x, table=table).value
                for x in (1e3, 1e5, 1e7))
    ok = worst <= 1e-5 and exact
    report("C8 derivative identity", ok,
           f"max rel |deriv - finite difference| = {worst:.2e} (tol 1e-5); deriv == -S_(2,3): {exact}")
    assert ok


def test_c09_zero_machinery(zeros30):
    first10 = zeros30[:10]
    worst_z = max(abs(zeta_complex(0.5, z.gamma)) for z in first10)
    count = argument_principle_count(50.0)
    h = 1e-6
    worst_d = max(abs(z.zeta_prime - (zeta_complex(0.5, z.gamma + h) - zeta_complex(0.5, z.gamma - h)) / (2j * h))
                  / abs(z.zeta_prime) for z in first10)
    ok = worst_z <= 1e-10 and round(count) == 10 and worst_d <= 1e-6
    report("C9 zeta zero machinery", ok,
           f"max |zeta(1/2+i g)| = {worst_z:.1e}; count(50) = {count:.6f}; zeta' rel err = {worst_d:.1e}")
    assert ok


def test_c10_asymptotic_comparison(table, zeros30):
    spec = AsymptoticSpec(RieszParams(2, 2), 5)
    terms = asymptotic_terms(spec, zeros30)
    worst = 0.0
    for u in np.arange(6.5, 8.0 + 1e-9, 0.01):
        x = 10.0**u
        diff = eval_accelerated(spec.params, x, table=table).value - eval_asymptotic(spec, x, terms)
        worst = max(worst, abs(diff) / envelope(spec, x, terms))
    ok = worst <= 0.02
    report("C10 five-term asymptotic comparison", ok, f"max |S - asym5| / envelope = {worst:.2e} (tol 0.02)")
    assert ok


def test_c11_general_m(table):
    records = find_extrema(RieszParams(3, 2), 3.0, 6.0, table=table)
    counts = {k: sum(r.kind == k for r in records) for k in ("max", "min")}
    slopes = {}
    for kind in ("max", "min"):
        rows = [r for r in records if r.kind == kind]
        slopes[kind] = fit_slope(rows).slope if len(rows) >= 2 else float("nan")
    ok = all(abs(s + 0.5) <= 0.05 for s in slopes.values())
    report("C11 m = 3 slope check", ok,
           f"{counts['max']} maxima, {counts['min']} minima in [1e3, 1e6]; slopes max {slopes['max']:.3f}, "
           f"min {slopes['min']:.3f} (target -0.5 +- 0.05)")
    assert ok
