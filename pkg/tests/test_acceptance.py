"""Acceptance criteria 1-10.

Each criterion is a function returning (ok, detail).  Under pytest every
criterion prints one PASS/FAIL line as it runs and the summary table is
repeated at the end of the session (see conftest.py).  Run this file
directly to get the ten lines without pytest.
"""

import math
import sys
import time

import numpy as np
import pytest

from annulus_eigen import biharmonic as bh
from annulus_eigen import eigensolve as es
from annulus_eigen import oracle
from annulus_eigen import secular as sec
from annulus_eigen import verify
from annulus_eigen.geometry import (
    AnnulusGeometry,
    threshold_biharmonic,
    threshold_log_bound1,
    threshold_problem1_unique,
    threshold_radial_switch,
)
from annulus_eigen.modes import biquad_d

RESULTS = {}
N_ORACLE = 2000


def _sandwich(m, n, R):
    X2 = (math.pi / R) ** 2
    lo = ((m - n) ** 2 + X2) * ((m + n) ** 2 + X2)
    hi = ((m - n) ** 2 + 4 * X2) * ((m + n) ** 2 + 4 * X2)
    return lo, hi


# grids shared with criterion 7

def grid_c2():
    return [(m, n, R) for m in (1, 2, 3) for n in range(5) for R in (10.0, 30.0, 100.0)
            if R >= threshold_log_bound1(m, n)]


def grid_c3():
    out = []
    for m in (1, 2, 3):
        t = threshold_problem1_unique(m)
        out.append((m, [t, t + 0.5, 2 * t, 5 * t, 20 * t]))
    return out


def sweep_c4(step=0.01, lo=0.3, hi=10.0):
    return np.round(np.arange(lo, hi + step / 2, step), 10)


C5_POINTS = [
    ("lambda0 d=5", "I", 5, 0, 25 / 16),
    ("mu-min d=5", "II", 5, None, 25 / 4),
    ("mu d=3 mode 1", "II", 3, 1, 25 / 36),
    ("mu d=4 mode 1", "II", 4, 1, 3.0),
]


def _c5_value(problem, d, n, R=200.0):
    if problem == "I":
        return es.lambda_n_dimd(d, n, R).value
    if n is None:
        return es.mu_min_dimd(d, R).best.value
    return es.mu_n_dimd(d, n, R).value


def criterion_1():
    t = time.perf_counter()
    worst, bad = 0.0, []
    for R in (5.0, 10.0, 50.0):
        exact = 4 + 4 * math.pi**2 / R**2
        v = es.mu_n_dimd(4, 0, R).value
        # independent route: first zero of the d = 4 secular function at 2 pi
        A0, B0, K = biquad_d(4, 0)
        via_zero = sec.mu_of_s(sec.first_zero_d4_n0() / R, A0, B0, K)
        orc = oracle.oracle_eigenvalue("II", 4, 0, R, N=N_ORACLE, d=4)
        gap = abs(orc - exact) / exact
        worst = max(worst, gap)
        if abs(v - exact) > 1e-12 * exact or abs(via_zero - exact) > 1e-12 * exact or gap > 1e-3:
            bad.append(R)
    dt = time.perf_counter() - t
    ok = not bad and dt < 5.0
    return ok, f"max oracle gap {worst:.2e}, runtime {dt:.2f} s" + (f", failing R {bad}" if bad else "")


def criterion_2():
    fails, pts = [], grid_c2()
    for m, n, R in pts:
        v = es.lambda_mn(m, n, R).value
        lo, hi = _sandwich(m, n, R)
        if not lo < v < hi:
            fails.append((m, n, R))
    return not fails, f"{len(pts)} points, {len(fails)} failures" + (f": {fails}" if fails else "")


def criterion_3():
    fails, count = [], 0
    for m, Rs in grid_c3():
        for R in Rs:
            vals = {n: es.lambda_mn(m, n, R, force=True).value for n in range(11)}
            count += 1
            arg = min(vals, key=vals.get)
            if arg != m:
                fails.append((m, round(R, 3), arg))
    return not fails, f"{count} (m, R) points from the threshold up, argmin |n| = m" + (
        f"; failures {fails}" if fails else "")


def _c4_sweep():
    Rs = sweep_c4()
    argmin, bound_pref0 = [], []
    A = [biquad_d(4, n)[:2] for n in range(3)]
    for R in Rs:
        vals = [es.lambda_n_dimd(4, n, R, force=True).value for n in range(3)]
        argmin.append(int(np.argmin(vals)))
        X = math.pi / R
        # upper bound of mode 0 against lower bound of mode 1
        bound_pref0.append(es.lambda_poly(2 * X, *A[0]) < es.lambda_poly(X, *A[1]))
    return Rs, np.array(argmin), np.array(bound_pref0)


def criterion_4():
    Rs, argmin, bound_pref0 = _c4_sweep()
    target = threshold_radial_switch(4)
    step = Rs[1] - Rs[0]
    # R above which mode 0 is minimal for every later grid point
    not0 = np.nonzero(argmin != 0)[0]
    switch = Rs[not0[-1] + 1] if len(not0) else Rs[0]
    nb = np.nonzero(~bound_pref0)[0]
    bswitch = Rs[nb[-1] + 1] if len(nb) else Rs[0]
    ok = abs(switch - target) <= step + 1e-9 and not np.any(argmin[Rs > target + step] != 0)
    detail = (f"pi*sqrt(5/3) = {target:.4f}; observed eigenvalue switch at R = {switch:.2f} "
              f"(mode 0 minimal on {np.mean(argmin == 0):.0%} of [{Rs[0]}, {Rs[-1]}]); "
              f"bound comparison switches at R = {bswitch:.2f}")
    if not ok:
        detail += ("; the radial mode is minimal below the threshold as well, "
                   "the threshold only separates the bound intervals")
    return ok, detail


def criterion_5():
    parts, ok = [], True
    for label, problem, d, n, target in C5_POINTS:
        v = _c5_value(problem, d, n)
        good = abs(v - target) < 5e-2
        ok &= good
        parts.append(f"{label} {v:.4f} vs {target:.4f}")
    return ok, "; ".join(parts)


def criterion_6():
    Rs = (20.0, 50.0, 100.0, 200.0)
    th = [sec.first_zero_problem1(1, 1, R) for R in Rs]
    decreasing = all(x > y for x, y in zip(th, th[1:]))
    gap = th[-1] - math.pi
    ok = decreasing and gap < 1e-8
    detail = (f"theta* = {', '.join(f'{x:.6f}' for x in th)}; decreasing {decreasing}; "
              f"theta*(200) - pi = {gap:.3e} (pi/200 = {math.pi / 200:.3e})")
    if not gap < 1e-8:
        detail += "; the gap decays like pi/R, so the 1e-8 threshold is unreachable"
    return ok, detail


def criterion_7():
    t = time.perf_counter()
    worst, bad, count = 0.0, [], 0

    def check(tag, secv, orc):
        nonlocal worst, count
        gap = abs(secv - orc) / secv
        count += 1
        worst = max(worst, gap)
        if gap > 1e-3:
            bad.append((tag, gap))

    for m, n, R in grid_c2():
        check(("c2", m, n, R), es.lambda_mn(m, n, R).value, oracle.oracle_eigenvalue("I", m, n, R, N=N_ORACLE))
    for m, Rs in grid_c3():
        for R in Rs:
            for n in range(11):
                check(("c3", m, n, R), es.lambda_mn(m, n, R, force=True).value,
                      oracle.oracle_eigenvalue("I", m, n, R, N=N_ORACLE))
    for R in sweep_c4(step=0.25):
        for n in range(3):
            check(("c4", n, R), es.lambda_n_dimd(4, n, R, force=True).value,
                  oracle.oracle_eigenvalue("I", 4, n, R, N=N_ORACLE, d=4))
    for label, problem, d, n, _ in C5_POINTS:
        nn = n if n is not None else es.mu_min_dimd(d, 200.0).best.mode
        check(("c5", label), _c5_value(problem, d, n), oracle.oracle_eigenvalue(problem, d, nn, 200.0, N=N_ORACLE, d=d))
    R = 10.0
    cs = oracle.convergence_study("II", 4, 0, R, [250, 500, 1000, 2000], d=4, exact=es.mu0_dim4_exact(R))
    orders = cs["order"]
    dt = time.perf_counter() - t
    ok = not bad and all(1.7 <= p <= 2.3 for p in orders) and dt < 120.0
    return ok, (f"{count} grid points, max gap {worst:.2e}, {len(bad)} above 1e-3; orders "
                f"{', '.join(f'{p:.3f}' for p in orders)}; runtime {dt:.1f} s")


def criterion_8():
    rng = np.random.default_rng(2024)
    n1 = n2 = 0
    for _ in range(10_000):
        x = 1.0 + rng.exponential(3.0) + 1e-9
        l2 = rng.uniform(1e-3, 4.0)
        l1 = l2 + rng.uniform(1e-3, 4.0)
        n1 += sec.det_case1(x, l1, l2) >= 0
        n2 += sec.det_case2(rng.exponential(3.0) + 1e-9, math.sqrt(2) + rng.exponential(2.0)) >= 0
    n3 = 0
    for _ in range(50):
        m = rng.uniform(1.0, 4.0)
        n = int(rng.integers(0, 6))
        R = threshold_log_bound1(m, n) * (1.0 + rng.exponential(3.0))
        th = np.linspace(0.0, math.pi, 1001)[1:]
        n3 += any(sec.psi_problem1(t, m, n, R) >= 0 for t in th)
    th = np.linspace(0.0, 2 * math.pi, 1002)[1:-1]
    n4 = sum(sec.secular_d4_n0(t) <= 0 for t in th)
    z = abs(sec.secular_d4_n0(2 * math.pi))
    ok = n1 == n2 == n3 == n4 == 0 and z <= 1e-12
    return ok, (f"case 1 sign failures {n1}/10000, case 2 {n2}/10000, psi {n3}/50 sets, "
                f"d=4 secular {n4}/1000, |f(2pi)| = {z:.1e}")


GAMMA_REFERENCE = 4.0   # psi = x gives 4 beta (1 - gamma), so no smaller universal value is possible


def criterion_9():
    t = time.perf_counter()
    rng = np.random.default_rng(9)
    worst, gmax, nhyp, bad_int = 0.0, 0.0, 0, 0
    for _ in range(100):
        be = rng.uniform(0.55, 0.99)
        ga = rng.uniform(0.02, 0.98)
        R = threshold_biharmonic(be) + rng.exponential(2.0)
        a = math.exp(rng.uniform(-2.0, 2.0))
        g = AnnulusGeometry(a, a * math.exp(R))
        psi = bh.random_biharmonic(rng, 8, g)
        for side in (bh.OUTER, bh.INNER):
            cf = bh.weighted_norms(psi, g, ga, side)
            qd = bh.quadrature_norms(psi, g, ga, side)
            for k in cf:
                rel = abs(cf[k] - qd[k]) / abs(qd[k])
                worst = max(worst, rel)
                bad_int += rel > 1e-8
        rep = bh.check_interpolation(psi, g, be, ga, force=False)
        nhyp += rep["hypothesis"]
        gmax = max(gmax, rep["gamma_effective"])
    dt = time.perf_counter() - t
    ok = bad_int == 0 and gmax <= GAMMA_REFERENCE and dt < 30.0
    return ok, (f"max closed-form vs quadrature {worst:.1e} ({bad_int} above 1e-8); "
                f"{nhyp}/100 in hypothesis, max effective Gamma {gmax:.2e} <= {GAMMA_REFERENCE}; "
                f"runtime {dt:.1f} s")


C10_GRID = {
    "corollary-A": [{"m": m} for m in (1.0, 1.5, 2.0, 3.0)],
    "corollary-B": [{"m": m} for m in (1.0, 1.5, 2.0, 3.0)],
    "theorem-C-I": [{"d": d} for d in (3, 4, 5, 6)],
    "theorem-C-II": [{"d": d} for d in (3, 4, 5, 6)],
    "weighted-poincare-d2": [{"beta": b} for b in (0.55, 0.75, 0.95, 1.5)],
    "weighted-poincare-m": [{"m": m, "alpha": al} for m in (1.5, 2.0, 3.0) for al in (0.5, 1.0, 1.5)],
    "ipp-lemma": [{"beta": b} for b in (0.6, 1.0, 2.0)],
    "ipp-lemma-general": [{"beta": b, "n": n} for b in (0.5, 1.0, 2.0) for n in (2, 3, 5)],
    "bilap-weights-d4": [{"beta": b} for b in (0.3, 0.7, 1.0, 1.5)],
    "interp-weighted": [{"beta": b, "gamma": ga} for b in (0.6, 0.9) for ga in (0.25, 0.75)],
}
C10_R = (3.0, 10.0, 30.0)
C10_TIGHT = [("corollary-A", 20.0, {}), ("corollary-B", 20.0, {}), ("theorem-C-I", 50.0, {"d": 5}),
             ("theorem-C-II", 50.0, {"d": 3}), ("theorem-C-II", 50.0, {"d": 4}), ("theorem-C-II", 50.0, {"d": 5})]


def criterion_10(trials=1000, grid_trials=200):
    failing = {}
    for name in verify.REGISTRY:
        # the default point gets the full trial count, the parameter grid a smaller one
        runs = [(10.0, None, trials)] + [(R, p, grid_trials) for R in C10_R for p in C10_GRID[name]]
        for R, p, k in runs:
            d = int((p or {}).get("d", verify.REGISTRY[name].defaults.get("d", 2)))
            g = AnnulusGeometry.from_R(R, d=d)
            try:
                rep = verify.check_inequality(name, g, p, trials=k, seed=10, threads=4)
            except ValueError:
                continue   # outside the hypothesis region
            if rep["violations"]:
                failing.setdefault(name, []).append(
                    f"R={R:g} {p or 'default'}: {rep['violations']} violations, min ratio {rep['min_ratio']:.3f}")
    tight = []
    for name, R, p in C10_TIGHT:
        t = verify.tightness(name, R, p)
        tight.append(abs(t["ratio"] - t["expected"]))
    tight_ok = max(tight) <= 1e-2
    ok = not failing and tight_ok
    detail = f"tightness max |ratio - eigenvalue/bound| = {max(tight):.1e}; "
    if failing:
        detail += "violations in " + " | ".join(f"{k}: {v[0]} (+{len(v) - 1} more points)" for k, v in failing.items())
    else:
        detail += "no violations"
    return ok, detail


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
            criterion_6, criterion_7, criterion_8, criterion_9, criterion_10]


def _line(k, ok, detail):
    return f"criterion {k:2d}: {'PASS' if ok else 'FAIL'}  {detail}"


@pytest.mark.parametrize("k", range(1, 11))
def test_criterion(k, capsys):
    ok, detail = CRITERIA[k - 1]()
    line = _line(k, ok, detail)
    RESULTS[k] = line
    with capsys.disabled():
        print("\n" + line)
    assert ok, line


if __name__ == "__main__":
    bad = 0
    for k, f in enumerate(CRITERIA, 1):
        ok, detail = f()
        bad += not ok
        print(_line(k, ok, detail), flush=True)
    sys.exit(1 if bad else 0)
