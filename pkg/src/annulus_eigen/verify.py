"""Randomised checks of the inequalities with explicit constants.

Every inequality splits over angular modes, so each side is evaluated for a
single mode u = Y(log r) * (angular harmonic of index n) with the integrals
written in t = log r:

    int (Delta u)^2          -> int (Y'' + (d-2) Y' - nu Y)^2 e^{(d-4)t}
    int u^2/|x|^4            -> int Y^2 e^{(d-4)t}
    int |grad u|^2/|x|^2     -> int (Y'^2 + nu Y^2) e^{(d-4)t}
    int (L_m u)^2  (d = 2)   -> int (Y'' + 2(m-1) Y' + ((m-1)^2 - n^2) Y)^2 e^{-2t}

with nu = n(n+d-2).  Weights (|x|/b)^s and (a/|x|)^s become exponentials.
Each registered inequality is stored as small <= big; the reported ratio is
big/small, so a violation is a ratio below 1.
"""

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from numpy.polynomial import polynomial as P
from scipy.interpolate import CubicSpline

from . import oracle
from .geometry import AnnulusGeometry, WEIGHTED_GRADIENT, WEIGHTED_L2, threshold_biharmonic
from .modes import biquad_d

QUAD_RTOL = 1e-10
_GL_X, _GL_W = np.polynomial.legendre.leggauss(16)


@dataclass
class TestFunction:
    """Y(t) = s^2 (1-s)^2 p(s), s = (t - t0)/(t1 - t0), on [t0, t1]."""

    n: int
    coeffs: np.ndarray
    t0: float
    t1: float
    clamped: bool = True
    seed: int = None

    def __post_init__(self):
        base = np.array([0.0, 0.0, 1.0, -2.0, 1.0]) if self.clamped else np.array([1.0])
        self._c0 = P.polymul(base, np.asarray(self.coeffs, float))
        L = self.t1 - self.t0
        self._c1 = P.polyder(self._c0) / L
        self._c2 = P.polyder(self._c0, 2) / L**2

    def __call__(self, t):
        s = (np.asarray(t) - self.t0) / (self.t1 - self.t0)
        return P.polyval(s, self._c0), P.polyval(s, self._c1), P.polyval(s, self._c2)

    def boundary_residual(self):
        y0 = self(np.array([self.t0, self.t1]))
        return float(max(np.abs(y0[0]).max(), np.abs(y0[1]).max()))


@dataclass
class SplineFunction:
    """Clamped cubic spline through grid values (used for oracle minimisers)."""

    n: int
    spline: CubicSpline

    def __call__(self, t):
        return self.spline(t), self.spline(t, 1), self.spline(t, 2)


def random_test_function(rng, n, t0, t1, clamped=True, max_degree=10):
    deg = int(rng.integers(0, max_degree + 1))
    c = rng.standard_normal(deg + 1) / (1.0 + np.arange(deg + 1))
    return TestFunction(n, c, t0, t1, clamped)


def integrate(F, t0, t1, rtol=QUAD_RTOL, panels=16, max_panels=1 << 15):
    """Composite 16-point Gauss-Legendre, doubling panels until every
    component agrees to rtol.  F maps t (1-d array) to an array (k, len(t))."""

    def run(p):
        edges = np.linspace(t0, t1, p + 1)
        h = 0.5 * (edges[1:] - edges[:-1])
        mid = 0.5 * (edges[1:] + edges[:-1])
        t = (mid[:, None] + h[:, None] * _GL_X[None, :]).ravel()
        w = (h[:, None] * _GL_W[None, :]).ravel()
        return np.asarray(F(t)) @ w

    prev = run(panels)
    while panels < max_panels:
        panels *= 2
        cur = run(panels)
        if np.all(np.abs(cur - prev) <= rtol * np.maximum(np.abs(cur), 1e-300)):
            return cur
        prev = cur
    return prev


def _w(t, s, side, t0, t1):
    if side == "outer":
        return np.exp(s * (t - t1))
    if side == "inner":
        return np.exp(s * (t0 - t))
    return np.ones_like(t)


def mode_forms(f, d, t0, t1, m=1.0, weight=None):
    """Per-mode integrals: lap, l2, grad, Lm and hess (d = 2 Hessian), each
    with an optional extra weight (s, side)."""
    n = f.n
    nu = n * (n + d - 2)

    def F(t):
        Y, Y1, Y2 = f(t)
        e = np.exp((d - 4) * t)
        if weight is not None:
            e = e * _w(t, weight[0], weight[1], t0, t1)
        lap = Y2 + (d - 2) * Y1 - nu * Y
        Lm = Y2 + 2 * (m - 1) * Y1 + ((m - 1) ** 2 - n * n) * Y
        hess = (Y2 - Y1) ** 2 + 2 * n * n * (Y1 - Y) ** 2 + (Y1 - n * n * Y) ** 2
        return np.array([lap * lap * e, Y * Y * e, (Y1 * Y1 + nu * Y * Y) * e, Lm * Lm * e, hess * e])

    v = integrate(F, t0, t1)
    return dict(zip(("lap", "l2", "grad", "Lm", "hess"), v))


def hardy_forms(f, c, t0, t1):
    """int Y^2 e^{ct} and int Y'^2 e^{ct}."""

    def F(t):
        Y, Y1, _ = f(t)
        e = np.exp(c * t)
        return np.array([Y * Y * e, Y1 * Y1 * e])

    return integrate(F, t0, t1)


# registry

@dataclass
class Inequality:
    name: str
    description: str
    defaults: dict
    hypothesis: object      # (R, params) -> bool
    evaluate: object        # (f, g, params) -> list of (small, big)
    modes: object           # params -> list of admissible n
    unit_ball: bool = False
    clamped: bool = True
    explicit: bool = True
    tight: object = None    # (R, params) -> (problem, m_or_d, n, d, bound)


def _X2(R):
    return (math.pi / R) ** 2


def const_corollary_A(m, R):
    X2 = _X2(R)
    return (4 * m * m + X2) * X2


def const_corollary_B(m, R):
    X2 = _X2(R)
    return (4 * m * m + X2) * X2 / (4 * (m * m + 1) + 2 * X2)


def const_theorem_C_I(d, R):
    X2 = _X2(R)
    return (d * d / 4 + X2) * ((d - 4) ** 2 / 4 + X2)


def const_theorem_C_II(d, R):
    X2 = _X2(R)
    if d == 3:
        return (25 + 104 * X2 + 16 * X2 * X2) / (36 + 16 * X2)
    if d == 4:
        return (9 + 10 * X2 + X2 * X2) / (3 + X2)
    if d >= 5:
        return (d * d * (d - 4) ** 2 + 8 * ((d - 2) ** 2 + 4) * X2 + 16 * X2 * X2) / (4 * (d - 4) ** 2 + 16 * X2)
    raise ValueError("d must be >= 3")


def _r_bracket(d):
    A0 = biquad_d(d, 0)[0]
    return 5.0 / math.sqrt(A0)


def _ev_cor_A(f, g, p):
    q = mode_forms(f, 2, math.log(g.a), math.log(g.b), m=p["m"])
    return [(const_corollary_A(p["m"], g.R) * q["l2"], q["Lm"])]


def _ev_cor_B(f, g, p):
    q = mode_forms(f, 2, math.log(g.a), math.log(g.b), m=p["m"])
    return [(const_corollary_B(p["m"], g.R) * q["grad"], q["Lm"])]


def _ev_C_I(f, g, p):
    q = mode_forms(f, p["d"], math.log(g.a), math.log(g.b))
    return [(const_theorem_C_I(p["d"], g.R) * q["l2"], q["lap"])]


def _ev_C_II(f, g, p):
    q = mode_forms(f, p["d"], math.log(g.a), math.log(g.b))
    return [(const_theorem_C_II(p["d"], g.R) * q["grad"], q["lap"])]


def _ev_wp_d2(f, g, p):
    b = p["beta"]
    t0, t1 = math.log(g.a), math.log(g.b)
    out = []
    lap = mode_forms(f, 2, t0, t1)["lap"]
    if b > 0.5:
        q = mode_forms(f, 2, t0, t1, weight=(4 * b, "inner"))
        out.append((q["l2"], lap / ((2 * b + 1) ** 2 - 2) ** 2))
    if b > math.sqrt(2) - 1:
        q = mode_forms(f, 2, t0, t1, weight=(2 * b, "inner"))
        out.append((q["grad"], lap * (b + 1) ** 2 / ((b + 1) ** 2 - 2) ** 2))
    return out


def _ev_wp_m(f, g, p):
    m, al = p["m"], p["alpha"]
    D = 4 * (m - 1) * al * (al * al + (m + 1) * al + m * m)
    q = mode_forms(f, 2, math.log(g.a), math.log(g.b), m=m, weight=(2 * al, "inner"))
    return [(q["grad"], q["Lm"] * (1 + al) ** 2 / D), (q["l2"], q["Lm"] * (1 + al) / D)]


def _ev_ipp(f, g, p):
    b = p["beta"]
    I0, I1 = hardy_forms(f, 4 * b - 2, math.log(g.a), math.log(g.b))
    return [(I0, I1 / (2 * b - 1) ** 2)]


def _ev_ipp_gen(f, g, p):
    b = p["beta"]
    I0, I1 = hardy_forms(f, b, math.log(g.a), math.log(g.b))
    return [(I0, 4.0 / b**2 * I1)]


def _ev_d4(f, g, p):
    b = p["beta"]
    t0, t1 = math.log(g.a), math.log(g.b)
    out = []
    for side in ("outer", "inner"):
        q = mode_forms(f, 4, t0, t1, weight=(b, side))
        out.append((q["l2"], 4 * b * b / (2 - b) ** 2 * q["lap"]))
        out.append((q["grad"], 4 * b / (2 - b) * q["lap"]))
    return out


def _ev_interp(f, g, p):
    """Non-explicit constant: small is the left side, big the right side
    without constant, so the ratio is 1/C_effective."""
    be, ga = p["beta"], p["gamma"]
    t0, t1 = math.log(g.a), math.log(g.b)
    lhs = sum(mode_forms(f, 2, t0, t1, weight=(2 * ga, s))["grad"] for s in ("outer", "inner"))
    rhs = sum(mode_forms(f, 2, t0, t1, weight=(4 * be, s))["l2"] for s in ("outer", "inner"))
    rhs += mode_forms(f, 2, t0, t1)["hess"]
    return [(lhs, rhs)]


def _hyp_interp(R, p):
    try:
        return R >= threshold_biharmonic(p["beta"]) and math.sqrt(2) - 1 < p["gamma"] < 1
    except ValueError:
        return False


REGISTRY = {
    "corollary-A": Inequality(
        "corollary-A", "int (L_m u)^2 >= (4m^2+X^2) X^2 int u^2/|x|^4",
        {"m": 1.0}, lambda R, p: p["m"] >= 1 and R >= math.pi * math.sqrt(2) / math.sqrt(2 * p["m"] - 1),
        _ev_cor_A, lambda p: list(range(0, int(2 * p["m"]) + 4)),
        tight=lambda R, p: (WEIGHTED_L2, p["m"], int(round(p["m"])), 2, const_corollary_A(p["m"], R))),
    "corollary-B": Inequality(
        "corollary-B", "int (L_m u)^2 >= (4m^2+X^2) X^2/(4(m^2+1)+2X^2) int |grad u|^2/|x|^2",
        {"m": 1.0}, lambda R, p: p["m"] >= 1 and R >= math.pi * math.sqrt(2) / math.sqrt(2 * p["m"] - 1),
        _ev_cor_B, lambda p: list(range(0, int(2 * p["m"]) + 4)),
        tight=lambda R, p: (WEIGHTED_GRADIENT, p["m"], int(round(p["m"])), 2, const_corollary_B(p["m"], R))),
    "theorem-C-I": Inequality(
        "theorem-C-I", "int (Delta u)^2 >= (d^2/4+X^2)((d-4)^2/4+X^2) int u^2/|x|^4",
        {"d": 5}, lambda R, p: p["d"] >= 3 and R >= _r_bracket(p["d"]),
        _ev_C_I, lambda p: list(range(0, 5)),
        tight=lambda R, p: (WEIGHTED_L2, p["d"], 0, p["d"], const_theorem_C_I(p["d"], R))),
    "theorem-C-II": Inequality(
        "theorem-C-II", "Hardy-Rellich: int (Delta u)^2 >= c_d(X) int |grad u|^2/|x|^2",
        {"d": 5},
        lambda R, p: p["d"] >= 3 and R >= max(_r_bracket(p["d"]), 2 * math.pi / math.sqrt(7) if p["d"] == 3 else 0),
        _ev_C_II, lambda p: list(range(0, 5)),
        tight=lambda R, p: (WEIGHTED_GRADIENT, p["d"], 0 if p["d"] >= 5 else 1, p["d"],
                            const_theorem_C_II(p["d"], R))),
    "weighted-poincare-d2": Inequality(
        "weighted-poincare-d2", "inner weights: int (a/|x|)^{4b} u^2/|x|^4 and int (a/|x|)^{2b} |grad u|^2/|x|^2 vs int (Delta u)^2",
        {"beta": 0.75}, lambda R, p: p["beta"] > 0.5,
        _ev_wp_d2, lambda p: list(range(0, 5))),
    "weighted-poincare-m": Inequality(
        "weighted-poincare-m", "inner weight (a/|x|)^{2 alpha} on both sides, operator L_m",
        {"m": 2.0, "alpha": 0.5}, lambda R, p: p["m"] > 1 and 0 < p["alpha"] < min(4 * p["m"] / 3, 2),
        _ev_wp_m, lambda p: list(range(0, int(2 * p["m"]) + 4))),
    "ipp-lemma": Inequality(
        "ipp-lemma", "unit ball: int u^2 |x|^{4b-4} <= (2b-1)^{-2} int (x/|x|^2 . grad u)^2 |x|^{4b}",
        {"beta": 1.0}, lambda R, p: p["beta"] > 0.5, _ev_ipp, lambda p: [0], unit_ball=True),
    "ipp-lemma-general": Inequality(
        "ipp-lemma-general", "unit ball in R^n: int |x|^b u^2/|x|^n <= 4/b^2 int |x|^b (x/|x|^{n/2} . grad u)^2",
        {"beta": 1.0, "n": 3}, lambda R, p: p["beta"] > 0 and p["n"] >= 2, _ev_ipp_gen, lambda p: [0],
        unit_ball=True),
    "bilap-weights-d4": Inequality(
        "bilap-weights-d4", "d = 4, weights (|x|/b)^b and (a/|x|)^b with 4b^2/(2-b)^2 and 4b/(2-b)",
        {"beta": 1.0}, lambda R, p: 0 < p["beta"] < 2, _ev_d4, lambda p: list(range(0, 5))),
    "interp-weighted": Inequality(
        "interp-weighted", "weighted gradient vs weighted L2 plus Hessian (constant not explicit)",
        {"beta": 0.75, "gamma": 0.75}, _hyp_interp, _ev_interp, lambda p: list(range(0, 5)),
        clamped=False, explicit=False),
}


def _trial(ineq, g, params, seed):
    rng = np.random.default_rng(seed)
    modes = ineq.modes(params)
    n = int(modes[int(rng.integers(len(modes)))])
    f = random_test_function(rng, n, math.log(g.a), math.log(g.b), clamped=ineq.clamped)
    return [big / small if small > 0 else math.inf for small, big in ineq.evaluate(f, g, params)]


def check_inequality(name, g, params=None, trials=1000, seed=0, force=False, threads=1, tol=1e-9):
    """Fuzz one inequality.  Returns a report dict.

    For explicit constants min_ratio >= 1 means no violation.  For the
    non-explicit entry the effective constant is 1/min_ratio.
    """
    ineq = REGISTRY[name]
    p = dict(ineq.defaults)
    p.update(params or {})
    if ineq.unit_ball and abs(g.b - 1.0) > 1e-12:
        g = AnnulusGeometry(g.a / g.b, 1.0, g.d)
    hyp = bool(ineq.hypothesis(g.R, p))
    if not hyp and not force:
        raise ValueError(f"{name}: parameters {p} with R={g.R} are outside the hypothesis region")
    seeds = np.random.SeedSequence(seed).spawn(trials)
    if threads > 1:
        with ThreadPoolExecutor(threads) as ex:
            ratios = list(ex.map(lambda s: _trial(ineq, g, p, s), seeds))
    else:
        ratios = [_trial(ineq, g, p, s) for s in seeds]
    flat = [r for rs in ratios for r in rs]
    min_ratio = min(flat)
    rep = {
        "name": name, "params": p, "R": g.R, "trials": trials, "seed": seed,
        "hypothesis": hyp, "explicit": ineq.explicit, "min_ratio": min_ratio,
        "violations": sum(1 for r in flat if r < 1 - tol) if ineq.explicit else 0,
    }
    if not ineq.explicit:
        rep["effective_constant"] = 1.0 / min_ratio
    if not hyp:
        rep["flag"] = "outside hypothesis region"
    return rep


def oracle_minimiser(problem, m_or_d, n, R, d=2, N=2000, a=1.0):
    """Minimising mode profile of the discrete problem as a clamped spline in t."""
    form = oracle.transformed_forms(problem, m_or_d, n, d=d)
    df = oracle.discretize(form, R, N)
    vals, vecs = oracle.smallest_eigs(df, 1)
    t = np.linspace(0.0, R, N + 1)
    Z = np.concatenate([[0.0], vecs[:, 0], [0.0]])
    c = -1.0 if d == 2 else (d - 4) / 2.0   # Z = exp(c t) Y
    Y = Z * np.exp(-c * t)
    Y = Y / np.abs(Y).max()
    sp = CubicSpline(t + math.log(a), Y, bc_type="clamped")
    return SplineFunction(n, sp), float(vals[0])


def tightness(name, R, params=None, N=2000):
    """Ratio for the oracle minimiser and eigenvalue/bound for comparison."""
    ineq = REGISTRY[name]
    if ineq.tight is None:
        raise ValueError(f"{name} has no eigenvalue counterpart")
    p = dict(ineq.defaults)
    p.update(params or {})
    problem, md, n, d, bound = ineq.tight(R, p)
    f, ev = oracle_minimiser(problem, md, n, R, d=d, N=N)
    g = AnnulusGeometry.from_R(R, d=d)
    small, big = ineq.evaluate(f, g, p)[0]
    return {"name": name, "R": R, "ratio": big / small, "eigenvalue": ev, "bound": bound,
            "expected": ev / bound}
