"""Eigenvalues of the mode problems, their bounds, and minimisation over modes.

X = pi/R throughout.  For the weighted L2 problem the eigenvalue is
lam(theta) = s^4 + A0 s^2 + B0 with s = theta/R, and for the weighted
gradient problem mu(theta) = (s^4 + A0 s^2 + B0)/(s^2 + K).  Both maps are
increasing in theta, so a first zero in (pi, 2pi) gives the bracket
f(pi) < value < f(2pi).
"""

import math
from dataclasses import dataclass, field

from . import secular as sec
from .characteristic import COMPLEX_PAIR
from .geometry import (
    WEIGHTED_GRADIENT,
    WEIGHTED_L2,
    AnnulusGeometry,
    assumption_I,
    threshold_dim3_mode1,
    threshold_problem2_assumptionI,
)
from .modes import biquad_d, biquad_d2


@dataclass
class EigenResult:
    value: float
    theta_star: float
    regime: str
    lower_bound: float
    upper_bound: float
    bracket_proven: bool
    mode: int
    problem: str
    geometry: AnnulusGeometry
    m: float = None
    notes: list = field(default_factory=list)

    def __post_init__(self):
        if not self.value > 0:
            raise RuntimeError(f"non-positive eigenvalue {self.value}")
        if self.bracket_proven and not (self.lower_bound < self.value < self.upper_bound):
            raise RuntimeError(
                f"sandwich violated: {self.lower_bound} < {self.value} < {self.upper_bound} fails")

    def as_dict(self):
        g = self.geometry
        return {
            "value": self.value, "theta_star": self.theta_star, "regime": self.regime,
            "lower_bound": self.lower_bound, "upper_bound": self.upper_bound,
            "bracket_proven": self.bracket_proven, "mode": self.mode, "problem": self.problem,
            "m": self.m, "d": g.d, "a": g.a, "b": g.b, "R": g.R, "notes": list(self.notes),
        }


@dataclass
class ModeMinimum:
    best: EigenResult
    by_mode: dict
    ordered: bool = True   # False when the theory cannot rank the candidates


def _geom(g, d=2):
    if isinstance(g, AnnulusGeometry):
        return g
    return AnnulusGeometry.from_R(float(g), d=d)


def lambda_poly(s, A0, B0):
    s2 = s * s
    return s2 * s2 + A0 * s2 + B0


def fourier_floor_l2(A0, B0):
    """inf over frequencies of s^4 + A0 s^2 + B0; a lower bound for every R."""
    return B0 if A0 >= 0 else B0 - A0 * A0 / 4.0


def fourier_floor_grad(A0, B0, K):
    """inf over s >= 0 of (s^4 + A0 s^2 + B0)/(s^2 + K)."""
    C = K * K - A0 * K + B0
    if K <= 0:
        return A0 - K if C <= 0 else float("-inf")
    u = math.sqrt(C) if C > 0 and math.sqrt(C) >= K else K
    return u + (A0 - 2.0 * K) + C / u


# weighted L2 problem

def bounds_problem1(A0, B0, R):
    X = math.pi / R
    return lambda_poly(X, A0, B0), lambda_poly(2.0 * X, A0, B0)


def _solve_l2(A0, B0, g, mode, m, force):
    R = g.R
    th, proven = sec.first_zero_biquad(A0, R, force=force)
    lo, hi = bounds_problem1(A0, B0, R)
    notes = [] if proven else ["unproven bracket"]
    return EigenResult(lambda_poly(th / R, A0, B0), th, COMPLEX_PAIR, lo, hi, proven,
                       mode, WEIGHTED_L2, g, m, notes)


def lambda_mn(m, n, g, force=False):
    if m < 1:
        raise ValueError("m must be >= 1")
    g = _geom(g)
    A0, B0, _ = biquad_d2(m, n)
    return _solve_l2(A0, B0, g, abs(n), m, force)


def lambda_min_d2(m, g, n_cap=10000):
    """Minimum over n of lambda_mn.  Modes are added until the frequency floor
    (m^2 - n^2)^2 of the next mode exceeds the running minimum."""
    g = _geom(g)
    by_mode = {}
    best = None
    n = 0
    while n <= n_cap:
        if n > m and best is not None and (m * m - n * n) ** 2 > best.value:
            break
        r = lambda_mn(m, n, g, force=True)
        by_mode[n] = r
        if best is None or r.value < best.value:
            best = r
        n += 1
    return ModeMinimum(best, by_mode, True)


def lambda_n_dimd(d, n, g, force=False):
    if d < 2 or n < 0:
        raise ValueError("need d >= 2 and n >= 0")
    g = _geom(g, d)
    A0, B0, _ = biquad_d(d, n)
    return _solve_l2(A0, B0, g, n, None, force)


def lambda_min_dimd(d, g, n_cap=10000):
    g = _geom(g, d)
    by_mode, best = {}, None
    for n in range(n_cap + 1):
        A0, B0, _ = biquad_d(d, n)
        if best is not None and fourier_floor_l2(A0, B0) > best.value:
            break
        r = lambda_n_dimd(d, n, g, force=True)
        by_mode[n] = r
        if best is None or r.value < best.value:
            best = r
    return ModeMinimum(best, by_mode, True)


# weighted gradient problem

def bounds_problem2(A0, B0, K, R):
    X = math.pi / R
    return sec.mu_of_s(X, A0, B0, K), sec.mu_of_s(2.0 * X, A0, B0, K)


def printed_bounds_problem2_d2(m, n, R):
    """The d = 2 display: mu(X/sqrt 2) below and mu(sqrt 2 X) above.

    The lower one is implied by the bracket.  The upper one fails whenever the
    first zero lies beyond sqrt(2) pi, which happens near the threshold.
    """
    A0, B0, K = biquad_d2(m, n)
    X = math.pi / R
    return sec.mu_of_s(X / math.sqrt(2.0), A0, B0, K), sec.mu_of_s(math.sqrt(2.0) * X, A0, B0, K)


def _solve_grad(A0, B0, K, g, mode, m, d2_threshold=None):
    R = g.R
    res = sec.first_zero_problem2(A0, B0, K, R)
    mu, th = res["mu"], res["theta"]
    notes = []
    if th is None:
        lo = hi = float("nan")
        proven = False
        notes.append("four imaginary roots; outside the (pi, 2pi) bracket theory")
    else:
        lo, hi = bounds_problem2(A0, B0, K, R)
        in_bracket = math.pi < th < 2.0 * math.pi
        A_hi = A0 - hi
        generic = A_hi > 0 and R * math.sqrt(A_hi) >= 5.0
        proven = in_bracket and (generic or (d2_threshold is not None and R >= d2_threshold))
        if not proven:
            notes.append("unproven bracket")
    return EigenResult(mu, th, res["regime"], lo, hi, proven, mode, WEIGHTED_GRADIENT, g, m, notes)


def mu_mn(m, n, g):
    if m < 1:
        raise ValueError("m must be >= 1")
    g = _geom(g)
    A0, B0, K = biquad_d2(m, n)
    thr = None
    if assumption_I(m, n):
        try:
            thr = threshold_problem2_assumptionI(m, n)
        except ValueError:
            thr = None
    r = _solve_grad(A0, B0, K, g, abs(n), m, thr)
    if n == 0 and m > 1 and sec.first_zero_p2_d2_n0(m, g.R) is not None:
        raise RuntimeError("complex quadruple branch produced a root")
    return r


def mu_min_d2(m, g, n_cap=10000):
    """Minimum over n of mu_mn.  For m >= 2 the n = 0 and n = m candidates are
    both kept and the result is flagged as not ordered by the theory."""
    g = _geom(g)
    by_mode, best = {}, None
    for n in range(n_cap + 1):
        A0, B0, K = biquad_d2(m, n)
        if n > m and best is not None and fourier_floor_grad(A0, B0, K) > best.value:
            break
        r = mu_mn(m, n, g)
        by_mode[n] = r
        if best is None or r.value < best.value:
            best = r
    return ModeMinimum(best, by_mode, ordered=m < 2)


def mu_candidates_d2(m, g):
    """The two competing modes n = 0 and n = m (m rounded to an integer)."""
    g = _geom(g)
    k = int(round(m))
    return {0: mu_mn(m, 0, g), k: mu_mn(m, k, g)}


def mu0_dim4_exact(g):
    R = _geom(g, 4).R
    return 4.0 + 4.0 * math.pi ** 2 / R ** 2


def mu_n_dimd(d, n, g):
    if d < 3 or n < 0:
        raise ValueError("need d >= 3 and n >= 0")
    g = _geom(g, d)
    A0, B0, K = biquad_d(d, n)
    if d == 4 and n == 0:
        R = g.R
        X = math.pi / R
        # lam1 vanishes identically; the secular function is 2(1 - cos t) - t sin t
        return EigenResult(mu0_dim4_exact(g), 2.0 * math.pi, COMPLEX_PAIR, 4.0 + X * X,
                           4.0 + 4.0 * X * X, False, 0, WEIGHTED_GRADIENT, g, None,
                           ["exact closed form; zero sits at the bracket end 2pi"])
    return _solve_grad(A0, B0, K, g, n, None)


def mu_min_dimd(d, g, n_cap=10000):
    g = _geom(g, d)
    by_mode, best = {}, None
    for n in range(n_cap + 1):
        A0, B0, K = biquad_d(d, n)
        if n > 1 and best is not None and fourier_floor_grad(A0, B0, K) > best.value:
            break
        r = mu_n_dimd(d, n, g)
        by_mode[n] = r
        if best is None or r.value < best.value:
            best = r
    return ModeMinimum(best, by_mode, True)


# headline bounds for the minimal eigenvalues in d = 2

def theorem_A_bounds(m, R):
    X2 = (math.pi / R) ** 2
    return (4 * m * m + X2) * X2, (4 * m * m + 4 * X2) * 4 * X2


def theorem_B_bounds(m, R):
    X2 = (math.pi / R) ** 2
    lo = (4 * m * m + X2) * X2 / (4 * (m * m + 1) + 2 * X2)
    hi = (4 * m * m + 2 * X2) * 2 * X2 / (m * m + 1 + 2 * X2)
    return lo, hi


def minimal_mode_analysis(problem, m_or_d, R, d=2):
    """Continuous and integer minimisers of the bound functions plus the
    threshold inequalities used to compare modes."""
    X2 = (math.pi / R) ** 2
    out = {"R": R, "X2": X2}
    if d == 2 and problem == WEIGHTED_L2:
        m = float(m_or_d)
        f = lambda t: ((m - t) ** 2 + X2) * ((m + t) ** 2 + X2)
        t_star = math.sqrt(m * m - X2) if X2 < m * m else 0.0
        lo_n, hi_n = math.floor(t_star), math.floor(t_star) + 1
        out.update(continuous_minimiser=t_star, f_floor=f(lo_n), f_ceil=f(hi_n),
                   integer_argmin=lo_n if f(lo_n) <= f(hi_n) else hi_n,
                   alpha_sq_le_half_2m_minus_1=X2 <= (2 * m - 1) / 2.0)
        return out
    if d == 2:
        m = float(m_or_d)
        c = mu_candidates_d2(m, R)
        out.update(candidates={k: v.value for k, v in c.items()}, ordered=m < 2)
        return out
    dd = int(m_or_d)
    vals = {}
    for n in range(4):
        if problem == WEIGHTED_L2:
            vals[n] = lambda_n_dimd(dd, n, R, force=True).value
        else:
            vals[n] = mu_n_dimd(dd, n, R).value
    out["values"] = vals
    out["integer_argmin"] = min(vals, key=vals.get)
    if problem == WEIGHTED_GRADIENT and dd == 4:
        out["radial_below_mode1_bound"] = 4 + 4 * X2 >= 3 + X2 + 4 * X2 / (3 + X2)
    if problem == WEIGHTED_GRADIENT and dd == 3:
        out["mode1_preferred"] = 4 * X2 <= 7
        out["threshold"] = threshold_dim3_mode1()
    return out
