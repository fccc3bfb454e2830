"""Secular (boundary determinant) functions and their first zeros.

In the complex-pair regime the roots are shift +- lam1, shift +- i lam2 and
the clamped determinant on [log a, log b] is proportional to

    lam1 lam2 (cosh(lam1 R) cos(lam2 R) - 1) - (lam1^2 - lam2^2)/2 sinh(lam1 R) sin(lam2 R).

We always evaluate it multiplied by 2 exp(-lam1 R) (the dominant growth), which
keeps values O(1) and does not move zeros.  With lam2 = theta/R this is the
function psi(theta) of the first problem.
"""

import math

import numpy as np
from scipy.optimize import bisect

from .geometry import threshold_log_bound1

RTOL = 1e-13


class BracketError(ValueError):
    """Raised when the proven bracket (pi, 2pi) is not available."""


def universal_secular(lam1, lam2, R):
    e1 = math.exp(-lam1 * R)
    e2 = e1 * e1
    th = lam2 * R
    return (lam1 * lam2 * ((1.0 + e2) * math.cos(th) - 2.0 * e1)
            - 0.5 * (lam1 * lam1 - lam2 * lam2) * (1.0 - e2) * math.sin(th))


def psi_problem1(theta, m, n, R):
    lam2 = theta / R
    lam1 = math.sqrt(2.0 * (m * m + n * n) + lam2 * lam2)
    return universal_secular(lam1, lam2, R)


def psi_problem1_naive(theta, m, n, R):
    """Unscaled psi; overflows for large a^2 + theta^2."""
    a2 = (2.0 * m * m + 2.0 * n * n) * R * R
    w = math.sqrt(a2 + theta * theta)
    ew = math.exp(w)
    c2 = m * m + n * n
    return ((1.0 + ew * ew) * math.cos(theta) - 2.0 * ew) * theta * w / R**2 - c2 * (ew * ew - 1.0) * math.sin(theta)


def _root(f, lo, hi):
    return bisect(f, lo, hi, xtol=1e-300, rtol=RTOL, maxiter=400)


def scan_zeros(f, lo, hi, npts, first_only=False):
    """Zeros of f in (lo, hi] located by sign changes on a uniform grid."""
    xs = np.linspace(lo, hi, npts + 1)[1:]
    out = []
    prev_x, prev_v = None, None
    for x in xs:
        v = f(x)
        if not math.isfinite(v):
            prev_x, prev_v = None, None
            continue
        if v == 0.0:
            out.append(float(x))
            if first_only:
                return out
        elif prev_v is not None and prev_v * v < 0:
            out.append(_root(f, prev_x, x))
            if first_only:
                return out
        prev_x, prev_v = x, v
    return out


def first_zero_problem1(m, n, R, force=False):
    f = lambda th: psi_problem1(th, m, n, R)
    if R >= threshold_log_bound1(m, n):
        return _root(f, math.pi, 2.0 * math.pi)
    if not force:
        raise BracketError(
            f"R={R} below proven bracket validity 5/sqrt(2m^2+2n^2)={threshold_log_bound1(m, n)}")
    z = scan_zeros(f, 0.0, 2.0 * math.pi, 2000, first_only=True)
    if not z:
        z = scan_zeros(f, 2.0 * math.pi, 8.0 * math.pi, 6000, first_only=True)
    if not z:
        raise BracketError("no sign change found")
    return z[0]


def psi_biquad(theta, A0, R):
    """psi with 2m^2 + 2n^2 replaced by a general A0 > 0."""
    lam2 = theta / R
    return universal_secular(math.sqrt(A0 + lam2 * lam2), lam2, R)


def first_zero_biquad(A0, R, force=False):
    """First zero of psi_biquad; returns (theta, proven)."""
    f = lambda th: psi_biquad(th, A0, R)
    if R * math.sqrt(A0) >= 5.0:
        return _root(f, math.pi, 2.0 * math.pi), True
    if not force:
        raise BracketError(f"R={R} below proven bracket validity 5/sqrt(A0)={5.0 / math.sqrt(A0)}")
    z = scan_zeros(f, 0.0, 8.0 * math.pi, 8000, first_only=True)
    if not z:
        raise BracketError("no sign change found")
    return z[0], False


def zeros_problem1(m, n, R, k_max, force=False):
    if R < threshold_log_bound1(m, n) and not force:
        raise BracketError("below proven bracket validity")
    f = lambda th: psi_problem1(th, m, n, R)
    return scan_zeros(f, 0.0, 2.0 * math.pi * k_max, 256 * k_max)


def lambda_of_theta(theta, A0, B0, R):
    s2 = (theta / R) ** 2
    return s2 * s2 + A0 * s2 + B0


def _shc_diff(a, b):
    """sinh(a)/a - sinh(b)/b without cancellation for small arguments."""
    if max(abs(a), abs(b)) > 1.0:
        shc = lambda u: math.sinh(u) / u if u else 1.0
        return shc(a) - shc(b)
    a2, b2 = a * a, b * b
    pa, pb, fact, s = 1.0, 1.0, 1.0, 0.0
    for k in range(1, 30):
        pa *= a2
        pb *= b2
        fact *= (2 * k) * (2 * k + 1)
        term = (pa - pb) / fact
        s += term
        if abs(term) <= 1e-17 * abs(s):
            break
    return s


def det_case1(x, lam1, lam2):
    """Clamped determinant for real distinct roots (negative for x > 1):

        (l1+l2)^2 (x^{2 l1} + x^{2 l2}) - (l1-l2)^2 (x^{2 l1 + 2 l2} + 1) - 8 l1 l2 x^{l1+l2}.

    Evaluated as 4 x^{l1+l2} (P - Q)(P + Q) with P = (l1+l2) sinh(a),
    Q = (l1-l2) sinh(b), a = (l1-l2) L/2, b = (l1+l2) L/2, L = log x, so the
    sign survives rounding near x = 1.
    """
    L = math.log(x)
    a, b = 0.5 * (lam1 - lam2) * L, 0.5 * (lam1 + lam2) * L
    P = (lam1 + lam2) * math.sinh(a)
    Q = (lam1 - lam2) * math.sinh(b)
    PmQ = (lam1 + lam2) * (lam1 - lam2) * 0.5 * L * _shc_diff(a, b)
    return 4.0 * x ** (lam1 + lam2) * PmQ * (P + Q)


def det_case2(x, alpha):
    """Determinant for a repeated root, in the variable x = (b/a) - 1."""
    u = alpha * math.log1p(x)
    if abs(u) > 1.0:
        y = math.exp(u)
        return 2.0 * (y - 1.0) - u * (y + 1.0)
    # sum over k >= 3 of (2 - k) u^k / k!, all terms of one sign
    s, p = 0.0, u * u / 2.0
    for k in range(3, 40):
        p *= u / k
        term = (2 - k) * p
        s += term
        if abs(term) <= 1e-17 * abs(s):
            break
    return s


def double_root_det(rho, R, imaginary=False):
    """Clamped determinant for roots +-rho, each double: 4 rho^2 R^2 - 4 sinh^2(rho R).

    For imaginary roots +-i rho this becomes 4 sin^2(rho R) - 4 rho^2 R^2.
    Never zero for rho != 0.
    """
    if imaginary:
        return 4.0 * math.sin(rho * R) ** 2 - 4.0 * (rho * R) ** 2
    return 4.0 * (rho * R) ** 2 - 4.0 * math.sinh(rho * R) ** 2


def quadruple_root_det(R):
    return -R**4


def four_imaginary_det(s1, s2, R):
    """Determinant for roots +-i s1, +-i s2, divided by s2 (s1 - s2)^2 to
    remove the trivial zeros at s2 = 0 and s1 = s2."""
    d = (-2.0 * (s1 + s2) ** 2 * math.cos((s1 - s2) * R)
         + 2.0 * (s1 - s2) ** 2 * math.cos((s1 + s2) * R) + 8.0 * s1 * s2)
    return d / (s2 * (s1 - s2) ** 2)


def complex_quadruple_det(alpha, beta, R):
    """beta^2 sinh^2(alpha R) - alpha^2 sin^2(beta R) scaled by exp(-2 alpha R).
    Strictly positive, so this regime carries no eigenvalue."""
    e = math.exp(-alpha * R)
    sh = 0.5 * (1.0 - e * e)
    return beta * beta * sh * sh - alpha * alpha * (math.sin(beta * R) * e) ** 2


# weighted-gradient problem, parameterised by s = lam2 = theta/R

def mu_of_s(s, A0, B0, K):
    s2 = s * s
    return (s2 * s2 + A0 * s2 + B0) / (s2 + K)


def lam1_sq_of_s(s, A0, B0, K):
    s2 = s * s
    return (A0 * K - B0 + K * s2) / (s2 + K)


def secular_p2_theta(theta, A0, B0, K, R):
    s = theta / R
    l1sq = lam1_sq_of_s(s, A0, B0, K)
    if l1sq <= 0:
        return float("nan")
    return universal_secular(math.sqrt(l1sq), s, R)


def secular_problem2(theta, m, n, R, d=2):
    from .modes import biquad
    A0, B0, K = biquad(d, m, n)
    return secular_p2_theta(theta, A0, B0, K, R)


def _four_imaginary_zero(A0, B0, K, R):
    """Smallest mu with roots +-i s1, +-i s2 making the determinant vanish."""
    if K <= 0 or A0 * K >= B0:
        return None
    hi = B0 / K
    lo = A0
    c = A0 - 2.0 * K
    q = c * c - A0 * A0 + 4.0 * B0
    if q >= 0:
        lo = max(lo, c + math.sqrt(q))
    if lo >= hi:
        return None

    def g(mu):
        A = A0 - mu
        B = B0 - mu * K
        disc = A * A - 4.0 * B
        if disc <= 0 or B <= 0 or A >= 0:
            return float("nan")
        sq = math.sqrt(disc)
        s1 = math.sqrt((sq - A) / 2.0)
        s2 = math.sqrt((-A - sq) / 2.0)
        return four_imaginary_det(s1, s2, R)

    smax = math.sqrt(max(-(A0 - hi), 1.0))
    npts = int(max(4000, 200 * R * smax))
    eps = (hi - lo) * 1e-9
    z = scan_zeros(g, lo + eps, hi - eps, npts, first_only=True)
    return z[0] if z else None


def first_zero_problem2(A0, B0, K, R):
    """Smallest eigenvalue of the weighted-gradient problem for one mode.

    Returns dict(mu, theta, regime, bracket) where theta = lam2 R in the
    complex-pair regime and None otherwise.
    """
    from .characteristic import COMPLEX_PAIR, FOUR_IMAGINARY
    mu4 = _four_imaginary_zero(A0, B0, K, R)
    if mu4 is not None:
        return dict(mu=mu4, theta=None, regime=FOUR_IMAGINARY, bracket=False)
    f = lambda th: secular_p2_theta(th, A0, B0, K, R)
    th0 = 0.0
    if A0 * K < B0:
        th0 = math.sqrt((B0 - A0 * K) / K) * R
    if th0 == 0.0:
        lo, hi = math.pi, 2.0 * math.pi
        if f(lo) < 0 < f(hi):
            # the bracket is always a sign change; check nothing lies before it
            z = scan_zeros(f, 0.0, math.pi, 512, first_only=True)
            if not z:
                th = _root(f, lo, hi)
                return dict(mu=mu_of_s(th / R, A0, B0, K), theta=th, regime=COMPLEX_PAIR, bracket=True)
    z = scan_zeros(f, th0, th0 + 8.0 * math.pi, 8192, first_only=True)
    if not z:
        raise BracketError("no sign change of the secular function found")
    th = z[0]
    return dict(mu=mu_of_s(th / R, A0, B0, K), theta=th, regime=COMPLEX_PAIR, bracket=False)


# d = 2, weighted-gradient problem, n = 0, m > 1

def alpha_beta_p2_n0(mu, m):
    r = math.sqrt(m**4 - mu)
    alpha = 0.5 * math.sqrt(2.0 * r + 2.0 * m * m - mu)
    beta = 0.5 * math.sqrt(max(2.0 * r - 2.0 * m * m + mu, 0.0))
    return alpha, beta


def secular_p2_d2_n0(x, m, R, subcase):
    """Residuals of the n = 0 sub-cases for 0 < mu <= 4(m^2 - 1).

    subcase "first"/"second": x = mu in (0, 4(m^2-1)), residual of
    alpha sin(beta R) = +-beta sinh(alpha R), scaled by 2 exp(-alpha R).
    Both residuals keep a strict sign since |alpha sin(beta R)| <= alpha beta R < beta sinh(alpha R).
    subcase "repeated": x ignored, determinant at mu = 4(m^2-1).
    """
    if m <= 1:
        raise ValueError("m must be > 1")
    if subcase == "repeated":
        y = 2.0 - m * m
        if abs(y) < 1e-14:
            return quadruple_root_det(R)
        return double_root_det(math.sqrt(abs(y)), R, imaginary=y < 0)
    if not 0.0 < x < 4.0 * (m * m - 1):
        raise ValueError("mu must lie in (0, 4(m^2-1))")
    alpha, beta = alpha_beta_p2_n0(x, m)
    e = math.exp(-alpha * R)
    left = 2.0 * alpha * e * math.sin(beta * R)
    right = beta * (1.0 - e * e)
    if subcase == "first":
        return left - right
    if subcase == "second":
        return left + right
    raise ValueError(f"unknown subcase {subcase!r}")


def first_zero_p2_d2_n0(m, R, npts=4000):
    """Scan both n = 0 complex-quadruple branches; returns None (no root)."""
    top = 4.0 * (m * m - 1)
    for sub in ("second", "first"):
        f = lambda mu: secular_p2_d2_n0(mu, m, R, sub)
        z = scan_zeros(f, 0.0, top * (1 - 1e-12), npts, first_only=True)
        if z:
            return z[0]
    return None


def alternative_bound_I(m, R):
    X2 = (math.pi / R) ** 2
    if R < 2.0 * math.pi / (m * m - 1):
        raise ValueError("requires R >= 2 pi/(m^2-1)")
    return (8 * m * m + 8 * X2) * X2 / ((m * m - 1) + 2 * X2 + math.sqrt((m * m - 1) ** 2 - 4 * X2))


def alternative_bound_II(m, R):
    X2 = (math.pi / R) ** 2
    if R < math.pi / (m * m - 1):
        raise ValueError("requires R >= pi/(m^2-1)")
    num = 4 * m * m - 3 + 2 * (2 * m * m + 1) * X2 + X2 * X2
    return num / (2 * m * m - 1 + X2 + 2.0 * math.sqrt((m * m - 1) ** 2 - X2))


def secular_d4_n0(theta):
    """2(1 - cos theta) - theta sin theta, positive on (0, 2 pi), zero at 2 pi."""
    return 4.0 * math.sin(theta / 2.0) ** 2 - theta * math.sin(theta)


def first_zero_d4_n0():
    return 2.0 * math.pi
