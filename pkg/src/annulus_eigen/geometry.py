"""Annulus geometry and the conformal-class thresholds behind the eigenvalue bounds."""

import math
from dataclasses import dataclass


@dataclass(frozen=True)
class AnnulusGeometry:
    """Annulus B_b minus closed B_a in dimension d."""

    a: float
    b: float
    d: int = 2

    def __post_init__(self):
        if not (self.a > 0 and self.b > self.a and math.isfinite(self.b)):
            raise ValueError(f"need 0 < a < b < inf, got a={self.a}, b={self.b}")
        if int(self.d) != self.d or self.d < 2:
            raise ValueError(f"dimension must be an integer >= 2, got {self.d}")

    @property
    def R(self):
        return conformal_class(self)

    @classmethod
    def from_R(cls, R, d=2, a=1.0):
        if R <= 0:
            raise ValueError("conformal class must be positive")
        return cls(a, a * math.exp(R), d)


WEIGHTED_L2 = "I"        # denominator int u^2/|x|^4
WEIGHTED_GRADIENT = "II"  # denominator int |grad u|^2/|x|^2


def problem_kind(tag):
    t = str(tag).strip().upper()
    if t in ("I", "1", "WEIGHTEDL2", "L2"):
        return WEIGHTED_L2
    if t in ("II", "2", "WEIGHTEDGRADIENT", "GRADIENT"):
        return WEIGHTED_GRADIENT
    raise ValueError(f"unknown problem kind {tag!r}")


def conformal_class(g):
    return math.log(g.b / g.a)


def threshold_problem1(m):
    """pi*sqrt(2)/sqrt(2m-1): sandwich bound region for lambda_m."""
    if m < 1:
        raise ValueError("m must be >= 1")
    return math.pi * math.sqrt(2.0) / math.sqrt(2.0 * m - 1.0)


def threshold_problem1_unique(m):
    """Conformal class above which the minimal mode is |n| = m (radical as printed)."""
    if int(m) != m or m < 1:
        raise ValueError("m must be an integer >= 1")
    p = 12.0 * m * m + 4.0 * m - 1.0
    q = 2.0 * m - 1.0
    return math.sqrt(math.pi / 2.0) / q * math.sqrt(p + math.sqrt(p * p + 60.0 * q * q))


def threshold_log_bound1(m, n):
    """5/sqrt(2m^2+2n^2): the first zero of psi lies in (pi, 2pi) above it."""
    return 5.0 / math.sqrt(2.0 * m * m + 2.0 * n * n)


def threshold_dim4():
    return 15.0 * math.sqrt(4.0 + 3.0 * math.pi * (math.pi + 1.0)) / 2.0


def threshold_radial_switch(d):
    """Conformal class above which the radial mode minimises the bilaplacian
    Rellich quotient (n=0 beats n=1); defined for d >= 3."""
    if d < 3:
        raise ValueError("defined for d >= 3")
    e = d - 1
    c = e * (e * e - 3)
    bp = 3 * d * d - 16 * d + 28
    return math.pi * math.sqrt((bp + math.sqrt(bp * bp + 120.0 * c)) / (2.0 * c))


def assumption_I(m, n):
    """True when n^2 exceeds m^2(m^2-2)/(2m^2+1+sqrt(5m^4+2m^2+1))."""
    return n * n > m * m * (m * m - 2) / (2 * m * m + 1 + math.sqrt(5 * m**4 + 2 * m * m + 1))


def threshold_problem2_assumptionI(m, n):
    if m < 1:
        raise ValueError("m must be >= 1")
    if not assumption_I(m, n):
        if m >= math.sqrt(2.0):
            return 0.0
        raise ValueError("parameters outside both assumption regions")
    P = n**4 + 2 * (2 * m * m + 1) * n * n - m * m * (m * m - 2)
    if P <= 0:
        raise ValueError("denominator of the radical is not positive")
    k = 50.0 + math.pi**2
    n1 = n * n + 1
    inner = 25.0 * n1 + math.sqrt(525.0 * n1 * n1 + 16.0 * math.pi**2 * k * P)
    return math.pi * math.sqrt(inner / (2.0 * k * P))


def threshold_dim3_mode1():
    """d=3 Problem II: mode 1 beats mode 0 once 4pi^2/R^2 <= 7."""
    return 2.0 * math.pi / math.sqrt(7.0)


def threshold_biharmonic(beta):
    """Five-term conformal-class hypothesis of the biharmonic interpolation estimate."""
    if not 0.5 < beta < 1.0:
        raise ValueError("beta must lie in (1/2, 1)")
    return max(
        2.0,
        math.log(4.0 * beta) / (2.0 * beta - 1.0),
        math.log(2.0 / (2.0 - math.sqrt(3.0))) / (4.0 * beta),
        math.log(1.0 + 8.0 * beta * (1.0 - beta) / (2.0 * beta - 1.0) ** 2) / (4.0 * (1.0 - beta)),
        math.log(8.0 * beta * (beta + 1.0)) / (4.0 * beta),
    )
