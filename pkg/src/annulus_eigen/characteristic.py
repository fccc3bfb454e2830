"""Closed-form characteristic roots and regime classification.

Every projected ODE reduces to Q(rho) = rho^4 - A rho^2 + B after the shift
r = shift + rho, so the roots come from the two values of rho^2.
"""

import math
from dataclasses import dataclass

from .modes import biquad_d, biquad_d2, shift_of

REAL_DISTINCT = "RealDistinct"
REPEATED = "Repeated"
COMPLEX_PAIR = "ComplexPair"
COMPLEX_QUADRUPLE = "ComplexQuadruple"   # shift +- alpha +- i beta
FOUR_IMAGINARY = "FourImaginary"         # shift +- i sigma1, shift +- i sigma2

_TIE = 1e-13


@dataclass(frozen=True)
class RootQuadruple:
    """Roots shift +- lam1 and shift +- lam2, read according to the regime.

    RealDistinct: real, lam1 > lam2 > 0.  Repeated: lam2 = 0, or lam1 = lam2
    when both surds coincide (sub = "double").  ComplexPair: shift +- lam1 and
    shift +- i lam2.  ComplexQuadruple: shift +- lam1 +- i lam2.
    FourImaginary: shift +- i lam1, shift +- i lam2.
    """

    regime: str
    shift: float
    lam1: float
    lam2: float
    sub: str = None

    def roots(self):
        s, l1, l2 = self.shift, self.lam1, self.lam2
        if self.regime == COMPLEX_PAIR:
            return [s + l1, s - l1, complex(s, l2), complex(s, -l2)]
        if self.regime == COMPLEX_QUADRUPLE:
            return [complex(s + l1, l2), complex(s - l1, -l2), complex(s + l1, -l2), complex(s - l1, l2)]
        if self.regime == FOUR_IMAGINARY:
            return [complex(s, l1), complex(s, -l1), complex(s, l2), complex(s, -l2)]
        if self.sub == "double-imaginary":
            return [complex(s, l1), complex(s, -l1), complex(s, l1), complex(s, -l1)]
        return [s + l1, s - l1, s + l2, s - l2]


def roots_biquadratic(shift, A, B):
    scale = A * A + abs(B) + 1.0
    disc = A * A - 4.0 * B
    if abs(B) <= _TIE * scale:
        if A >= 0:
            return RootQuadruple(REPEATED, shift, math.sqrt(A), 0.0)
        # rho^2 in {0, A}: a double root at the shift plus an imaginary pair
        return RootQuadruple(COMPLEX_PAIR, shift, 0.0, math.sqrt(-A), "zero-double")
    if B < 0:
        sq = math.sqrt(disc)
        return RootQuadruple(COMPLEX_PAIR, shift, math.sqrt((A + sq) / 2.0), math.sqrt((sq - A) / 2.0))
    if abs(disc) <= _TIE * scale:
        y = A / 2.0
        if abs(y) <= _TIE * scale:
            return RootQuadruple(REPEATED, shift, 0.0, 0.0, "quadruple")
        if y > 0:
            r = math.sqrt(y)
            return RootQuadruple(REPEATED, shift, r, r, "double")
        r = math.sqrt(-y)
        return RootQuadruple(REPEATED, shift, r, r, "double-imaginary")
    if disc > 0:
        sq = math.sqrt(disc)
        if A > 0:
            return RootQuadruple(REAL_DISTINCT, shift, math.sqrt((A + sq) / 2.0), math.sqrt((A - sq) / 2.0))
        return RootQuadruple(FOUR_IMAGINARY, shift, math.sqrt((sq - A) / 2.0), math.sqrt((-A - sq) / 2.0))
    # rho^2 = A/2 +- i sqrt(-disc)/2, |rho^2| = sqrt(B)
    mod = math.sqrt(B)
    alpha = math.sqrt(max((mod + A / 2.0) / 2.0, 0.0))
    beta = math.sqrt(max((mod - A / 2.0) / 2.0, 0.0))
    return RootQuadruple(COMPLEX_QUADRUPLE, shift, alpha, beta)


def roots_problem1_d2(m, n, lam):
    if lam < 0:
        raise ValueError("lambda must be >= 0")
    A0, B0, _ = biquad_d2(m, n)
    return roots_biquadratic(1.0, A0, B0 - lam)


def roots_problem1_gen(d, n, lam):
    if d < 2:
        raise ValueError("d must be >= 2")
    if lam < 0:
        raise ValueError("lambda must be >= 0")
    A0, B0, _ = biquad_d(d, n)
    return roots_biquadratic(shift_of(d), A0, B0 - lam)


def roots_problem2_d2(m, n, mu):
    if mu < 0:
        raise ValueError("mu must be >= 0")
    A0, B0, K = biquad_d2(m, n)
    return roots_biquadratic(1.0, A0 - mu, B0 - mu * K)


def roots_problem2_gen(d, n, mu):
    if d < 3:
        raise ValueError("d must be >= 3")
    if mu < 0:
        raise ValueError("mu must be >= 0")
    A0, B0, K = biquad_d(d, n)
    return roots_biquadratic(shift_of(d), A0 - mu, B0 - mu * K)


def complex_threshold_problem1_d2(m, n):
    return float((m * m - n * n) ** 2)


def complex_threshold_problem1_gen(d, n):
    return (2 * n + d) ** 2 * (2 * n + d - 4) ** 2 / 16.0


def complex_threshold_problem2(A0, B0, K):
    """mu above which Problem II has a complex pair (B0 - mu K < 0)."""
    return B0 / K if K > 0 else 0.0
