"""Mode projection of the fourth-order operators in the variable t = log r.

Each mode gives a constant-coefficient quartic ODE

    Y'''' + c3 Y''' + c2 Y'' + c1 Y' + c0 Y = lam * Y

(lam = 0 for the weighted-gradient problem, where mu sits inside the
coefficients).  After the shift Y = exp(shift*t) Z the operator becomes the
biquadratic Z'''' - A Z'' + B Z, which is what the root formulas use.
"""

from dataclasses import dataclass

from .geometry import WEIGHTED_GRADIENT, WEIGHTED_L2


@dataclass(frozen=True)
class ProjectedODE:
    c3: float
    c2: float
    c1: float
    c0: float
    kind: str
    m: float = None
    d: int = 2
    n: int = 0
    mu: float = None
    c4: float = 1.0

    def coeffs(self, lam=0.0):
        """Polynomial coefficients, highest degree first, with lam moved left."""
        return [self.c4, self.c3, self.c2, self.c1, self.c0 - lam]

    def char_poly(self, r, lam=0.0):
        return r**4 + self.c3 * r**3 + self.c2 * r**2 + self.c1 * r + self.c0 - lam

    @property
    def offset(self):
        # the constant the eigenvalue is measured against
        return self.c0


def _nu(d, n):
    return n * (n + d - 2)


def project_problem1_d2(m, n):
    if m < 1:
        raise ValueError("m must be >= 1")
    s = m * m + n * n
    off = (m * m - n * n - 1) ** 2 - 4 * n * n
    return ProjectedODE(-4.0, -2.0 * (s - 3), 4.0 * (s - 1), float(off), WEIGHTED_L2, m=m, d=2, n=n)


def project_bilaplacian_d(d, n):
    if d < 2 or n < 0:
        raise ValueError("need d >= 2 and n >= 0")
    v = _nu(d, n)
    c3 = 2.0 * (d - 4)
    c2 = (d - 1) * (d - 9) + 11 - 2 * v
    c1 = -2.0 * ((d - 1) * (d - 5) + 3 + (d - 4) * v)
    c0 = v * v + 2 * (d - 4) * v
    return ProjectedODE(c3, float(c2), c1, float(c0), WEIGHTED_L2, m=1, d=d, n=n)


def project_problem2_d2(m, n, mu):
    if m < 1 or mu < 0:
        raise ValueError("need m >= 1 and mu >= 0")
    s = m * m + n * n
    c2 = -(2.0 * (s - 3) - mu)
    c1 = 4.0 * (s - 1) - 2.0 * mu
    c0 = (m * m - n * n - 1) ** 2 - (4.0 + mu) * n * n
    return ProjectedODE(-4.0, c2, c1, c0, WEIGHTED_GRADIENT, m=m, d=2, n=n, mu=mu)


def project_problem2_d(d, n, mu):
    if d < 3 or n < 0 or mu < 0:
        raise ValueError("need d >= 3, n >= 0, mu >= 0")
    v = _nu(d, n)
    c3 = 2.0 * (d - 4)
    c2 = d * d - 10 * d + 20 - 2 * v + mu
    c1 = -(d - 4) * (2.0 * (d - 2) + 2 * v - mu)
    c0 = v * v + (2.0 * (d - 4) - mu) * v
    return ProjectedODE(c3, c2, c1, c0, WEIGHTED_GRADIENT, m=1, d=d, n=n, mu=mu)


# Biquadratic data.  Problem I: Z'''' - A Z'' + B Z = lam Z.
# Problem II: Z'''' - A0 Z'' + B0 Z = mu (-Z'' + K Z).

def shift_of(d):
    return 1.0 if d == 2 else -(d - 4) / 2.0


def biquad_d2(m, n):
    """(A0, B0, K) for the d = 2 operator L_m^* L_m on mode n."""
    return 2.0 * (m * m + n * n), float((m * m - n * n) ** 2), float(n * n + 1)


def biquad_d(d, n):
    """(A0, B0, K) for the bilaplacian in dimension d on spherical mode n."""
    v = _nu(d, n)
    A0 = 0.5 * ((d - 2) ** 2 + 4) + 2.0 * v
    B0 = (d * (d - 4) / 4.0 + v) ** 2
    K = (d - 4) ** 2 / 4.0 + v
    return A0, B0, K


def biquad(problem_d, m, n):
    """Dispatch: d = 2 uses the weight index m, d >= 3 the bilaplacian."""
    if problem_d == 2:
        return biquad_d2(m, n)
    return biquad_d(problem_d, n)
