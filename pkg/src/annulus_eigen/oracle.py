"""Finite-difference Rayleigh-quotient solver for the mode problems.

Works on the transformed unknown Z(t), t in [0, R], where the numerator is
int (Z'' + p Z' + q Z)^2 and the denominator is int Z^2 (weighted L2) or
int (Z' - s Z)^2 + nu Z^2 (weighted gradient).  Clamping Y = Y' = 0 is the
same as Z = Z' = 0 because Z = exp(c t) Y.
"""

import math
from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp
from scipy.sparse.linalg import eigsh

from .geometry import WEIGHTED_GRADIENT, WEIGHTED_L2, problem_kind


@dataclass(frozen=True)
class TransformedForm:
    problem: str
    p: float
    q: float
    den_shift: float = 0.0
    den_nu: float = 0.0

    @property
    def K(self):
        # int (Z' - s Z)^2 = int Z'^2 + s^2 Z^2 for clamped Z
        return self.den_shift ** 2 + self.den_nu


def transformed_forms(problem, m_or_d, n, d=2):
    """Coefficients of the transformed forms.

    d = 2: numerator Z'' + 2m Z' + (m^2 - n^2) Z, Z = exp(-t) Y, gradient
    denominator (Z' + Z)^2 + n^2 Z^2.
    d >= 3 (m_or_d is d): numerator Z'' + 2 Z' + c Z with
    c = (d-4)^2/4 - (d-2)(d-4)/2 - n(n+d-2), Z = exp((d-4)t/2) Y,
    gradient denominator (Z' - (d-4)/2 Z)^2 + n(n+d-2) Z^2.
    """
    kind = problem_kind(problem)
    if d == 2:
        m = float(m_or_d)
        p, q, s, nu = 2.0 * m, m * m - n * n, -1.0, float(n * n)
    else:
        dd = int(m_or_d)
        nu = float(n * (n + dd - 2))
        p = 2.0
        q = (dd - 4) ** 2 / 4.0 - (dd - 2) * (dd - 4) / 2.0 - nu
        s = (dd - 4) / 2.0
    if kind == WEIGHTED_L2:
        return TransformedForm(kind, p, q)
    return TransformedForm(kind, p, q, s, nu)


@dataclass
class DiscreteForm:
    N: int
    h: float
    M: sp.csr_matrix   # rows: Z'' + p Z' + q Z at nodes 0..N
    A: sp.csc_matrix   # M^T W M
    B: sp.csc_matrix


def discretize(form, R, N):
    """Central differences on N intervals; unknowns Z_1..Z_{N-1}.

    Boundary values vanish and the ghost values Z_{-1} = Z_1, Z_{N+1} = Z_{N-1}
    encode Z' = 0, so the operator is evaluated at every node 0..N and
    integrated with the trapezoid rule.
    """
    if N < 50:
        raise ValueError("need N >= 50")
    h = R / N
    n_in = N - 1
    rows, cols, vals = [], [], []

    def put(i, j, v):
        if 1 <= j <= N - 1:
            rows.append(i)
            cols.append(j - 1)
            vals.append(v)

    c2, c1 = 1.0 / h**2, form.p / (2.0 * h)
    for i in range(N + 1):
        if i == 0:
            put(0, 1, 2.0 * c2)
        elif i == N:
            put(N, N - 1, 2.0 * c2)
        else:
            put(i, i - 1, c2 - c1)
            put(i, i, -2.0 * c2 + form.q)
            put(i, i + 1, c2 + c1)
    M = sp.csr_matrix((vals, (rows, cols)), shape=(N + 1, n_in))
    w = np.full(N + 1, h)
    w[0] = w[-1] = h / 2
    A = (M.T @ sp.diags(w) @ M).tocsc()
    Id = sp.identity(n_in, format="csc")
    if form.problem == WEIGHTED_L2:
        B = h * Id
    else:
        # first differences on the N cells, Z' squared at midpoints
        G = sp.diags([np.ones(N), -np.ones(N)], [-1, 0], shape=(N, n_in)) / h
        B = (h * (G.T @ G) + form.K * h * Id).tocsc()
    return DiscreteForm(N, h, M, A, B)


def smallest_eigs(df, k=1):
    """k smallest generalized eigenvalues by shift-invert Lanczos about 0."""
    vals, vecs = eigsh(df.A, k=k, M=df.B, sigma=0.0, which="LM", tol=0)
    order = np.argsort(vals)
    return vals[order], vecs[:, order]


def smallest_eig(df):
    return float(smallest_eigs(df, 1)[0][0])


def rayleigh_quotient(df, z):
    z = np.asarray(z, dtype=float)
    return float(z @ (df.A @ z)) / float(z @ (df.B @ z))


def oracle_eigenvalue(problem, m_or_d, n, R, N=2000, d=2, k=1):
    form = transformed_forms(problem, m_or_d, n, d=d)
    df = discretize(form, R, N)
    if k == 1:
        return smallest_eig(df)
    return smallest_eigs(df, k)[0]


def convergence_study(problem, m_or_d, n, R, Ns, d=2, exact=None):
    """Eigenvalue at each N; with exact given also errors and observed orders."""
    vals = [oracle_eigenvalue(problem, m_or_d, n, R, N, d=d) for N in Ns]
    out = {"N": list(Ns), "value": vals}
    if exact is not None:
        err = [abs(v - exact) for v in vals]
        out["error"] = err
        out["order"] = [math.log2(err[i] / err[i + 1]) for i in range(len(err) - 1)]
    return out
