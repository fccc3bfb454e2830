"""Biharmonic functions on planar annuli and their weighted integrals.

psi(z) = alpha log|z| + Re(sum a_n z^n) + |z|^2 (beta log|z| + Re(sum b_n z^n)).

On the circle of radius r the frequency-k part of psi is Re(C_k(r) e^{ik theta})
with C_k = a_k r^k + conj(a_{-k}) r^{-k} + r^2 (b_k r^k + conj(b_{-k}) r^{-k})
for k >= 1, and C_0 = alpha log r + Re a_0 + r^2 (beta log r + Re b_0).
Every integral below is a finite sum of c r^p log^j r terms, integrated in
closed form.  The functions in `quadrature_norms` recompute the same
integrals from pointwise Cartesian derivatives as an independent check.
"""

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import quad_vec

from .geometry import AnnulusGeometry, threshold_biharmonic

OUTER = "outer"   # weight (|x|/b)^s
INNER = "inner"   # weight (a/|x|)^s


@dataclass(frozen=True)
class BiharmonicFun:
    alpha: float = 0.0
    beta: float = 0.0
    a_coeffs: dict = field(default_factory=dict)
    b_coeffs: dict = field(default_factory=dict)

    @property
    def n_max(self):
        ks = [abs(k) for k in list(self.a_coeffs) + list(self.b_coeffs)]
        return max(ks, default=0)

    def rescale(self, s):
        """Coefficients of psi(z/s)."""
        ls = math.log(s)
        a = {n: complex(c) * s ** (-n) for n, c in self.a_coeffs.items()}
        a[0] = a.get(0, 0) - self.alpha * ls
        b = {n: complex(c) * s ** (-2 - n) for n, c in self.b_coeffs.items()}
        b[0] = b.get(0, 0) - self.beta * ls / s**2
        return BiharmonicFun(self.alpha, self.beta / s**2, a, b)


def random_biharmonic(rng, n_max, g, include_logs=True):
    """Coefficients scaled so every frequency is of unit size at sqrt(ab)."""
    r0 = math.sqrt(g.a * g.b)
    cn = lambda: complex(rng.standard_normal(), rng.standard_normal())
    a = {n: cn() * r0 ** (-n) for n in range(-n_max, n_max + 1)}
    b = {n: cn() * r0 ** (-n - 2) for n in range(-n_max, n_max + 1)}
    al = rng.standard_normal() if include_logs else 0.0
    be = rng.standard_normal() / r0**2 if include_logs else 0.0
    return BiharmonicFun(al, be, a, b)


# pointwise evaluation

def _parts(psi, z):
    """Values and complex derivatives of h0 = sum a_n z^n and h1 = sum b_n z^n."""
    z = np.asarray(z, dtype=complex)
    N = psi.n_max + 2
    pw = {0: np.ones_like(z)}
    zi = 1.0 / z
    for n in range(1, N + 1):
        pw[n] = pw[n - 1] * z
        pw[-n] = pw[-n + 1] * zi
    h = []
    for coeffs in (psi.a_coeffs, psi.b_coeffs):
        v = np.zeros_like(z)
        d1 = np.zeros_like(z)
        d2 = np.zeros_like(z)
        for n, c in coeffs.items():
            c = complex(c)
            v = v + c * pw[n]
            d1 = d1 + (c * n) * pw[n - 1]
            d2 = d2 + (c * n * (n - 1)) * pw[n - 2]
        h += [v, d1, d2]
    return h


def eval(psi, z):
    z = np.asarray(z, dtype=complex)
    h0, _, _, h1, _, _ = _parts(psi, z)
    lr = np.log(np.abs(z))
    return psi.alpha * lr + h0.real + np.abs(z) ** 2 * (psi.beta * lr + h1.real)


def laplacian(psi, z):
    """Delta psi = 4 beta (log r + 1) + 4 Re(sum (n+1) b_n z^n)."""
    z = np.asarray(z, dtype=complex)
    s = np.zeros(z.shape, dtype=complex)
    for n, c in psi.b_coeffs.items():
        s = s + (n + 1) * complex(c) * z**n
    return 4.0 * psi.beta * (np.log(np.abs(z)) + 1.0) + 4.0 * s.real


def derivatives(psi, x, y):
    """psi, gradient (2,) and Hessian (2,2) at arrays x, y, in Cartesian form."""
    z = x + 1j * y
    h0, d0, dd0, h1, d1, dd1 = _parts(psi, z)
    rho = x * x + y * y
    lr = 0.5 * np.log(rho)
    # log|z|
    Lg = np.array([x / rho, y / rho])
    LH = np.array([[(y * y - x * x), -2 * x * y], [-2 * x * y, (x * x - y * y)]]) / rho**2
    # Re h: grad (Re h', -Im h'), Hessian [[Re h'', -Im h''], [-Im h'', -Re h'']]
    g0 = np.array([d0.real, -d0.imag])
    H0 = np.array([[dd0.real, -dd0.imag], [-dd0.imag, -dd0.real]])
    q = psi.beta * lr + h1.real
    gq = psi.beta * Lg + np.array([d1.real, -d1.imag])
    Hq = psi.beta * LH + np.array([[dd1.real, -dd1.imag], [-dd1.imag, -dd1.real]])
    grho = np.array([2 * x, 2 * y])
    val = psi.alpha * lr + h0.real + rho * q
    grad = psi.alpha * Lg + g0 + q * grho + rho * gq
    eye = np.array([[1.0, 0.0], [0.0, 1.0]])
    H = (psi.alpha * LH + H0 + 2.0 * q * eye[:, :, None] * np.ones_like(x)
         + np.einsum("i...,j...->ij...", grho, gq) + np.einsum("i...,j...->ij...", gq, grho) + rho * Hq)
    return val, grad, H


# closed forms

def _lp_add(P, p, j, c):
    if c != 0:
        P[(p, j)] = P.get((p, j), 0) + c


def _mode_polys(psi):
    """dict k -> log-polynomial {(p, j): coeff} of C_k."""
    ks = set(abs(k) for k in list(psi.a_coeffs) + list(psi.b_coeffs)) | {0}
    out = {}
    for k in sorted(ks):
        P = {}
        if k == 0:
            _lp_add(P, 0, 1, psi.alpha)
            _lp_add(P, 0, 0, complex(psi.a_coeffs.get(0, 0)).real)
            _lp_add(P, 2, 1, psi.beta)
            _lp_add(P, 2, 0, complex(psi.b_coeffs.get(0, 0)).real)
        else:
            _lp_add(P, k, 0, complex(psi.a_coeffs.get(k, 0)))
            _lp_add(P, -k, 0, complex(psi.a_coeffs.get(-k, 0)).conjugate())
            _lp_add(P, k + 2, 0, complex(psi.b_coeffs.get(k, 0)))
            _lp_add(P, 2 - k, 0, complex(psi.b_coeffs.get(-k, 0)).conjugate())
        out[k] = P
    return out


def _d(P):
    Q = {}
    for (p, j), c in P.items():
        _lp_add(Q, p - 1, j, c * p)
        if j:
            _lp_add(Q, p - 1, j - 1, c * j)
    return Q


def _shift(P, q, fac=1.0):
    return {(p + q, j): c * fac for (p, j), c in P.items()}


def _sum(*Ps):
    Q = {}
    for P in Ps:
        for key, c in P.items():
            _lp_add(Q, key[0], key[1], c)
    return Q


def _abs2(P):
    Q = {}
    for (p1, j1), c1 in P.items():
        for (p2, j2), c2 in P.items():
            _lp_add(Q, p1 + p2, j1 + j2, c1 * complex(c2).conjugate())
    return Q


def _int_tj_exp(eps, j, t0, t1):
    """int_{t0}^{t1} t^j exp(eps t) dt, stable for small eps."""
    T = max(abs(t0), abs(t1))
    if abs(eps) * T < 1e-2 and abs(eps) * abs(t1 - t0) < 1e-2:
        s, term = 0.0, 1.0
        for i in range(40):
            s += term * (t1 ** (j + i + 1) - t0 ** (j + i + 1)) / (j + i + 1)
            term *= eps / (i + 1)
            if abs(term) * T ** (j + i + 2) < 1e-18 * abs(s):
                break
        return s
    if j == 0:
        return math.exp(eps * t0) * math.expm1(eps * (t1 - t0)) / eps
    F = lambda t: math.exp(eps * t) * sum(
        (-1) ** i * math.factorial(j) / math.factorial(j - i) * t ** (j - i) / eps ** (i + 1) for i in range(j + 1))
    return F(t1) - F(t0)


def _integrate(P, g, w_exp, w_fac):
    """2 pi int_a^b sum c r^p log^j r * w_fac r^w_exp * r dr, real part."""
    t0, t1 = math.log(g.a), math.log(g.b)
    tot = 0.0
    for (p, j), c in P.items():
        cr = complex(c).real
        if cr == 0.0:
            continue
        tot += cr * _int_tj_exp(p + w_exp + 2.0, j, t0, t1)
    return 2.0 * math.pi * w_fac * tot


def _weight(g, s, side):
    if side == OUTER:
        return s, g.b ** (-s)
    if side == INNER:
        return -s, g.a ** s
    if side is None:
        return 0.0, 1.0
    raise ValueError(f"side must be {OUTER!r} or {INNER!r}")


def _integrands(psi):
    """Angular averages (times 1/(2 pi)) as log-polynomials in r."""
    polys = _mode_polys(psi)
    l2, grad, lap, hess = {}, {}, {}, {}
    for k, C in polys.items():
        h = 1.0 if k == 0 else 0.5
        C1, C2 = _d(C), _d(_d(C))
        L = _sum(C2, _shift(C1, -1), _shift(C, -2, -k * k))
        l2 = _sum(l2, _shift(_abs2(C), 0, h))
        grad = _sum(grad, _shift(_abs2(C1), 0, h), _shift(_abs2(C), -2, h * k * k))
        lap = _sum(lap, _shift(_abs2(L), 0, h))
        Cr = _d(_shift(C, -1))
        Hth = _sum(_shift(C1, -1), _shift(C, -2, -k * k))
        hess = _sum(hess, _shift(_abs2(C2), 0, h), _shift(_abs2(Cr), 0, 2 * k * k * h),
                    _shift(_abs2(Hth), 0, h))
    return l2, grad, lap, hess


def weighted_norms(psi, g, gamma, side=OUTER):
    """Six integrals over the annulus g.

    grad_w: int |grad psi|^2/|x|^2 w^(2 gamma), l2_w: int psi^2/|x|^4 w^(4 gamma)
    with w = |x|/b (outer) or a/|x| (inner); lap: int (Delta psi)^2;
    dzz: int 4|psi_zz|^2; dzzbar: int 4|psi_{z zbar}|^2; hess: int |D^2 psi|^2.
    """
    if not 0.0 < gamma < 1.0:
        raise ValueError("gamma must lie in (0, 1)")
    l2, grad, lap, hess = _integrands(psi)
    e2, f2 = _weight(g, 2.0 * gamma, side)
    e4, f4 = _weight(g, 4.0 * gamma, side)
    L = _integrate(lap, g, 0.0, 1.0)
    Hs = _integrate(hess, g, 0.0, 1.0)
    return {
        "grad_w": _integrate(grad, g, e2 - 2.0, f2),
        "l2_w": _integrate(l2, g, e4 - 4.0, f4),
        "lap": L,
        "dzz": (2.0 * Hs - L) / 4.0,
        "dzzbar": L / 4.0,
        "hess": Hs,
    }


def quadrature_norms(psi, g, gamma, side=OUTER, n_theta=None, epsrel=1e-12):
    """Same six integrals by trapezoid in theta and adaptive quadrature in log r."""
    if n_theta is None:
        n_theta = 4 * psi.n_max + 16
    th = 2.0 * math.pi * np.arange(n_theta) / n_theta
    c, s = np.cos(th), np.sin(th)
    e2, f2 = _weight(g, 2.0 * gamma, side)
    e4, f4 = _weight(g, 4.0 * gamma, side)

    def averages(t):
        r = math.exp(t)
        v, gr, H = derivatives(psi, r * c, r * s)
        lap = H[0, 0] + H[1, 1]
        return np.array([
            np.mean((gr ** 2).sum(axis=0)) * r ** (e2 - 2.0) * f2,
            np.mean(v * v) * r ** (e4 - 4.0) * f4,
            np.mean(lap * lap),
            np.mean((H ** 2).sum(axis=(0, 1))),
        ]) * r * r

    t0, t1 = math.log(g.a), math.log(g.b)
    vals = quad_vec(averages, t0, t1, epsrel=epsrel, epsabs=0.0, norm="max", limit=4000)[0]
    # norm="max" controls the largest entry only; refine each entry on its own scale
    vals = np.array([quad_vec(lambda t, i=i: averages(t)[i], t0, t1, epsrel=epsrel, epsabs=0.0,
                              limit=4000)[0] if vals[i] != 0 and abs(vals[i]) < 1e-6 * np.abs(vals).max()
                     else vals[i] for i in range(4)])
    out = dict(zip(("grad_w", "l2_w", "lap", "hess"), 2.0 * math.pi * vals))
    out["dzz"] = (2.0 * out["hess"] - out["lap"]) / 4.0
    out["dzzbar"] = out["lap"] / 4.0
    return out


def check_interpolation(psi, g, beta, gamma, force=True):
    """Both sides of the interpolation estimate and the effective constant

        Gamma_eff = lhs * gamma (1 - gamma) (1 - 2 (a/b)^(4 beta)) / (L2 + Hess)."""
    try:
        hyp = g.R >= threshold_biharmonic(beta)
    except ValueError:
        hyp = False
    if not hyp and not force:
        raise ValueError("conformal class hypothesis not met")
    if not 0.0 < gamma < 1.0:
        raise ValueError("gamma must lie in (0, 1)")
    no = weighted_norms(psi, g, gamma, OUTER)
    ni = weighted_norms(psi, g, gamma, INNER)
    lo = weighted_norms(psi, g, beta, OUTER)
    li = weighted_norms(psi, g, beta, INNER)
    lhs = no["grad_w"] + ni["grad_w"]
    denom = 1.0 - 2.0 * (g.a / g.b) ** (4.0 * beta)
    fac = 1.0 / (gamma * (1.0 - gamma) * denom)
    base = lo["l2_w"] + li["l2_w"] + no["hess"]
    return {
        "lhs": lhs,
        "rhs_per_unit_gamma": fac * base,
        "ratio": lhs / (fac * base),
        "gamma_effective": lhs / (fac * base),
        "hypothesis": hyp,
    }


def parse_coeffs(text):
    """Parse lines `alpha v`, `beta v`, `a n re im`, `b n re im` (# comments)."""
    al = be = 0.0
    a, b = {}, {}
    for ln, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        tok = line.split()
        key = tok[0].lower()
        try:
            if key == "alpha" and len(tok) == 2:
                al = float(tok[1])
            elif key == "beta" and len(tok) == 2:
                be = float(tok[1])
            elif key in ("a", "b") and len(tok) == 4:
                n = int(tok[1])
                v = complex(float(tok[2]), float(tok[3]))
                d = a if key == "a" else b
                d[n] = d.get(n, 0) + v
            else:
                raise ValueError
        except ValueError:
            raise ValueError(f"line {ln}: cannot parse {line!r}") from None
    return BiharmonicFun(al, be, a, b)


def load_coeffs(path):
    with open(path) as fh:
        return parse_coeffs(fh.read())
