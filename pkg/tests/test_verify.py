import math

import numpy as np
import pytest

from annulus_eigen import verify
from annulus_eigen.geometry import AnnulusGeometry


def test_test_function_clamped():
    f = verify.random_test_function(np.random.default_rng(0), 1, 0.0, 3.0)
    assert f.boundary_residual() < 1e-12


def test_integrate_polynomial():
    v = verify.integrate(lambda t: np.array([t**3, np.exp(t)]), 0.0, 2.0)
    assert v[0] == pytest.approx(4.0, rel=1e-12)
    assert v[1] == pytest.approx(math.e**2 - 1, rel=1e-12)


def test_mode_forms_radial_ipp():
    # clamped: int Y''^2 >= 0 and the gradient form equals int Y'^2 for n = 0
    f = verify.TestFunction(0, np.array([1.0]), 0.0, 2.0)
    q = verify.mode_forms(f, 4, 0.0, 2.0)
    h = verify.hardy_forms(f, 0.0, 0.0, 2.0)
    assert q["grad"] == pytest.approx(h[1], rel=1e-10)
    assert q["l2"] == pytest.approx(h[0], rel=1e-10)


def test_registry_names():
    assert len(verify.REGISTRY) == 10


@pytest.mark.parametrize("name", ["corollary-A", "corollary-B", "theorem-C-I", "theorem-C-II",
                                  "weighted-poincare-d2", "ipp-lemma", "ipp-lemma-general"])
def test_no_violations(name):
    rep = verify.check_inequality(name, AnnulusGeometry.from_R(10.0), trials=100)
    assert rep["hypothesis"] and rep["violations"] == 0


def test_hypothesis_enforced():
    with pytest.raises(ValueError):
        verify.check_inequality("corollary-A", AnnulusGeometry.from_R(1.0), trials=5)
    rep = verify.check_inequality("corollary-A", AnnulusGeometry.from_R(1.0), trials=5, force=True)
    assert rep["flag"]


def test_effective_constant_reported():
    rep = verify.check_inequality("interp-weighted", AnnulusGeometry.from_R(10.0), trials=20)
    assert rep["effective_constant"] > 0


def test_deterministic_seed():
    g = AnnulusGeometry.from_R(10.0)
    a = verify.check_inequality("corollary-A", g, trials=20, seed=7)
    b = verify.check_inequality("corollary-A", g, trials=20, seed=7, threads=4)
    assert a["min_ratio"] == b["min_ratio"]


def test_tightness_corollary_A():
    t = verify.tightness("corollary-A", 20.0)
    assert t["ratio"] == pytest.approx(t["expected"], abs=1e-2)
