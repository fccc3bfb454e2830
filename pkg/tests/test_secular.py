import math

import numpy as np
import pytest

from annulus_eigen import secular as sec
from annulus_eigen.modes import biquad_d, biquad_d2


def test_stabilised_matches_naive():
    for m, n, R, th in [(1, 1, 3.0, 3.5), (2, 0, 2.0, 4.0), (1, 0, 5.0, 3.3), (1, 1, 3.0, 6.0)]:
        # the two differ by a positive factor, so signs agree
        assert np.sign(sec.psi_problem1_naive(th, m, n, R)) == np.sign(sec.psi_problem1(th, m, n, R))
    # no overflow at large conformal class
    assert math.isfinite(sec.psi_problem1(3.2, 3, 4, 200.0))


def test_first_zero_in_bracket():
    th = sec.first_zero_problem1(1, 1, 100.0)
    assert math.pi < th < 2 * math.pi
    assert abs(sec.psi_problem1(th, 1, 1, 100.0)) < 1e-10
    assert th == pytest.approx(3.1733, abs=1e-4)


def test_first_zero_requires_hypothesis():
    with pytest.raises(sec.BracketError):
        sec.first_zero_problem1(1, 0, 1.0)
    th = sec.first_zero_problem1(1, 0, 1.0, force=True)
    assert th > 0


def test_zeros_increasing():
    z = sec.zeros_problem1(1, 1, 10.0, 3)
    assert len(z) >= 3 and all(x < y for x, y in zip(z, z[1:]))


def test_det_signs():
    rng = np.random.default_rng(1)
    for _ in range(200):
        x = 1 + rng.exponential(2.0)
        l2 = rng.uniform(0.01, 3)
        l1 = l2 + rng.uniform(0.01, 3)
        assert sec.det_case1(x, l1, l2) < 0
        assert sec.det_case2(rng.exponential(2.0) + 1e-3, math.sqrt(2) + rng.exponential()) < 0


def test_repeated_dets_never_zero():
    for rho in (0.1, 1.0, 3.0):
        assert sec.double_root_det(rho, 2.0) < 0
        assert sec.double_root_det(rho, 2.0, imaginary=True) < 0
    assert sec.quadruple_root_det(2.0) < 0
    assert sec.complex_quadruple_det(0.7, 0.9, 4.0) > 0


def test_problem2_zero_solves_secular():
    A0, B0, K = biquad_d2(1, 1)
    out = sec.first_zero_problem2(A0, B0, K, 10.0)
    assert out["bracket"]
    assert abs(sec.secular_p2_theta(out["theta"], A0, B0, K, 10.0)) < 1e-9
    assert out["mu"] == pytest.approx(sec.mu_of_s(out["theta"] / 10.0, A0, B0, K))


def test_four_imaginary_branch():
    # m = 2, n = 0 at R = 10: the minimum comes from roots +-i s1, +-i s2
    A0, B0, K = biquad_d2(2, 0)
    out = sec.first_zero_problem2(A0, B0, K, 10.0)
    assert out["regime"] == "FourImaginary"
    assert out["mu"] == pytest.approx(12.2286, abs=1e-3)


def test_n0_subcases_have_no_root():
    for m in (1.5, 2.0, 3.0):
        assert sec.first_zero_p2_d2_n0(m, 10.0) is None
    assert sec.secular_p2_d2_n0(None, 2.0, 3.0, "repeated") != 0


def test_d4_n0():
    th = np.linspace(1e-3, 2 * math.pi - 1e-3, 500)
    assert all(sec.secular_d4_n0(t) > 0 for t in th)
    assert abs(sec.secular_d4_n0(2 * math.pi)) < 1e-12


def test_general_biquad_zero():
    A0 = biquad_d(5, 0)[0]
    th, proven = sec.first_zero_biquad(A0, 200.0)
    assert proven and math.pi < th < 2 * math.pi


def test_alternative_bounds():
    assert sec.alternative_bound_I(2, 10.0) > 0
    with pytest.raises(ValueError):
        sec.alternative_bound_I(2, 1.0)
    assert sec.alternative_bound_II(3, 10.0) > 0


def test_det_signs_near_degenerate_point():
    # naive evaluation rounds to >= 0 here
    assert sec.det_case1(1.0000635712867265, 4.578734066223347, 2.0842138029998045) < 0
    assert sec.det_case1(1.0 + 1e-9, 0.5, 0.25) < 0
    assert sec.det_case2(1e-9, 1.5) < 0
