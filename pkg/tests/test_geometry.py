import math

import pytest

from annulus_eigen.geometry import (
    WEIGHTED_GRADIENT,
    WEIGHTED_L2,
    AnnulusGeometry,
    assumption_I,
    problem_kind,
    threshold_biharmonic,
    threshold_dim3_mode1,
    threshold_log_bound1,
    threshold_problem1,
    threshold_problem1_unique,
    threshold_radial_switch,
)


def test_conformal_class():
    g = AnnulusGeometry(2.0, 2.0 * math.e**3, 3)
    assert g.R == pytest.approx(3.0)
    assert AnnulusGeometry.from_R(7.5).R == pytest.approx(7.5)


@pytest.mark.parametrize("a,b,d", [(0.0, 1.0, 2), (2.0, 1.0, 2), (1.0, math.inf, 2), (1.0, 2.0, 1), (1.0, 2.0, 2.5)])
def test_invalid_geometry(a, b, d):
    with pytest.raises(ValueError):
        AnnulusGeometry(a, b, d)


def test_problem_kind():
    assert problem_kind("i") == WEIGHTED_L2
    assert problem_kind(2) == WEIGHTED_GRADIENT
    with pytest.raises(ValueError):
        problem_kind("III")


def test_thresholds():
    assert threshold_problem1(1) == pytest.approx(math.pi * math.sqrt(2))
    assert threshold_log_bound1(1, 1) == pytest.approx(2.5)
    assert threshold_problem1_unique(1) == pytest.approx(7.0766, abs=1e-3)
    assert threshold_radial_switch(4) == pytest.approx(math.pi * math.sqrt(5.0 / 3.0))
    assert threshold_radial_switch(3) == pytest.approx(math.pi * math.sqrt(6.0))
    assert threshold_dim3_mode1() ** 2 == pytest.approx(4 * math.pi**2 / 7)
    with pytest.raises(ValueError):
        threshold_radial_switch(2)


def test_threshold_problem1_unique_decreases():
    vals = [threshold_problem1_unique(m) for m in (1, 2, 3, 4)]
    assert all(x > y for x, y in zip(vals, vals[1:]))


def test_assumption_I():
    # m = 1: m^2 - 2 < 0 so every n qualifies
    assert assumption_I(1, 0)
    assert not assumption_I(3, 0)
    assert assumption_I(3, 3)


def test_threshold_biharmonic():
    assert threshold_biharmonic(0.75) >= 2.0
    with pytest.raises(ValueError):
        threshold_biharmonic(0.5)
