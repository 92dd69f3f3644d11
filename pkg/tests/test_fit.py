import math

import pytest

from clsaddle.errors import FitWindowError
from clsaddle.tools.fit import fit_linear


def test_exact_line():
    points = [(t / 10, 2 * t / 10 + 1) for t in range(11)]
    fit = fit_linear(points, (0.0, 1.0))
    assert fit.slope == pytest.approx(2.0)
    assert fit.intercept == pytest.approx(1.0)
    assert fit.residual_rms == pytest.approx(0.0, abs=1e-12)
    assert fit.n_points == 11


def test_constant_series():
    fit = fit_linear([(0.1, 3.0), (0.2, 3.0), (0.3, 3.0)], (0.0, 1.0))
    assert fit.slope == pytest.approx(0.0, abs=1e-12)
    assert fit.intercept == pytest.approx(3.0)


def test_window_selects_points():
    points = [(0.1, 0.0), (0.2, 1.0), (0.3, 2.0), (0.4, 10.0)]
    fit = fit_linear(points, (0.2, 0.3))
    assert fit.n_points == 2
    assert fit.slope == pytest.approx(10.0)
    assert fit.window == (0.2, 0.3)


def test_residual_rms():
    fit = fit_linear([(0.0, 0.0), (1.0, 1.0), (2.0, 0.0)], (0.0, 2.0))
    assert fit.slope == pytest.approx(0.0, abs=1e-12)
    assert fit.residual_rms == pytest.approx(math.sqrt(2) / 3)


def test_undefined_values_are_skipped():
    points = [(0.1, math.nan), (0.2, 1.0), (0.3, 2.0)]
    assert fit_linear(points, (0.0, 1.0)).n_points == 2


def test_too_few_points():
    with pytest.raises(FitWindowError) as info:
        fit_linear([(0.1, 1.0), (0.5, 2.0)], (0.0, 0.2))
    assert info.value.count == 1
