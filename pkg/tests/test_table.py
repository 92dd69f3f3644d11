import io
import math

import numpy as np
import pytest

from clsaddle.core.observables import DecoherenceObservables, DensityGrid
from clsaddle.errors import ConfigError, InvalidConfigValueError
from clsaddle.tools import table
from clsaddle.tools.fit import FitResult
from clsaddle.tools.sweep import SweepRow


def _row(axis_name, axis_value, t, gamma_tilde=0.5):
    obs = DecoherenceObservables(
        t=t, j=1.0, k=0.25, gamma_diag=1.5, gamma_offdiag=2.5,
        gamma_tilde=gamma_tilde
    )
    return SweepRow(axis_name, axis_value, obs, 16.0 * t)


def test_format_float():
    assert table.format_float(1 / 3) == "0.333333333333"
    assert table.format_float(math.nan) == "nan"
    assert table.format_float(2) == "2"


def test_observables_header_and_rows():
    stream = io.StringIO()
    table.write_observables([_row("gamma", 0.1, 0.05)], stream)
    lines = stream.getvalue().splitlines()
    assert lines[0] == (
        "axis_name,axis_value,t,J,K,gamma_diag,gamma_offdiag,gamma_tilde,"
        "me_prediction"
    )
    assert lines[1] == "gamma,0.1,0.05,1,0.25,1.5,2.5,0.5,0.8"


def test_fit_header():
    stream = io.StringIO()
    fit = FitResult(1.38, 0.01, 0.002, (0.4, 1.1), 15)
    table.write_fits([("time", math.nan, fit)], stream)
    assert stream.getvalue().splitlines() == [
        "axis_name,axis_value,slope,intercept,residual_rms,t_lo,t_hi,n_points",
        "time,nan,1.38,0.01,0.002,0.4,1.1,15",
    ]


def test_grid_rows():
    grid = DensityGrid(
        x=np.array([-1.0, 1.0]), values=np.array([[1.0, 0.5], [0.5, 1.0]]),
        normalization="peak"
    )
    stream = io.StringIO()
    table.write_grid(grid, stream)
    lines = stream.getvalue().splitlines()
    assert lines[0] == "x_f,x_tilde_f,rho_abs"
    assert lines[2] == "-1,1,0.5"
    assert len(lines) == 5


def _written(rows):
    stream = io.StringIO()
    table.write_observables(rows, stream)
    stream.seek(0)
    return stream


def test_read_selects_series():
    rows = [_row("gamma", g, t, gamma_tilde=g * t)
            for g in (0.1, 0.2) for t in (0.05, 0.1)]
    axis_name, axis_value, points = table.read_series(_written(rows), 0.2)
    assert (axis_name, axis_value) == ("gamma", 0.2)
    assert points == [(0.05, pytest.approx(0.01)), (0.1, pytest.approx(0.02))]
    with pytest.raises(InvalidConfigValueError):
        table.read_series(_written(rows))
    with pytest.raises(InvalidConfigValueError):
        table.read_series(_written(rows), 0.3)


def test_read_time_series():
    rows = [_row("time", t, t) for t in (0.05, 0.1, 0.15)]
    axis_name, axis_value, points = table.read_series(_written(rows))
    assert axis_name == "time"
    assert math.isnan(axis_value)
    assert len(points) == 3


def test_read_rejects_other_tables():
    with pytest.raises(ConfigError):
        table.read_series(io.StringIO("x_f,x_tilde_f,rho_abs\n0,0,1\n"))
