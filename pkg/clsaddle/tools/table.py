"""Deterministic CSV output.

Floats are written with 12 significant digits and rows in a fixed
order, so an identical configuration gives byte-identical files.
"""

import csv
import math

from clsaddle.errors import ConfigError, InvalidConfigValueError


OBSERVABLES_HEADER = (
    "axis_name", "axis_value", "t", "J", "K", "gamma_diag", "gamma_offdiag",
    "gamma_tilde", "me_prediction",
)
FIT_HEADER = (
    "axis_name", "axis_value", "slope", "intercept", "residual_rms", "t_lo",
    "t_hi", "n_points",
)
GRID_HEADER = ("x_f", "x_tilde_f", "rho_abs")
COMPARISON_HEADER = (
    "t", "gamma_diag", "gamma_offdiag", "oracle_gamma_diag",
    "oracle_gamma_offdiag",
)


def format_float(value):
    """Return ``value`` with 12 significant digits, ``nan`` if undefined."""
    value = float(value)
    if math.isnan(value):
        return "nan"
    return "{:.12g}".format(value)


def _writer(stream):
    return csv.writer(stream, lineterminator="\n")


def write_observables(rows, stream):
    """Write sweep rows, see :data:`OBSERVABLES_HEADER`."""
    w = _writer(stream)
    w.writerow(OBSERVABLES_HEADER)
    for row in rows:
        obs = row.observables
        w.writerow([row.axis_name] + [
            format_float(v) for v in (
                row.axis_value, obs.t, obs.j, obs.k, obs.gamma_diag,
                obs.gamma_offdiag, obs.gamma_tilde, row.me_prediction,
            )
        ])


def write_fits(fits, stream):
    """Write ``(axis_name, axis_value, FitResult)`` triples."""
    w = _writer(stream)
    w.writerow(FIT_HEADER)
    for axis_name, axis_value, fit in fits:
        w.writerow([axis_name] + [
            format_float(v) for v in (
                axis_value, fit.slope, fit.intercept, fit.residual_rms,
                fit.window[0], fit.window[1],
            )
        ] + [fit.n_points])


def write_grid(grid, stream):
    """Write a :class:`DensityGrid` in long format, ``x_f`` major."""
    w = _writer(stream)
    w.writerow(GRID_HEADER)
    for i, x_f in enumerate(grid.x):
        for j, x_tilde_f in enumerate(grid.x):
            w.writerow([
                format_float(x_f), format_float(x_tilde_f),
                format_float(grid.values[i, j]),
            ])


def write_comparison(rows, stream):
    """Write lattice and oracle widths, see :data:`COMPARISON_HEADER`."""
    w = _writer(stream)
    w.writerow(COMPARISON_HEADER)
    for row in rows:
        w.writerow([format_float(v) for v in row])


def read_series(stream, series=None):
    """Read ``(t, gamma_tilde)`` points back from an observables CSV.

    Parameters
    ----------
    stream : file-like
        CSV written by :func:`write_observables`.
    series : float, optional
        Axis value of the series to read. Required when the file holds
        more than one series; ignored for time series.

    Returns
    -------
    axis_name : str
    axis_value : float
        ``nan`` for time series.
    points : list of (float, float)

    Raises
    ------
    ConfigError
        When the file is not an observables CSV or the series is
        ambiguous or absent.
    """
    reader = csv.DictReader(stream)
    if tuple(reader.fieldnames or ()) != OBSERVABLES_HEADER:
        raise ConfigError(
            "Not an observables table: header is {}".format(reader.fieldnames)
        )
    rows = list(reader)
    if not rows:
        raise ConfigError("Observables table has no rows")
    axis_name = rows[0]["axis_name"]
    if axis_name == "time":
        axis_value = math.nan
    else:
        values = sorted({float(row["axis_value"]) for row in rows})
        if series is None:
            if len(values) > 1:
                raise InvalidConfigValueError(
                    "--series", None,
                    "table holds series {}".format(
                        ", ".join(format_float(v) for v in values)
                    )
                )
            series = values[0]
        matches = [v for v in values if math.isclose(v, series, rel_tol=1e-9)]
        if not matches:
            raise InvalidConfigValueError(
                "--series", series, "no such series in the table"
            )
        axis_value = matches[0]
        rows = [row for row in rows if float(row["axis_value"]) == axis_value]
    points = [(float(row["t"]), float(row["gamma_tilde"])) for row in rows]
    return axis_name, axis_value, points
