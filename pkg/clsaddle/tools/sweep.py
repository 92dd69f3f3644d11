"""Parameter sweeps over a bounded worker pool.

Every sweep point is evaluated independently: it assembles and
factorizes its own matrix, so results do not depend on the number of
workers or on completion order.
"""

from concurrent.futures import ProcessPoolExecutor
import dataclasses
import logging
import math
from typing import List, NamedTuple, Optional, Tuple

from clsaddle.core.observables import (
    DecoherenceObservables, master_equation_reference, observe
)
from clsaddle.core.oracle import oracle_widths
from clsaddle.core.params import LatticeParams, ModelParams
from .fit import FitResult, fit_linear
from .sweep_point import reports_sweep_point


logger = logging.getLogger(__name__)


@dataclasses.dataclass(frozen=True)
class SweepPoint:

    """One ``(series, t)`` pair of a sweep."""

    axis_name: str
    axis_value: float
    model: ModelParams
    eps: float
    eps_tilde: Optional[float]
    t: float
    level: int = 1

    def lattice(self):
        """
        Lattice reaching :attr:`t`.

        :type: LatticeParams
        """
        lattice = LatticeParams.from_times(
            self.eps, self.t, self.model.beta, self.eps_tilde
        )
        return lattice.refined(self.level)

    def describe(self):
        m = self.model
        return (
            "{}={} (omega_r={}, omega_cut={}, gamma={}, beta={}, n_env={}, "
            "eps={}, level={})"
        ).format(
            self.axis_name, self.axis_value, m.omega_r, m.omega_cut, m.gamma,
            m.beta, m.n_env, self.eps, self.level
        )


class SweepRow(NamedTuple):

    """Observables of one sweep point with its axis tag."""

    axis_name: str
    axis_value: float
    observables: DecoherenceObservables
    me_prediction: float

    @property
    def t(self):
        return self.observables.t


class ComparisonRow(NamedTuple):

    t: float
    gamma_diag: float
    gamma_offdiag: float
    oracle_gamma_diag: float
    oracle_gamma_offdiag: float


class SweepResult(NamedTuple):

    """Rows sorted by ``(axis_value, t)`` and one fit per series."""

    rows: List[SweepRow]
    fits: List[Tuple[str, float, FitResult]]


@reports_sweep_point
def evaluate_point(point):
    """Return the :class:`SweepRow` of a sweep point.

    Raises
    ------
    SweepPointError
        When the numerics fail at this point.
    """
    observables = observe(point.model, point.lattice())
    observables.check()
    return SweepRow(
        axis_name=point.axis_name,
        axis_value=point.axis_value,
        observables=observables,
        me_prediction=master_equation_reference(
            point.model.gamma, point.model.beta, observables.t
        ),
    )


@reports_sweep_point
def compare_point(point):
    """Return lattice and continuum widths of a sweep point."""
    observables = observe(point.model, point.lattice())
    observables.check()
    oracle_diag, oracle_offdiag = oracle_widths(point.model, observables.t)
    return ComparisonRow(
        t=observables.t,
        gamma_diag=observables.gamma_diag,
        gamma_offdiag=observables.gamma_offdiag,
        oracle_gamma_diag=oracle_diag,
        oracle_gamma_offdiag=oracle_offdiag,
    )


def _points(series, t_grid, tag_with_time=False):
    return [
        SweepPoint(
            axis_name=series.axis_name,
            axis_value=t if tag_with_time else series.axis_value,
            model=series.model, eps=series.eps, eps_tilde=series.eps_tilde,
            t=t, level=series.level,
        )
        for t in t_grid
    ]


def _map(function, points, jobs):
    """Evaluate ``function`` on every point, in input order."""
    jobs = max(1, min(int(jobs), len(points)))
    if jobs == 1:
        return [function(point) for point in points]
    with ProcessPoolExecutor(max_workers=jobs) as executor:
        return list(executor.map(function, points))


def run_time_series(config, jobs=1):
    """Evaluate the base model at every time of the grid.

    Rows are tagged with the ``time`` axis and ``axis_value = t``.

    Parameters
    ----------
    config : SweepConfig
    jobs : int, optional
        Number of worker processes (default=1).

    Returns
    -------
    list of SweepRow
        Sorted by ``t``.
    """
    points = _points(config.base_series(), config.t_grid, tag_with_time=True)
    logger.info("Time series: %d point(s) on %d worker(s)", len(points), jobs)
    rows = _map(evaluate_point, points, jobs)
    return sorted(rows, key=lambda row: row.t)


def _fit_series(series, rows, window):
    if series.model.gamma == 0:
        logger.warning(
            "Skipping fit of %s=%s: rescaled width is undefined at gamma=0",
            series.axis_name, series.axis_value
        )
        return None
    fit = fit_linear(
        [(row.t, row.observables.gamma_tilde) for row in rows], window
    )
    logger.info(
        "Fit %s=%s on [%g, %g]: slope=%.6g intercept=%.6g (%d points)",
        series.axis_name, series.axis_value, window[0], window[1], fit.slope,
        fit.intercept, fit.n_points
    )
    return fit


def run_axis_sweep(config, jobs=1):
    """Evaluate one time series per axis value.

    Parameters
    ----------
    config : SweepConfig
    jobs : int, optional
        Number of worker processes (default=1).

    Returns
    -------
    SweepResult
        Rows sorted by ``(axis_value, t)``; a linear fit of the rescaled
        width per series when ``config.fit_window`` is set. Series with
        ``gamma == 0`` get no fit.

    Raises
    ------
    SweepPointError
        When any point fails. The whole sweep is aborted.
    """
    if config.sweep_axis == "time":
        rows = run_time_series(config, jobs)
        fits = []
        if config.fit_window is not None:
            fit = _fit_series(config.base_series(), rows, config.fit_window)
            if fit is not None:
                fits.append(("time", math.nan, fit))
        return SweepResult(rows=rows, fits=fits)

    all_series = config.series()
    points = [
        point for series in all_series
        for point in _points(series, config.t_grid)
    ]
    logger.info(
        "Sweep over %s: %d series, %d point(s) on %d worker(s)",
        config.sweep_axis, len(all_series), len(points), jobs
    )
    rows = sorted(
        _map(evaluate_point, points, jobs),
        key=lambda row: (row.axis_value, row.t)
    )
    fits = []
    if config.fit_window is not None:
        for series in sorted(all_series, key=lambda s: s.axis_value):
            series_rows = [
                row for row in rows if row.axis_value == series.axis_value
            ]
            fit = _fit_series(series, series_rows, config.fit_window)
            if fit is not None:
                fits.append((series.axis_name, series.axis_value, fit))
    return SweepResult(rows=rows, fits=fits)


def run_comparison(config, jobs=1):
    """Compare lattice widths with the continuum oracle on the t grid.

    Returns
    -------
    list of ComparisonRow
        Sorted by ``t``.
    """
    points = _points(config.base_series(), config.t_grid, tag_with_time=True)
    logger.info("Oracle comparison: %d point(s)", len(points))
    return sorted(_map(compare_point, points, jobs), key=lambda row: row.t)
