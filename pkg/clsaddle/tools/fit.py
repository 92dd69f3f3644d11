import math
from typing import NamedTuple, Tuple

import numpy as np

from clsaddle.errors import FitWindowError


#: Absolute slack on the window edges.
WINDOW_TOLERANCE = 1e-9


class FitResult(NamedTuple):

    """Least-squares line ``y = slope * t + intercept``.

    Attributes
    ----------
    slope : float
        Slope ``A``.
    intercept : float
        Intercept ``B``.
    residual_rms : float
        Root mean square of the residuals.
    window : tuple of float
        ``(t_lo, t_hi)``.
    n_points : int
        Number of points used, at least 2.
    """

    slope: float
    intercept: float
    residual_rms: float
    window: Tuple[float, float]
    n_points: int


def fit_linear(points, window):
    """Fit a line to the points with ``t_lo <= t <= t_hi``.

    Ordinary unweighted least squares. Points with a non-finite ``y``
    are ignored.

    Parameters
    ----------
    points : iterable of (float, float)
        ``(t, y)`` pairs.
    window : (float, float)
        ``(t_lo, t_hi)``.

    Returns
    -------
    FitResult

    Raises
    ------
    FitWindowError
        When fewer than two points lie in the window.
    """
    lo, hi = window
    selected = [
        (t, y) for t, y in points
        if lo - WINDOW_TOLERANCE <= t <= hi + WINDOW_TOLERANCE
        and math.isfinite(y)
    ]
    if len(selected) < 2:
        raise FitWindowError(window, len(selected))
    t, y = np.array(selected).T
    slope, intercept = np.polyfit(t, y, 1)
    residuals = y - (slope * t + intercept)
    return FitResult(
        slope=float(slope), intercept=float(intercept),
        residual_rms=float(np.sqrt(np.mean(residuals ** 2))),
        window=(float(lo), float(hi)), n_points=len(selected),
    )
