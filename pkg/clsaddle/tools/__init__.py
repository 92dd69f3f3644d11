from .fit import FitResult, fit_linear
from .sweep import (
    ComparisonRow, SweepPoint, SweepResult, SweepRow, evaluate_point,
    run_axis_sweep, run_comparison, run_time_series
)
from .sweep_point import reports_sweep_point
from . import table
