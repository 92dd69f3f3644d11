"""Decoherence widths of the Caldeira-Leggett model by saddle-point evaluation.

The reduced density matrix of a harmonic oscillator coupled to a
thermal bath is written as a discretized path integral on a closed time
contour. Its integrand is Gaussian, so the integral is dominated by a
single complex saddle point obtained from one sparse linear solve.
"""

from . import errors
from .config import SweepConfig, load_config, parse_config
from .core import *
from .tools import FitResult, fit_linear, run_axis_sweep, run_time_series


__version__ = "0.1.0"
