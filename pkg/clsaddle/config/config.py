from configparser import ConfigParser, Error as ConfigParserError
import dataclasses
import logging
import math
from typing import Optional, Tuple

from typing_extensions import Literal

from clsaddle.core.observables import NORMALIZATIONS
from clsaddle.core.params import LatticeParams, ModelParams
from clsaddle.errors import (
    ConfigError, FitWindowError, InvalidConfigValueError,
    MissingConfigKeyError, UnknownConfigKeyError
)


__all__ = [
    'KNOWN_KEYS',
    'REQUIRED_KEYS',
    'SWEEP_AXES',
    'Config',
    'Series',
    'SweepConfig',
    'check_fit_window',
    'load_config',
    'parse_config',
]


logger = logging.getLogger(__name__)

SECTION = "sweep"

SweepAxis = Literal["time", "gamma", "beta", "n_env", "omega_cut", "eps-refine"]
SWEEP_AXES = ("time", "gamma", "beta", "n_env", "omega_cut", "eps-refine")

REQUIRED_KEYS = (
    "omega_r", "omega_cut", "gamma", "beta", "n_env", "eps", "sweep_axis"
)
KNOWN_KEYS = REQUIRED_KEYS + (
    "eps_tilde", "sigma_sq", "t_max", "sweep_values", "fit_lo", "fit_hi",
    "normalization", "out"
)

#: Relative tolerance for t grid and fit window comparisons.
GRID_TOLERANCE = 1e-9


class Config(ConfigParser):

    """Parser for flat ``key = value`` sweep files.

    Keys live in an implicit ``[sweep]`` section and are
    case-insensitive.
    """

    def __init__(self):
        super().__init__(
            strict=False, delimiters=("=", ":"), interpolation=None,
            comment_prefixes=("#", ";"), inline_comment_prefixes=("#", ";")
        )

    def read_flat(self, text, source="<config>"):
        try:
            self.read_string("[{}]\n{}".format(SECTION, text), source=source)
        except ConfigParserError as exc:
            raise ConfigError(" ".join(str(exc).split())) from exc
        for section in self.sections():
            if section != SECTION:
                raise UnknownConfigKeyError("[{}]".format(section), KNOWN_KEYS)
        return self[SECTION]


class Series:

    """One series of a sweep: a model and a lattice rule per time."""

    def __init__(self, axis_name, axis_value, model, eps, eps_tilde, level=1):
        self.axis_name = axis_name
        self.axis_value = axis_value
        self.model = model
        self.eps = eps
        self.eps_tilde = eps_tilde
        self.level = level

    def __repr__(self):
        return "Series({}={})".format(self.axis_name, self.axis_value)

    def lattice(self, t):
        """Return the lattice reaching ``t`` for this series."""
        lattice = LatticeParams.from_times(
            self.eps, t, self.model.beta, self.eps_tilde
        )
        return lattice.refined(self.level)


@dataclasses.dataclass(frozen=True)
class SweepConfig:

    """Validated sweep configuration.

    Attributes
    ----------
    model : ModelParams
        Base model; axis sweeps replace one of its fields.
    eps : float
        Real-time step.
    eps_tilde : float or None
        Requested Euclidean step, ``None`` for the default rule.
    t_grid : tuple of float
        Final times, positive multiples of ``eps`` in increasing order.
    sweep_axis : str
        One of :data:`SWEEP_AXES`.
    sweep_values : tuple of float
        Axis values. For the ``time`` axis this is the t grid.
    fit_window : tuple of float or None
        ``(t_lo, t_hi)`` of the linear fit.
    normalization : str
        Density grid normalization.
    out : str or None
        Output CSV path.
    """

    model: ModelParams
    eps: float
    eps_tilde: Optional[float]
    t_grid: Tuple[float, ...]
    sweep_axis: SweepAxis
    sweep_values: Tuple[float, ...]
    fit_window: Optional[Tuple[float, float]] = None
    normalization: str = "trace"
    out: Optional[str] = None

    def base_series(self):
        """Return the series of the unmodified model."""
        return Series("time", math.nan, self.model, self.eps, self.eps_tilde)

    def series(self):
        """Return one :class:`Series` per axis value.

        The ``time`` axis has a single series.

        Raises
        ------
        ParameterDomainError
            When an axis value gives an invalid model.
        """
        axis = self.sweep_axis
        if axis == "time":
            return [self.base_series()]
        result = []
        for value in self.sweep_values:
            model, level = self.model, 1
            if axis == "eps-refine":
                level = int(value)
            elif axis == "n_env":
                model = model.replace(n_env=int(value))
            else:
                model = model.replace(**{axis: value})
            result.append(
                Series(axis, value, model, self.eps, self.eps_tilde, level)
            )
        return result

    def lattice(self, t):
        """Return the base lattice reaching ``t``."""
        return self.base_series().lattice(t)


def _float(section, key):
    raw = section[key]
    try:
        return float(raw)
    except ValueError:
        raise InvalidConfigValueError(key, raw, "not a number") from None


def _float_list(section, key):
    raw = section[key]
    try:
        values = tuple(float(v) for v in raw.split(",") if v.strip())
    except ValueError:
        raise InvalidConfigValueError(
            key, raw, "not a comma-separated list of numbers"
        ) from None
    if not values:
        raise InvalidConfigValueError(key, raw, "empty list")
    return values


def _integral(key, value):
    if not float(value).is_integer():
        raise InvalidConfigValueError(key, value, "not an integer")
    return int(value)


def _on_grid(t, eps):
    steps = t / eps
    return steps >= 1 - GRID_TOLERANCE and abs(
        steps - round(steps)
    ) <= GRID_TOLERANCE * max(1.0, steps)


def _t_grid(section, axis, eps):
    if axis == "time" and "sweep_values" in section:
        grid = _float_list(section, "sweep_values")
        for t in grid:
            if not _on_grid(t, eps):
                raise InvalidConfigValueError(
                    "sweep_values", t, "not a positive multiple of eps"
                )
        grid = tuple(round(t / eps) * eps for t in grid)
    else:
        if "t_max" not in section:
            raise MissingConfigKeyError("t_max")
        t_max = _float(section, "t_max")
        n_max = int(math.floor(t_max / eps + GRID_TOLERANCE))
        if n_max < 1:
            raise InvalidConfigValueError("t_max", t_max, "smaller than eps")
        grid = tuple(n * eps for n in range(1, n_max + 1))
    return tuple(sorted(set(grid)))


def _fit_window(section, grid):
    present = [key for key in ("fit_lo", "fit_hi") if key in section]
    if not present:
        return None
    if len(present) == 1:
        missing = "fit_hi" if present[0] == "fit_lo" else "fit_lo"
        raise MissingConfigKeyError(missing)
    window = (_float(section, "fit_lo"), _float(section, "fit_hi"))
    check_fit_window(window, grid)
    return window


def check_fit_window(window, grid):
    """Check that at least two grid times lie in ``window``.

    Raises
    ------
    FitWindowError
    """
    lo, hi = window
    slack = GRID_TOLERANCE * max(1.0, abs(lo), abs(hi))
    count = sum(1 for t in grid if lo - slack <= t <= hi + slack)
    if count < 2:
        raise FitWindowError(window, count)


def parse_config(text, overrides=(), source="<config>"):
    """Parse a sweep configuration.

    Parameters
    ----------
    text : str
        Flat ``key = value`` lines.
    overrides : iterable of str, optional
        ``key=value`` strings applied on top of ``text``.
    source : str, optional
        Name used in parse error messages.

    Returns
    -------
    SweepConfig

    Raises
    ------
    ConfigError
        When a key is unknown or missing, or a value can not be parsed.
    ParameterDomainError
        When a physical parameter is out of its domain.
    FitWindowError
        When the fit window brackets fewer than two grid times.
    """
    section = Config().read_flat(text, source)
    for override in overrides:
        key, sep, value = override.partition("=")
        if not sep:
            raise InvalidConfigValueError(
                "--set", override, "expected key=value"
            )
        section[key.strip().lower()] = value.strip()
    for key in section:
        if key not in KNOWN_KEYS:
            raise UnknownConfigKeyError(key, KNOWN_KEYS)
    for key in REQUIRED_KEYS:
        if key not in section:
            raise MissingConfigKeyError(key)

    axis = section["sweep_axis"].strip()
    if axis not in SWEEP_AXES:
        raise InvalidConfigValueError(
            "sweep_axis", axis, "expected one of " + ", ".join(SWEEP_AXES)
        )
    normalization = section.get("normalization", "trace").strip()
    if normalization not in NORMALIZATIONS:
        raise InvalidConfigValueError(
            "normalization", normalization,
            "expected one of " + ", ".join(NORMALIZATIONS)
        )

    sigma_sq = _float(section, "sigma_sq") if "sigma_sq" in section else None
    model = ModelParams(
        omega_r=_float(section, "omega_r"),
        omega_cut=_float(section, "omega_cut"),
        gamma=_float(section, "gamma"),
        beta=_float(section, "beta"),
        n_env=_integral("n_env", _float(section, "n_env")),
        sigma_sq_override=sigma_sq,
    )
    eps = _float(section, "eps")
    if not eps > 0:
        raise InvalidConfigValueError("eps", eps, "must be positive")
    eps_tilde = _float(section, "eps_tilde") if "eps_tilde" in section else None

    grid = _t_grid(section, axis, eps)
    if axis == "time":
        values = grid
    elif "sweep_values" not in section:
        raise MissingConfigKeyError("sweep_values")
    else:
        values = _float_list(section, "sweep_values")
        if axis in ("n_env", "eps-refine"):
            values = tuple(
                float(_integral("sweep_values", v)) for v in values
            )

    config = SweepConfig(
        model=model, eps=eps, eps_tilde=eps_tilde, t_grid=grid,
        sweep_axis=axis, sweep_values=values,
        fit_window=_fit_window(section, grid), normalization=normalization,
        out=section.get("out"),
    )
    # every series must be a valid model and lattice
    for series in config.series():
        series.lattice(grid[0])
    logger.debug(
        "Parsed %s: axis %s with %d value(s), %d time(s)", source, axis,
        len(values), len(grid)
    )
    return config


def load_config(path, overrides=()):
    """Read and parse a sweep configuration file, see :func:`parse_config`."""
    try:
        with open(path, encoding="utf8") as f:
            text = f.read()
    except OSError as exc:
        raise ConfigError("Can't read {}: {}".format(path, exc.strerror)) \
            from exc
    return parse_config(text, overrides, source=str(path))
