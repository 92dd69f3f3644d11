import functools

from clsaddle.errors import NumericalError, SweepPointError


def reports_sweep_point(f):
    """Name the failing sweep point in numerical errors.

    The decorated function takes a sweep point as first argument. Any
    :class:`NumericalError` it raises is re-raised as a
    :class:`SweepPointError` carrying the point's parameters and time.
    """
    @functools.wraps(f)
    def wrapped(point, *args, **kwargs):
        try:
            return f(point, *args, **kwargs)
        except SweepPointError:
            raise
        except NumericalError as exc:
            raise SweepPointError(point.describe(), point.t, exc) from exc
    return wrapped
